#pragma once

#include "bit_matrix.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "exclusion_set.hpp"
#include "graph.hpp"
#include "hcp.hpp"
#include "iso.hpp"
#include "oracle.hpp"
#include "qmatrix.hpp"
