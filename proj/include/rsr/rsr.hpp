#pragma once
// Umbrella header for the rectangular symmetry reduction library.

#include "rsr/bench.hpp"
#include "rsr/decomposition.hpp"
#include "rsr/dynamic.hpp"
#include "rsr/gen.hpp"
#include "rsr/grid.hpp"
#include "rsr/io.hpp"
#include "rsr/macro_edges.hpp"
#include "rsr/macro_graph.hpp"
#include "rsr/path.hpp"
#include "rsr/rect.hpp"
#include "rsr/search.hpp"
