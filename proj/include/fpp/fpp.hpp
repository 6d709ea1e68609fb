#pragma once

// First passage percolation on random d-regular graphs: configuration-model
// sampling, Exp(1) edge weights, exact shortest-weight trees with hopcounts,
// the continuous-time ball exploration, threshold constants, and branching
// utilities, plus the experiment harness tying them together.

#include "fpp/branching.hpp"
#include "fpp/constants.hpp"
#include "fpp/exploration.hpp"
#include "fpp/graph.hpp"
#include "fpp/harness.hpp"
#include "fpp/rng.hpp"
#include "fpp/shortest_path.hpp"
#include "fpp/weights.hpp"
