#pragma once

// Umbrella header for the biased min-consensus library.

#include <bmc/error.hpp>
#include <bmc/graph.hpp>
#include <bmc/graph_io.hpp>
#include <bmc/dynamics.hpp>
#include <bmc/dijkstra.hpp>
#include <bmc/path.hpp>
#include <bmc/grid.hpp>
#include <bmc/pgm.hpp>
#include <bmc/render.hpp>
#include <bmc/coverage.hpp>
#include <bmc/export.hpp>
#include <bmc/random_graph.hpp>
