// wblsense.hpp
// Umbrella header pulling in the whole library: the exact Weighted Bures
// Length engine, the bit-parallel Rule 54 graph dynamics, the state-vector
// oracle certifying the classical reduction, and the experiment runners
// with their persistence formats.

#pragma once

#include "wblsense/bitconfig.hpp"
#include "wblsense/errors.hpp"
#include "wblsense/experiments.hpp"
#include "wblsense/graph.hpp"
#include "wblsense/io.hpp"
#include "wblsense/linalg.hpp"
#include "wblsense/oracle.hpp"
#include "wblsense/partition.hpp"
#include "wblsense/random_states.hpp"
#include "wblsense/rng.hpp"
#include "wblsense/rule54.hpp"
#include "wblsense/state.hpp"
#include "wblsense/svg.hpp"
#include "wblsense/version.hpp"
#include "wblsense/wbl.hpp"
