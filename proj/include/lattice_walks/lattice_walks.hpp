#pragma once

#include "lattice_walks/appendix.hpp"
#include "lattice_walks/chain.hpp"
#include "lattice_walks/classify.hpp"
#include "lattice_walks/graph.hpp"
#include "lattice_walks/io.hpp"
#include "lattice_walks/lyapunov.hpp"
#include "lattice_walks/measure.hpp"
#include "lattice_walks/params.hpp"
#include "lattice_walks/resistance.hpp"
#include "lattice_walks/rng.hpp"
#include "lattice_walks/simulate.hpp"
#include "lattice_walks/spectral.hpp"
#include "lattice_walks/state.hpp"
#include "lattice_walks/sweep.hpp"
#include "lattice_walks/version.hpp"
