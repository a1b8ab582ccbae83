#pragma once

#include "decomposition.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "lattice.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "polytope.hpp"
#include "prob.hpp"
#include "rng.hpp"
#include "simplex.hpp"
#include "solver.hpp"
