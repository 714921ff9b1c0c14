#pragma once

#include "deltatour/error.hpp"
#include "deltatour/rational.hpp"
#include "deltatour/graph.hpp"
#include "deltatour/point.hpp"
#include "deltatour/discretization.hpp"
#include "deltatour/tour.hpp"
#include "deltatour/coverage.hpp"
#include "deltatour/normalize.hpp"
#include "deltatour/solvers.hpp"
#include "deltatour/kernel.hpp"
#include "deltatour/oracles.hpp"
#include "deltatour/reductions.hpp"
#include "deltatour/io.hpp"
