#pragma once

#include "stardisc/experiment.hpp"
#include "stardisc/exact.hpp"
#include "stardisc/generators.hpp"
#include "stardisc/geometry.hpp"
#include "stardisc/point_set.hpp"
#include "stardisc/rng.hpp"
#include "stardisc/sampling.hpp"
#include "stardisc/selftest.hpp"
#include "stardisc/snapping.hpp"
#include "stardisc/sobol.hpp"
#include "stardisc/sobol_table.hpp"
#include "stardisc/solvers.hpp"
#include "stardisc/theory.hpp"
