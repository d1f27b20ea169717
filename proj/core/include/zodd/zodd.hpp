#pragma once

#include "zodd/budget.hpp"
#include "zodd/descent.hpp"
#include "zodd/directions.hpp"
#include "zodd/environment.hpp"
#include "zodd/errors.hpp"
#include "zodd/estimators.hpp"
#include "zodd/oracle.hpp"
#include "zodd/planner.hpp"
#include "zodd/pricing_env.hpp"
#include "zodd/quadratic_env.hpp"
#include "zodd/rng.hpp"
#include "zodd/smoothing_math.hpp"
#include "zodd/strategic_env.hpp"
#include "zodd/synthetic.hpp"
#include "zodd/tabular_io.hpp"
#include "zodd/types.hpp"
