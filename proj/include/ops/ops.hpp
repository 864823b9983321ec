#pragma once

#include "ops/algorithms.hpp"
#include "ops/cli.hpp"
#include "ops/coverage.hpp"
#include "ops/distributions.hpp"
#include "ops/element_set.hpp"
#include "ops/estimators.hpp"
#include "ops/experiment.hpp"
#include "ops/hardness.hpp"
#include "ops/oracles.hpp"
#include "ops/rational.hpp"
#include "ops/rng.hpp"
#include "ops/sampling.hpp"
#include "ops/set_function.hpp"
#include "ops/verify.hpp"
#include "ops/zeta.hpp"
