#pragma once

#include "stablefit/design.hpp"
#include "stablefit/ecf.hpp"
#include "stablefit/errors.hpp"
#include "stablefit/estimators.hpp"
#include "stablefit/run_config.hpp"
#include "stablefit/simulation.hpp"
#include "stablefit/stable_model.hpp"
#include "stablefit/stable_rng.hpp"
