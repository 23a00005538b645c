#ifndef ECSDBN_ECSDBN_HPP
#define ECSDBN_ECSDBN_HPP

// Umbrella header for the whole library.

#include "ecsdbn/adaptive_de.hpp"
#include "ecsdbn/benchmark.hpp"
#include "ecsdbn/cost_model.hpp"
#include "ecsdbn/dbn.hpp"
#include "ecsdbn/ecs_trainer.hpp"
#include "ecsdbn/errors.hpp"
#include "ecsdbn/keel_data.hpp"
#include "ecsdbn/matrix.hpp"
#include "ecsdbn/metrics.hpp"
#include "ecsdbn/rbm.hpp"
#include "ecsdbn/rng.hpp"
#include "ecsdbn/stats_tests.hpp"

#endif
