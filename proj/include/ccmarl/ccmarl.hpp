#pragma once

// Umbrella header.

#include "ccmarl/ccm.hpp"
#include "ccmarl/checkpoint.hpp"
#include "ccmarl/config.hpp"
#include "ccmarl/coordination.hpp"
#include "ccmarl/csv.hpp"
#include "ccmarl/embedding.hpp"
#include "ccmarl/env.hpp"
#include "ccmarl/metrics.hpp"
#include "ccmarl/neighbors.hpp"
#include "ccmarl/policy.hpp"
#include "ccmarl/reinforce.hpp"
#include "ccmarl/report.hpp"
#include "ccmarl/rng.hpp"
#include "ccmarl/shaping.hpp"
#include "ccmarl/simplex.hpp"
#include "ccmarl/sweep.hpp"
#include "ccmarl/synth.hpp"
#include "ccmarl/time_series.hpp"
#include "ccmarl/training.hpp"
#include "ccmarl/trajectory.hpp"
#include "ccmarl/validation.hpp"
#include "ccmarl/vec2.hpp"
