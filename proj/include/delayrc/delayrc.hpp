#pragma once

#include "delayrc/capacity.hpp"
#include "delayrc/common.hpp"
#include "delayrc/config.hpp"
#include "delayrc/drive.hpp"
#include "delayrc/experiments.hpp"
#include "delayrc/history.hpp"
#include "delayrc/integrator.hpp"
#include "delayrc/models.hpp"
#include "delayrc/narma.hpp"
#include "delayrc/readout.hpp"
#include "delayrc/reservoir.hpp"
#include "delayrc/rng.hpp"
