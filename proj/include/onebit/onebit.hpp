#ifndef ONEBIT_ONEBIT_HPP
#define ONEBIT_ONEBIT_HPP

// Core recovery library. config.hpp and csv.hpp are the CLI-facing extras.
#include "onebit/harness.hpp"
#include "onebit/infotheory.hpp"
#include "onebit/noise_model.hpp"
#include "onebit/random.hpp"
#include "onebit/recovery.hpp"
#include "onebit/sensing.hpp"
#include "onebit/threshold.hpp"

#endif  // ONEBIT_ONEBIT_HPP
