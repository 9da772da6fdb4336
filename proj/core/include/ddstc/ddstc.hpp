#pragma once

#include "ddstc/algebra.hpp"
#include "ddstc/design.hpp"
#include "ddstc/exact.hpp"
#include "ddstc/json_io.hpp"
#include "ddstc/relays.hpp"
#include "ddstc/signal_sets.hpp"
#include "ddstc/simulator.hpp"
#include "ddstc/version.hpp"
