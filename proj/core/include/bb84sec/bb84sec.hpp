#pragma once

// Umbrella header for the bb84sec core library.

#include "bb84sec/agreement.hpp"
#include "bb84sec/analysis.hpp"
#include "bb84sec/assessment.hpp"
#include "bb84sec/attack_chain.hpp"
#include "bb84sec/channel.hpp"
#include "bb84sec/entropy.hpp"
#include "bb84sec/montecarlo.hpp"
#include "bb84sec/sweep_table.hpp"
