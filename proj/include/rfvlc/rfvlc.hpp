// SPDX-License-Identifier: Apache-2.0
//
// Outage analysis and link simulation of a cognitive dual-hop network whose
// second hop is a mixed RF/VLC link.

#ifndef RFVLC_RFVLC_HPP
#define RFVLC_RFVLC_HPP

#include "rfvlc/analysis.hpp"
#include "rfvlc/channel.hpp"
#include "rfvlc/config.hpp"
#include "rfvlc/montecarlo.hpp"
#include "rfvlc/random.hpp"
#include "rfvlc/specfun.hpp"
#include "rfvlc/sweep.hpp"
#include "rfvlc/validation.hpp"

#endif  // RFVLC_RFVLC_HPP
