#pragma once

#include "acdc/types.hpp"

namespace acdc::test {

/// Deterministic laptop-scale stand-in for a large transmission case: a
/// rectangular grid with a tail chain, uniform loads and a generator every
/// few dozen buses. Converges from flat start in a handful of iterations.
NetworkCase synthetic_grid_case(int n_buses);

/// N-terminal converter ring over spread-out load buses of the case:
/// N-1 primaries drawing a modest setpoint, one secondary anchoring the
/// DC voltage, comfortable limits.
MtdcSystem synthetic_overlay(const NetworkCase& net, int n_terminals);

}  // namespace acdc::test
