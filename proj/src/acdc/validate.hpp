#pragma once

#include "acdc/types.hpp"

namespace acdc {

/// Structural checks over a parsed case and overlay. The report's error list
/// is empty exactly when the pair describes a solvable structure: connected
/// islands with one slack each, resolvable cross references, one secondary
/// converter per DC island, no voltage-control conflicts.
ValidationReport validate(const NetworkCase& net, const MtdcSystem& mtdc);

}  // namespace acdc
