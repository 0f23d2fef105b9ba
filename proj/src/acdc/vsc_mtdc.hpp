#pragma once

#include <vector>

#include "acdc/ac_network.hpp"
#include "acdc/sparse.hpp"
#include "acdc/system.hpp"

namespace acdc {

/// Writes the converter residual blocks (terminal power definitions, control
/// slots, throughput, loss balance, current magnitude), the converter draw
/// on the AC bus rows, and the per-node DC current balances.
void vsc_residual(const System& sys, const SolverState& st, std::vector<double>& g);

/// Emits the converter Jacobian entries, including the couplings into the
/// AC bus rows. The full union pattern is emitted on every call; released
/// control slots only change values.
void vsc_jacobian(const System& sys, const SolverState& st, FixedPatternMatrix& jac);

/// Converter limit pass. A first violated voltage or current bound releases
/// control slot B (reactive power or AC voltage) and pins the violated
/// quantity; a later violation of the other bound releases slot A (active
/// power or DC voltage). Transitions are latched for the rest of the solve.
std::vector<LimitEvent> vsc_limit_update(const System& sys, SolverState& st, int iteration);

}  // namespace acdc
