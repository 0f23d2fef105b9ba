#pragma once

#include <string>
#include <vector>

#include "acdc/sparse.hpp"
#include "acdc/system.hpp"

namespace acdc {

/// Nodal complex power recovered from the admittance matrix at one state,
/// trigonometric expansion.
struct BusPower {
    double p = 0.0;
    double q = 0.0;
};

BusPower bus_injection(const System& sys, const std::vector<double>& x, int bus);

/// Writes the AC residual blocks: nodal power imbalances for every bus
/// (scheduled minus calculated), voltage rows per generator and angle rows
/// per slack machine. Converter terms are handled by the vsc emitters.
void ac_residual(const System& sys, const SolverState& st, std::vector<double>& g);

/// Emits the AC Jacobian entries. Every structural position is emitted on
/// every call; control-mode swaps change values only.
void ac_jacobian(const System& sys, const SolverState& st, FixedPatternMatrix& jac);

struct LimitEvent {
    int iteration = 0;
    std::string text;
};

/// Reactive-limit pass over the voltage-controlled generators: pins at most
/// `budget` violators (largest violation first) and releases any pinned
/// machine whose bus voltage has recovered past its setpoint in the
/// relieving direction. Returns the transitions applied.
std::vector<LimitEvent> pv_limit_update(const System& sys, SolverState& st, int iteration,
                                        int budget);

}  // namespace acdc
