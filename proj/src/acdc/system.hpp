#pragma once

#include <vector>

#include "acdc/admittance.hpp"
#include "acdc/layout.hpp"
#include "acdc/types.hpp"
#include "acdc/vsc_model.hpp"

namespace acdc {

/// Jacobian regularization on generator-variable columns in control rows.
constexpr double kEpsilonReg = 1e-6;

enum class GenMode { VoltageControl, QAtMax, QAtMin };

/// Immutable per-solve bundle: the case, the overlay, the index layout and
/// the network matrices, plus adjacency lists the evaluators need.
struct System {
    const NetworkCase* net = nullptr;
    const MtdcSystem* mtdc = nullptr;
    VariableLayout layout;
    AdmittanceMatrix ybus;
    DcMatrix ydc;

    std::vector<std::vector<int>> gens_at_bus;   // gen slots per internal bus
    std::vector<std::vector<int>> vscs_at_bus;   // vsc slots per internal bus
    std::vector<std::vector<int>> vscs_at_node;  // vsc slots per internal DC node
    std::vector<double> p_const;                 // fixed scheduled P per bus (loads, fixed gens)
    std::vector<double> q_const;                 // fixed scheduled Q per bus
};

System build_system(const NetworkCase& net, const MtdcSystem& mtdc);

/// Mutable per-solve state: the value vector plus the per-device control
/// modes and the residual-norm history.
struct SolverState {
    std::vector<double> x;
    std::vector<GenMode> gen_mode;
    std::vector<VscLimitState> vsc_state;
    int iterations = 0;
    std::vector<double> norm_history;
};

SolverState initialize_state(const System& sys);

}  // namespace acdc
