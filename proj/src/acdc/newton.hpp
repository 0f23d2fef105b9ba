#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acdc/ac_network.hpp"
#include "acdc/sparse.hpp"
#include "acdc/system.hpp"
#include "acdc/vsc_mtdc.hpp"

namespace acdc {

struct SolverOptions {
    double tol = 1e-8;             // residual infinity-norm target
    int max_iter = 50;
    int enforce_start_iter = 4;    // first iteration at which limits are enforced
    int max_pv_per_iter = 1;       // generator conversions per iteration
    bool qlim_enforcement = true;  // generator reactive limits on/off
    double divergence_norm = 1e6;
    double step_damping = 1.0;     // multiplies the Newton increment, 1 = plain Newton
    bool dishonest_newton = false; // reserved, not implemented
};

enum class SolveStatus { Converged, MaxIterations, Diverged };

struct IterationEntry {
    int iteration = 0;
    double residual_norm = 0.0;
    std::uint64_t pattern_hash = 0;
    std::vector<std::string> events;

    bool operator==(const IterationEntry&) const = default;
};

struct BusResult {
    int id = 0;
    double v = 0.0;
    double theta = 0.0;
    double p_gen = 0.0;
    double q_gen = 0.0;
    double p_load = 0.0;  // case load plus converter draw, as reported
    double q_load = 0.0;

    bool operator==(const BusResult&) const = default;
};

struct GenResult {
    int bus = 0;
    double q = 0.0;
    double q_min = 0.0;
    double q_max = 0.0;
    GenMode mode = GenMode::VoltageControl;

    bool binding() const { return mode != GenMode::VoltageControl; }
    bool operator==(const GenResult&) const = default;
};

struct VscResult {
    int id = 0;
    int ac_bus = 0;
    int dc_node = 0;
    double p_sh = 0.0;
    double q_sh = 0.0;
    double p_dc = 0.0;       // net injection into the DC network
    double p_dc_prime = 0.0;
    double v_m = 0.0;
    double v_sh = 0.0;
    double theta_sh = 0.0;
    double i_sh = 0.0;
    double v_dc = 0.0;
    VscPin slot_b_pin = VscPin::None;
    VscPin slot_a_pin = VscPin::None;
    bool p_control_released = false;   // primary slot A
    bool vdc_control_released = false; // secondary slot A

    bool operator==(const VscResult&) const = default;
};

struct DcNodeResult {
    int id = 0;
    double v_dc = 0.0;

    bool operator==(const DcNodeResult&) const = default;
};

struct BindingLimit {
    std::string device;  // "generator" | "vsc"
    int id = 0;          // bus id for generators, converter id for vscs
    std::string limit;   // "q_max" | "q_min" | "vsh_max" | "vsh_min" | "ish_max"
    double value = 0.0;

    bool operator==(const BindingLimit&) const = default;
};

struct Solution {
    SolveStatus status = SolveStatus::Diverged;
    int iterations = 0;
    double residual_norm = 0.0;
    double tolerance = 0.0;
    std::string failure;  // diagnostics when the linear solver gave up

    std::vector<BusResult> buses;
    std::vector<GenResult> generators;
    std::vector<VscResult> vscs;
    std::vector<DcNodeResult> dc_nodes;
    std::vector<BindingLimit> binding_limits;
    std::vector<IterationEntry> log;

    int symbolic_analyses = 0;
    int numeric_factorizations = 0;
    bool pattern_stable = true;
    std::uint64_t pattern_hash = 0;
    double analyze_ms = 0.0;
    double wall_ms = 0.0;

    bool converged() const { return status == SolveStatus::Converged; }
    bool operator==(const Solution&) const = default;
};

/// Full residual vector at a state (AC blocks plus converter blocks).
std::vector<double> eval_residual(const System& sys, const SolverState& st);

/// Assembles the Jacobian into `jac` with the frozen union pattern.
void assemble_jacobian(const System& sys, const SolverState& st, FixedPatternMatrix& jac);

/// End-to-end solve. Throws std::invalid_argument when validation fails.
Solution newton_solve(const NetworkCase& net, const MtdcSystem& mtdc,
                      const SolverOptions& options = {});

/// Extracts the reportable solution from a state without running the loop.
Solution extract_solution(const System& sys, const SolverState& st, const SolverOptions& options);

}  // namespace acdc
