#include "acdc/newton.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "acdc/klu_solver.hpp"
#include "acdc/validate.hpp"

namespace acdc {

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

std::vector<double> eval_residual(const System& sys, const SolverState& st) {
    std::vector<double> g(sys.layout.size(), 0.0);
    ac_residual(sys, st, g);
    vsc_residual(sys, st, g);
    return g;
}

void assemble_jacobian(const System& sys, const SolverState& st, FixedPatternMatrix& jac) {
    jac.begin_assembly();
    ac_jacobian(sys, st, jac);
    vsc_jacobian(sys, st, jac);
    jac.end_assembly();
}

Solution extract_solution(const System& sys, const SolverState& st,
                          const SolverOptions& options) {
    const auto& lay = sys.layout;
    const auto& x = st.x;
    Solution sol;
    sol.tolerance = options.tol;
    sol.iterations = st.iterations;
    if (!st.norm_history.empty()) sol.residual_norm = st.norm_history.back();

    std::vector<double> p_gen(lay.n_bus(), 0.0), q_gen(lay.n_bus(), 0.0);
    std::vector<double> p_vsc(lay.n_bus(), 0.0), q_vsc(lay.n_bus(), 0.0);
    for (const auto& f : lay.fixed_injections()) p_gen[f.bus] += f.p;
    for (int i = 0; i < lay.n_gen(); ++i) {
        const auto& e = lay.gens()[i];
        q_gen[e.bus] += x[lay.qg(i)];
        p_gen[e.bus] += e.carries_pg ? x[lay.pg(lay.pg_slot_of(i))] : e.p_set;

        GenResult gr;
        gr.bus = sys.net->buses[e.bus].id;
        gr.q = x[lay.qg(i)];
        gr.q_min = e.q_min;
        gr.q_max = e.q_max;
        gr.mode = st.gen_mode[i];
        sol.generators.push_back(gr);
        if (gr.binding()) {
            sol.binding_limits.push_back({"generator", gr.bus,
                                          gr.mode == GenMode::QAtMax ? "q_max" : "q_min",
                                          gr.mode == GenMode::QAtMax ? e.q_max : e.q_min});
        }
    }
    for (int k = 0; k < lay.n_vsc(); ++k) {
        const auto& e = lay.vscs()[k];
        p_vsc[e.bus] += x[lay.vsc(k, VscVar::Psh)];
        q_vsc[e.bus] += x[lay.vsc(k, VscVar::Qsh)];
    }

    for (int b = 0; b < lay.n_bus(); ++b) {
        const auto& bus = sys.net->buses[b];
        BusResult br;
        br.id = bus.id;
        br.v = x[lay.v(b)];
        br.theta = x[lay.theta(b)];
        br.p_gen = p_gen[b];
        br.q_gen = q_gen[b];
        br.p_load = bus.p_load + p_vsc[b];
        br.q_load = bus.q_load + q_vsc[b];
        sol.buses.push_back(br);
    }

    for (int k = 0; k < lay.n_vsc(); ++k) {
        const auto& e = lay.vscs()[k];
        const auto& c = sys.mtdc->converters[e.record];
        const auto& lim = st.vsc_state[k];
        VscResult vr;
        vr.id = c.id;
        vr.ac_bus = c.ac_bus;
        vr.dc_node = c.dc_node;
        vr.p_sh = x[lay.vsc(k, VscVar::Psh)];
        vr.q_sh = x[lay.vsc(k, VscVar::Qsh)];
        vr.p_dc = x[lay.vsc(k, VscVar::Pdc)];
        vr.p_dc_prime = x[lay.vsc(k, VscVar::PdcPrime)];
        vr.v_m = x[lay.v(e.bus)];
        vr.v_sh = x[lay.vsc(k, VscVar::Vsh)];
        vr.theta_sh = x[lay.vsc(k, VscVar::ThetaSh)];
        vr.i_sh = x[lay.vsc(k, VscVar::Ish)];
        vr.v_dc = x[lay.vdc(e.node)];
        vr.slot_b_pin = lim.slot_b;
        vr.slot_a_pin = lim.slot_a;
        if (lim.slot_a_released()) {
            if (c.role == VscRole::Primary)
                vr.p_control_released = true;
            else
                vr.vdc_control_released = true;
        }
        sol.vscs.push_back(vr);

        auto pin_entry = [&](VscPin pin) {
            switch (pin) {
                case VscPin::VshAtMax:
                    sol.binding_limits.push_back({"vsc", c.id, "vsh_max", c.vsh_max});
                    break;
                case VscPin::VshAtMin:
                    sol.binding_limits.push_back({"vsc", c.id, "vsh_min", c.vsh_min});
                    break;
                case VscPin::IshAtMax:
                    sol.binding_limits.push_back({"vsc", c.id, "ish_max", c.ish_max});
                    break;
                case VscPin::None: break;
            }
        };
        pin_entry(lim.slot_b);
        pin_entry(lim.slot_a);
    }

    for (int n = 0; n < lay.n_node(); ++n) {
        sol.dc_nodes.push_back({sys.mtdc->dc_nodes[n].id, x[lay.vdc(n)]});
    }
    return sol;
}

Solution newton_solve(const NetworkCase& net, const MtdcSystem& mtdc,
                      const SolverOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    if (options.dishonest_newton)
        throw std::invalid_argument("dishonest_newton is reserved and not implemented");
    if (!(options.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (options.max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");

    const ValidationReport rep = validate(net, mtdc);
    if (!rep.ok()) {
        std::string msg = "validation failed:";
        for (const auto& e : rep.errors) msg += "\n  " + e;
        throw std::invalid_argument(msg);
    }

    System sys = build_system(net, mtdc);
    SolverState st = initialize_state(sys);
    FixedPatternMatrix jac(sys.layout.size());
    LinearSolver lin;
    std::vector<double> dx(sys.layout.size());

    // Per-step caps on voltage and angle moves keep early iterates inside the
    // physical basin; power-like variables move freely.
    std::vector<double> step_cap(sys.layout.size(), std::numeric_limits<double>::infinity());
    {
        const auto& lay = sys.layout;
        for (int b = 0; b < lay.n_bus(); ++b) {
            step_cap[lay.theta(b)] = 0.5;
            step_cap[lay.v(b)] = 0.2;
        }
        for (int k = 0; k < lay.n_vsc(); ++k) {
            step_cap[lay.vsc(k, VscVar::ThetaSh)] = 0.5;
            step_cap[lay.vsc(k, VscVar::Vsh)] = 0.2;
        }
        for (int n = 0; n < lay.n_node(); ++n) step_cap[lay.vdc(n)] = 0.2;
    }

    Solution sol;
    SolveStatus status = SolveStatus::MaxIterations;
    std::string failure;
    std::vector<IterationEntry> log;
    std::uint64_t first_hash = 0;
    bool pattern_stable = true;
    double analyze_ms = 0.0;

    int it = 0;
    while (true) {
        std::vector<double> g = eval_residual(sys, st);
        double norm = inf_norm(g);
        if (!all_finite(g)) {
            st.norm_history.push_back(std::numeric_limits<double>::quiet_NaN());
            status = SolveStatus::Diverged;
            failure = "non-finite residual at iteration " + std::to_string(it + 1);
            break;
        }
        st.norm_history.push_back(norm);
        const bool at_tol = norm <= options.tol;
        const int iteration = it + 1;

        // Limits are checked on schedule, and always before declaring
        // convergence: a solution is only reported converged once no
        // enforcement event is pending.
        std::vector<LimitEvent> events;
        if (at_tol || iteration >= options.enforce_start_iter) {
            if (options.qlim_enforcement) {
                auto ev = pv_limit_update(sys, st, iteration, options.max_pv_per_iter);
                events.insert(events.end(), ev.begin(), ev.end());
            }
            auto ev = vsc_limit_update(sys, st, iteration);
            events.insert(events.end(), ev.begin(), ev.end());
        }
        if (at_tol && events.empty()) {
            bool physical = true;
            for (int b = 0; b < sys.layout.n_bus(); ++b)
                if (st.x[sys.layout.v(b)] <= 0.0) physical = false;
            for (int n = 0; n < sys.layout.n_node(); ++n)
                if (st.x[sys.layout.vdc(n)] <= 0.0) physical = false;
            if (!physical) {
                status = SolveStatus::Diverged;
                failure = "residual met tolerance at a nonphysical point "
                          "(nonpositive voltage) at iteration " +
                          std::to_string(iteration);
                break;
            }
            status = SolveStatus::Converged;
            break;
        }
        if (norm > options.divergence_norm) {
            status = SolveStatus::Diverged;
            break;
        }
        if (it >= options.max_iter) {
            status = SolveStatus::MaxIterations;
            break;
        }

        IterationEntry entry;
        entry.iteration = iteration;
        if (!events.empty()) {
            for (const auto& e : events) entry.events.push_back(e.text);
            g = eval_residual(sys, st);  // rows were rewritten
            norm = inf_norm(g);
        }
        entry.residual_norm = norm;

        assemble_jacobian(sys, st, jac);
        if (lin.symbolic_count() == 0) {
            const auto ta = std::chrono::steady_clock::now();
            lin.analyze(jac);
            analyze_ms = ms_since(ta);
            first_hash = jac.pattern_hash();
        }
        entry.pattern_hash = jac.pattern_hash();
        if (entry.pattern_hash != first_hash) pattern_stable = false;
        log.push_back(std::move(entry));

        if (!lin.factor(jac)) {
            status = SolveStatus::Diverged;
            failure = lin.last_error() + " at iteration " + std::to_string(iteration);
            break;
        }
        lin.solve_negated(g, dx);
        if (!all_finite(dx)) {
            status = SolveStatus::Diverged;
            failure = "non-finite increment at iteration " + std::to_string(iteration);
            break;
        }
        for (size_t i = 0; i < st.x.size(); ++i) {
            const double step = std::clamp(options.step_damping * dx[i], -step_cap[i],
                                           step_cap[i]);
            st.x[i] += step;
        }
        st.iterations = ++it;
    }

    sol = extract_solution(sys, st, options);
    sol.status = status;
    sol.failure = failure;
    sol.log = std::move(log);
    sol.symbolic_analyses = lin.symbolic_count();
    sol.numeric_factorizations = lin.numeric_count();
    sol.pattern_stable = pattern_stable;
    sol.pattern_hash = first_hash;
    sol.analyze_ms = analyze_ms;
    sol.residual_norm = st.norm_history.empty() ? 0.0 : st.norm_history.back();
    sol.wall_ms = ms_since(t0);
    return sol;
}

}  // namespace acdc
