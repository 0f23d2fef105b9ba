// Acceptance suite: end-to-end checks of the solver against its published
// behavior, one verdict line per criterion. Exits nonzero when any criterion
// fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "acdc/matpower.hpp"
#include "acdc/newton.hpp"
#include "acdc/report.hpp"
#include "acdc/vsc_model.hpp"
#include "fd_check.hpp"
#include "reference_solver.hpp"
#include "synthetic_case.hpp"
#include "test_util.hpp"

using namespace acdc;
using namespace acdc::test;

namespace {

struct Criterion {
    std::string name;
    bool pass = true;
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            failures.push_back(what);
        }
    }
    void note(const std::string& n) { notes.push_back(n); }
};

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

bool vsc_pinned(const VscResult& v, VscPin pin) {
    return v.slot_b_pin == pin || v.slot_a_pin == pin;
}

double dc_losses(const MtdcSystem& mtdc, const Solution& sol) {
    std::vector<double> vdc;
    for (const auto& n : sol.dc_nodes) vdc.push_back(n.v_dc);
    double losses = 0.0;
    for (const auto& l : mtdc.dc_lines) {
        const double dv = vdc[mtdc.node_index(l.from)] - vdc[mtdc.node_index(l.to)];
        losses += dv * dv / l.r;
    }
    return losses;
}

double sum_pdc(const Solution& sol) {
    double s = 0.0;
    for (const auto& v : sol.vscs) s += v.p_dc;
    return s;
}

void check_invariant_suite(Criterion& c, const MtdcSystem& mtdc, const Solution& sol,
                           const std::string& tag) {
    c.require(std::abs(sum_pdc(sol) - dc_losses(mtdc, sol)) < 1e-8,
              tag + ": DC conservation");
    for (size_t k = 0; k < sol.vscs.size(); ++k) {
        const auto& v = sol.vscs[k];
        const auto& rec = mtdc.converters[k];
        c.require(v.p_sh + v.p_dc_prime - rec.rsh * v.i_sh * v.i_sh < 1e-10 &&
                      v.p_sh + v.p_dc_prime - rec.rsh * v.i_sh * v.i_sh > -1e-10,
                  tag + ": throughput identity");
        c.require(v.v_sh >= rec.vsh_min - 1e-6 && v.v_sh <= rec.vsh_max + 1e-6,
                  tag + ": Vsh within bounds");
        c.require(v.i_sh <= rec.ish_max + 1e-6, tag + ": Ish within rating");

        // Complementarity: a released slot sits exactly on its bound.
        auto on_bound = [&](VscPin pin) {
            switch (pin) {
                case VscPin::VshAtMax: return std::abs(v.v_sh - rec.vsh_max) < 1e-8;
                case VscPin::VshAtMin: return std::abs(v.v_sh - rec.vsh_min) < 1e-8;
                case VscPin::IshAtMax: return std::abs(v.i_sh - rec.ish_max) < 1e-8;
                case VscPin::None: return true;
            }
            return true;
        };
        c.require(on_bound(v.slot_b_pin) && on_bound(v.slot_a_pin),
                  tag + ": released slots pinned exactly on their bounds");
    }
    c.require(sol.pattern_stable, tag + ": pattern stable");
    c.require(sol.symbolic_analyses == 1, tag + ": one symbolic analysis");
}

// ---- criterion 1: reactive-limit enforcement on the 14-bus case ----
Criterion criterion_scenario1() {
    Criterion c;
    c.name = "scenario 1: 14-bus with generator Q ceilings";
    const NetworkCase net = load_case("ieee14_qlim.m");
    const MtdcSystem empty;
    const auto t0 = std::chrono::steady_clock::now();
    const Solution sol = newton_solve(net, empty);
    const double ms = ms_since(t0);

    c.require(sol.converged(), "converges");
    c.require(sol.iterations <= 9, "iterations " + std::to_string(sol.iterations) + " <= 9");
    c.require(ms < 1000.0, "runtime under 1 s");

    auto vtol = [&](int bus_idx, double expect, const char* name) {
        const double got = sol.buses[bus_idx].v;
        c.require(std::abs(got - expect) <= 1.0000001e-3,
                  std::string(name) + " = " + fmt(got) + " vs " + fmt(expect) + " +-1e-3");
    };
    vtol(1, 1.0442, "V2");
    vtol(8, 1.0562, "V9");
    vtol(13, 1.0357, "V14");

    const auto& g2 = sol.generators[1];
    c.require(g2.mode == GenMode::QAtMax && std::abs(g2.q - 0.4) < 1e-7,
              "Qg2 = 0.4000 binding (got " + fmt(g2.q) + ")");
    const auto& g3 = sol.generators[2];
    c.require(g3.binding() && std::abs(g3.q - 0.24) <= 1.0000001e-3,
              "Qg3 = 0.2400 binding (got " + fmt(g3.q) +
                  (g3.binding() ? ", binding" : ", in voltage control") + ")");
    if (!g3.binding()) {
        c.note("published bus-3 row prints the limit value while holding V3 = 1.01, which "
               "only the unpinned solution satisfies; see decisions ledger");
    }
    const auto& g6 = sol.generators[3];
    c.require(std::abs(g6.q - 0.1243) <= 1.0000001e-3 && !g6.binding(),
              "Qg6 = 0.1243 +-1e-3 within limits (got " + fmt(g6.q) + ")");

    // Angles against an independent reference solve, slack-relative.
    ReferenceOptions ropt;
    ropt.enforce_q_limits = true;
    const auto ref = reference_solve(net, ropt);
    c.require(ref.converged, "reference solve converges");
    if (ref.converged) {
        const double shift = sol.buses[0].theta - ref.theta[0];
        double worst = 0.0;
        for (int b = 0; b < 14; ++b)
            worst = std::max(worst, std::abs(sol.buses[b].theta - shift - ref.theta[b]));
        c.require(worst < 1e-5, "angles match the reference solve (worst " + fmt(worst) + ")");
    }
    return c;
}

// ---- criterion 2: four-terminal overlay with converter voltage pins ----
Criterion criterion_scenario2() {
    Criterion c;
    c.name = "scenario 2: four-terminal MT-HVDC overlay";
    const NetworkCase net = load_case("ieee14_qlim.m");
    const MtdcSystem mtdc = load_overlay("vsc4_ring.json");
    const Solution sol = newton_solve(net, mtdc);

    c.require(sol.converged(), "converges");
    c.require(vsc_pinned(sol.vscs[0], VscPin::VshAtMax), "Vsh1 pinned at max 1.0");
    c.require(vsc_pinned(sol.vscs[1], VscPin::VshAtMin), "Vsh2 pinned at min 1.02");
    c.require(sol.vscs[0].slot_a_pin == VscPin::None &&
                  sol.vscs[1].slot_a_pin == VscPin::None &&
                  sol.vscs[2].slot_b_pin == VscPin::None &&
                  sol.vscs[2].slot_a_pin == VscPin::None &&
                  sol.vscs[3].slot_b_pin == VscPin::None &&
                  sol.vscs[3].slot_a_pin == VscPin::None,
              "no converter pin outside {Vsh1 max, Vsh2 min}");
    for (int k = 0; k < 3; ++k)
        c.require(std::abs(sol.vscs[k].p_sh - 0.2) < 1e-6,
                  "Psh" + std::to_string(k + 1) + " = 0.2000 (got " + fmt(sol.vscs[k].p_sh) +
                      ")");
    c.require(std::abs(sol.buses[11].v - 1.05) < 1e-6,
              "V12 = 1.0500 (got " + fmt(sol.buses[11].v) + ")");
    c.require(std::abs(sol.buses[13].v - 1.035) < 1e-6,
              "V14 = 1.0350 (got " + fmt(sol.buses[13].v) + ")");
    c.require(std::abs(sol.vscs[3].v_dc - 1.0) < 1e-6,
              "Vdc4 = 1.0000 (got " + fmt(sol.vscs[3].v_dc) + ")");
    c.require(std::abs(sum_pdc(sol) - dc_losses(mtdc, sol)) < 1e-8,
              "DC conservation to 1e-8 (sum Pdc " + fmt(sum_pdc(sol)) + ", losses " +
                  fmt(dc_losses(mtdc, sol)) + ")");
    if (sol.converged()) check_invariant_suite(c, mtdc, sol, "scenario 2");
    return c;
}

// ---- criterion 3: converter current limit cascade ----
Criterion criterion_scenario3() {
    Criterion c;
    c.name = "scenario 3: VSC3 current limit 0.19 / 0.18";
    const NetworkCase net = load_case("ieee14_qlim.m");
    {
        const MtdcSystem mtdc = load_overlay("vsc4_ring_ilim.json");
        const Solution sol = newton_solve(net, mtdc);
        c.require(sol.converged(), "0.19: converges");
        const auto& v3 = sol.vscs[2];
        c.require(vsc_pinned(v3, VscPin::IshAtMax) && std::abs(v3.i_sh - 0.19) < 1e-7,
                  "0.19: Ish3 = 0.1900 binding (got " + fmt(v3.i_sh) + ")");
        c.require(vsc_pinned(v3, VscPin::VshAtMax) && std::abs(v3.v_sh - 1.1) < 1e-7,
                  "0.19: Vsh3 = 1.1000 binding (got " + fmt(v3.v_sh) + ")");
        c.require(v3.p_control_released && std::abs(v3.p_sh - 0.2) > 1e-2,
                  "0.19: active power control released (Psh3 " + fmt(v3.p_sh) + ")");
        if (sol.converged()) check_invariant_suite(c, mtdc, sol, "0.19");
    }
    {
        const MtdcSystem mtdc = load_overlay("vsc4_ring_ilim_tight.json");
        bool crashed = false;
        Solution sol;
        try {
            sol = newton_solve(net, mtdc);
        } catch (const std::exception&) {
            crashed = true;
        }
        c.require(!crashed, "0.18: no crash");
        if (!crashed) {
            c.require(sol.iterations <= 50, "0.18: bounded by max_iter");
            c.require(!sol.converged(),
                      "0.18: non-converged status (got " + to_string(sol.status) + " in " +
                          std::to_string(sol.iterations) + " iterations)");
            if (sol.converged()) {
                c.note("0.18: solver reaches a limit-feasible solution; the published "
                       "non-convergence is a trajectory artifact (see decisions ledger)");
            }
        }
    }
    return c;
}

// ---- criterion 4: property suite ----
Criterion criterion_properties() {
    Criterion c;
    c.name = "property suite: Jacobian, oracles, identities, pattern";
    Rng rng(2024);

    // (a) analytic Jacobian vs central differences, 20 random states per case.
    {
        struct CaseSpec {
            const char* case_file;
            const char* overlay;  // nullptr for plain AC
        };
        const CaseSpec specs[] = {{"ieee14.m", nullptr},
                                  {"ieee14_qlim.m", "vsc4_ring.json"}};
        for (const auto& spec : specs) {
            const NetworkCase net = load_case(spec.case_file);
            const MtdcSystem mtdc =
                spec.overlay ? load_overlay(spec.overlay) : MtdcSystem{};
            const System sys = build_system(net, mtdc);
            double worst = 0.0;
            int missing = 0;
            for (int trial = 0; trial < 20; ++trial) {
                SolverState st = initialize_state(sys);
                const auto& lay = sys.layout;
                for (int b = 0; b < lay.n_bus(); ++b) {
                    st.x[lay.theta(b)] += rng.uniform(-0.05, 0.05);
                    st.x[lay.v(b)] += rng.uniform(-0.05, 0.05);
                }
                for (int i = 0; i < lay.n_gen(); ++i) st.x[lay.qg(i)] += rng.uniform(-0.2, 0.2);
                for (int s = 0; s < lay.n_pg(); ++s) st.x[lay.pg(s)] += rng.uniform(-0.2, 0.2);
                for (int k = 0; k < lay.n_vsc(); ++k)
                    for (int j = 0; j < kVscBlock; ++j)
                        st.x[lay.vsc(k, static_cast<VscVar>(j))] += rng.uniform(-0.05, 0.05);
                for (int n = 0; n < lay.n_node(); ++n)
                    st.x[lay.vdc(n)] += rng.uniform(-0.05, 0.05);
                const FdReport rep = fd_compare(sys, st);
                worst = std::max(worst, rep.max_rel_err);
                missing += rep.significant_missing;
            }
            c.require(worst < 1e-5, std::string(spec.case_file) +
                                        ": FD agreement (worst rel err " + fmt(worst) + ")");
            c.require(missing == 0, std::string(spec.case_file) + ": no missing entries");
        }
    }

    // (b) complex-arithmetic oracle for the converter terminal power and the
    // nodal injections, 1000 random inputs each.
    {
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            const double rsh = rng.uniform(0.0, 0.05);
            const double xsh = rng.uniform(0.02, 0.3);
            const double vm = rng.uniform(0.8, 1.2), thm = rng.uniform(-0.6, 0.6);
            const double vsh = rng.uniform(0.8, 1.2), tsh = rng.uniform(-0.6, 0.6);
            const auto y = ShuntAdmittance::from_impedance(rsh, xsh);
            const auto f = shunt_power_flow(vm, thm, vsh, tsh, y);
            const std::complex<double> a = std::polar(vm, thm), b = std::polar(vsh, tsh);
            const auto s = a * std::conj((a - b) / std::complex<double>(rsh, xsh));
            worst = std::max(worst, std::abs(f.p - s.real()));
            worst = std::max(worst, std::abs(f.q - s.imag()));
        }
        c.require(worst < 1e-12, "terminal power complex oracle (worst " + fmt(worst) + ")");

        const NetworkCase net = load_case("ieee14.m");
        const MtdcSystem empty;
        const System sys = build_system(net, empty);
        SolverState st = initialize_state(sys);
        double worst_bus = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<std::complex<double>> v(14);
            for (int b = 0; b < 14; ++b) {
                st.x[sys.layout.theta(b)] = rng.uniform(-0.6, 0.6);
                st.x[sys.layout.v(b)] = rng.uniform(0.85, 1.15);
                v[b] = std::polar(st.x[sys.layout.v(b)], st.x[sys.layout.theta(b)]);
            }
            const int b = trial % 14;
            std::complex<double> yv{0.0, 0.0};
            for (const auto& e : sys.ybus.row(b))
                yv += std::complex<double>(e.g, e.b) * v[e.col];
            const auto s = v[b] * std::conj(yv);
            const BusPower p = bus_injection(sys, st.x, b);
            worst_bus = std::max(worst_bus, std::abs(p.p - s.real()));
            worst_bus = std::max(worst_bus, std::abs(p.q - s.imag()));
        }
        c.require(worst_bus < 1e-12, "nodal injection complex oracle (worst " + fmt(worst_bus) +
                                         ")");
    }

    // (c) throughput identity to 1e-12.
    {
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            const double rsh = rng.uniform(0.0, 0.05);
            const double xsh = rng.uniform(0.02, 0.3);
            const double vm = rng.uniform(0.8, 1.2), thm = rng.uniform(-0.6, 0.6);
            const double vsh = rng.uniform(0.8, 1.2), tsh = rng.uniform(-0.6, 0.6);
            const auto y = ShuntAdmittance::from_impedance(rsh, xsh);
            const auto f = shunt_power_flow(vm, thm, vsh, tsh, y);
            const auto t = converter_throughput(vm, thm, vsh, tsh, y);
            const auto i = ish_magnitude(vm, thm, vsh, tsh, y);
            worst = std::max(worst, std::abs(f.p + t.p_dc_prime - rsh * i.i_sh * i.i_sh));
        }
        c.require(worst < 1e-12, "throughput identity (worst " + fmt(worst) + ")");
    }

    // (d, e) fixed pattern and a single symbolic analysis across the scenarios.
    {
        const NetworkCase net = load_case("ieee14_qlim.m");
        const char* overlays[] = {nullptr, "vsc4_ring.json", "vsc4_ring_ilim.json",
                                  "vsc4_ring_ilim_tight.json"};
        for (const char* ov : overlays) {
            const MtdcSystem mtdc = ov ? load_overlay(ov) : MtdcSystem{};
            const Solution sol = newton_solve(net, mtdc);
            const std::string tag = ov ? ov : "plain AC";
            c.require(sol.pattern_stable, tag + ": pattern hash constant");
            for (const auto& entry : sol.log)
                c.require(entry.pattern_hash == sol.pattern_hash,
                          tag + ": per-iteration hash matches");
            c.require(sol.symbolic_analyses == 1, tag + ": exactly one symbolic analysis");
            c.require(sol.numeric_factorizations == sol.iterations,
                      tag + ": one numeric factorization per iteration");
        }
    }
    return c;
}

// ---- criterion 5: plain-AC equivalence ----
Criterion criterion_plain_ac() {
    Criterion c;
    c.name = "plain-AC equivalence against the reference oracle";
    const NetworkCase net = load_case("ieee14.m");
    const MtdcSystem empty;
    SolverOptions opt;
    opt.qlim_enforcement = false;
    const Solution sol = newton_solve(net, empty, opt);
    c.require(sol.converged(), "converges");
    const auto ref = reference_solve(net);
    c.require(ref.converged, "reference converges");
    if (sol.converged() && ref.converged) {
        double worst_v = 0.0, worst_t = 0.0;
        const double shift = sol.buses[0].theta - ref.theta[0];
        for (int b = 0; b < 14; ++b) {
            worst_v = std::max(worst_v, std::abs(sol.buses[b].v - ref.v[b]));
            worst_t = std::max(worst_t, std::abs(sol.buses[b].theta - shift - ref.theta[b]));
        }
        c.require(worst_v < 1e-6, "voltages match to 1e-6 pu (worst " + fmt(worst_v) + ")");
        c.require(worst_t < 1e-6, "slack-relative angles match (worst " + fmt(worst_t) + ")");
    }
    return c;
}

// ---- criterion 6: scale ----
Criterion criterion_scale() {
    Criterion c;
    c.name = "scale: 9241-bus system, plain and with a 10-terminal overlay";
    NetworkCase net;
    bool published = false;
    try {
        net = load_case("case9241pegase.m");
        published = true;
        c.note("using data/case9241pegase.m");
    } catch (const std::exception&) {
        net = synthetic_grid_case(9241);
        c.note("published 9241-bus file not present; using the synthetic 9241-bus grid "
               "(drop case9241pegase.m into data/ to run the original)");
    }
    (void)published;

    // Parser at scale, timed.
    const std::string text = write_matpower_case(net);
    const auto tp = std::chrono::steady_clock::now();
    const NetworkCase reparsed = parse_matpower_case(text);
    const double parse_ms = ms_since(tp);
    c.require(static_cast<int>(reparsed.buses.size()) == 9241,
              "9241 buses parsed (got " + std::to_string(reparsed.buses.size()) + ")");
    c.note("parse time " + fmt(parse_ms) + " ms");

    SolverOptions opt;
    opt.qlim_enforcement = false;  // converter limits stay on
    const MtdcSystem empty;
    const auto t0 = std::chrono::steady_clock::now();
    const Solution base = newton_solve(net, empty, opt);
    const double base_ms = ms_since(t0);
    c.require(base.converged(), "base case converges");
    c.require(base.iterations <= 15,
              "base iterations " + std::to_string(base.iterations) + " <= 15");
    c.require(base_ms < 30000.0, "base solve under 30 s (" + fmt(base_ms) + " ms)");
    c.require(base.symbolic_analyses == 1, "one symbolic analysis");

    const MtdcSystem overlay = synthetic_overlay(net, 10);
    const auto t1 = std::chrono::steady_clock::now();
    const Solution sol = newton_solve(net, overlay, opt);
    const double sol_ms = ms_since(t1);
    c.require(sol.converged(), "10-terminal overlay converges");
    c.require(sol_ms < 30000.0, "overlay solve under 30 s (" + fmt(sol_ms) + " ms)");
    if (sol.converged()) check_invariant_suite(c, overlay, sol, "overlay");
    c.note("base " + std::to_string(base.iterations) + " iters / " + fmt(base_ms) +
           " ms; overlay " + std::to_string(sol.iterations) + " iters / " + fmt(sol_ms) +
           " ms");
    return c;
}

}  // namespace

int main() {
    std::vector<Criterion> results;
    results.push_back(criterion_scenario1());
    results.push_back(criterion_scenario2());
    results.push_back(criterion_scenario3());
    results.push_back(criterion_properties());
    results.push_back(criterion_plain_ac());
    results.push_back(criterion_scale());

    int failed = 0;
    for (size_t i = 0; i < results.size(); ++i) {
        const auto& c = results[i];
        std::printf("[criterion %zu] %s - %s\n", i + 1, c.pass ? "PASS" : "FAIL",
                    c.name.c_str());
        for (const auto& f : c.failures) std::printf("    failed: %s\n", f.c_str());
        for (const auto& n : c.notes) std::printf("    note: %s\n", n.c_str());
        if (!c.pass) ++failed;
    }
    std::printf("%zu of %zu acceptance criteria passed\n", results.size() - failed,
                results.size());
    return failed == 0 ? 0 : 1;
}
