// acdcpf: command-line front end for the acdc power-flow library.
// Talks to the solver exclusively through the C API in acdc/acdc.h.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <memory>
#include <string>

#include "acdc/acdc.h"

namespace {

struct RunConfig {
    std::string case_path;
    std::string vsc_path;
    double tol = 1e-8;
    int max_iter = 50;
    int enforce_start = 4;
    int max_pv_per_iter = 1;
    std::string qlim = "on";
    std::string output = "table";
    bool iter_log = false;
    double damping = 1.0;
};

using CaseHandle = std::unique_ptr<acdc_case, decltype(&acdc_case_free)>;
using MtdcHandle = std::unique_ptr<acdc_mtdc, decltype(&acdc_mtdc_free)>;
using SolutionHandle = std::unique_ptr<acdc_solution, decltype(&acdc_solution_free)>;

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void print_bus_table(const acdc_solution* sol) {
    std::printf("Bus results\n");
    std::printf("  %5s %10s %10s %10s %11s %10s %10s\n", "bus", "v [pu]", "theta [rad]",
                "pG [pu]", "qG [pu]", "pL [pu]", "qL [pu]");
    const int n = acdc_solution_bus_count(sol);
    for (int i = 0; i < n; ++i) {
        acdc_bus_result b;
        if (acdc_solution_bus(sol, i, &b) != ACDC_OK) continue;
        std::printf("  %5d %10.4f %10.4f %10.4f %10.4f%s %10.4f %10.4f\n", b.id, b.v, b.theta,
                    b.p_gen, b.q_gen, b.q_binding != 0 ? "*" : " ", b.p_load, b.q_load);
    }
}

void print_vsc_table(const acdc_solution* sol) {
    const int n = acdc_solution_vsc_count(sol);
    if (n == 0) return;
    std::printf("\nVSC results\n");
    std::printf("  %4s %4s %5s %9s %9s %9s %9s %10s %9s\n", "vsc", "bus", "node", "Psh [pu]",
                "Qsh [pu]", "Pdc [pu]", "Vm [pu]", "Vsh [pu]", "Ish [pu]");
    for (int i = 0; i < n; ++i) {
        acdc_vsc_result v;
        if (acdc_solution_vsc(sol, i, &v) != ACDC_OK) continue;
        std::printf("  %4d %4d %5d %9.4f%s %8.4f %9.4f %9.4f %9.4f%s %8.4f%s\n", v.id, v.ac_bus,
                    v.dc_node, v.p_sh, v.p_control_released ? "*" : " ", v.q_sh, v.p_dc, v.v_m,
                    v.v_sh, v.vsh_binding != 0 ? "*" : " ", v.i_sh,
                    v.ish_binding != 0 ? "*" : " ");
    }
    std::printf("\nDC nodes\n");
    std::printf("  %5s %10s\n", "node", "Vdc [pu]");
    const int nn = acdc_solution_dc_node_count(sol);
    for (int i = 0; i < nn; ++i) {
        acdc_dc_node_result d;
        if (acdc_solution_dc_node(sol, i, &d) != ACDC_OK) continue;
        std::printf("  %5d %10.4f\n", d.id, d.v_dc);
    }
}

void print_binding(const acdc_solution* sol) {
    const int n = acdc_solution_binding_count(sol);
    if (n == 0) return;
    std::printf("\nBinding limits\n");
    for (int i = 0; i < n; ++i) {
        acdc_binding_limit b;
        if (acdc_solution_binding(sol, i, &b) != ACDC_OK) continue;
        std::printf("  %s %d: %s = %.4f\n", b.device, b.id, b.limit, b.value);
    }
}

void print_iter_log(const acdc_solution* sol) {
    std::printf("\nIteration log\n");
    const int n = acdc_solution_iteration_count(sol);
    for (int i = 0; i < n; ++i) {
        acdc_iteration_entry e;
        if (acdc_solution_iteration(sol, i, &e) != ACDC_OK) continue;
        std::printf("  iter %2d: residual %.6e", e.iteration, e.residual_norm);
        for (int j = 0; j < e.event_count; ++j) {
            const char* ev = acdc_solution_iteration_event(sol, i, j);
            if (ev) std::printf("%s%s", j == 0 ? "  [" : "; ", ev);
        }
        if (e.event_count > 0) std::printf("]");
        std::printf("\n");
    }
}

int run_solve(const RunConfig& cfg) {
    const auto t_parse = std::chrono::steady_clock::now();
    acdc_case* case_raw = nullptr;
    if (acdc_case_load(cfg.case_path.c_str(), &case_raw) != ACDC_OK) {
        std::fprintf(stderr, "error: %s\n", acdc_last_error());
        return 1;
    }
    CaseHandle net(case_raw, &acdc_case_free);

    acdc_mtdc* mtdc_raw = nullptr;
    if (!cfg.vsc_path.empty()) {
        if (acdc_mtdc_load(cfg.vsc_path.c_str(), &mtdc_raw) != ACDC_OK) {
            std::fprintf(stderr, "error: %s\n", acdc_last_error());
            return 1;
        }
    } else {
        acdc_mtdc_empty(&mtdc_raw);
    }
    MtdcHandle mtdc(mtdc_raw, &acdc_mtdc_free);
    const double parse_ms = ms_since(t_parse);

    char* report = nullptr;
    if (acdc_validate(net.get(), mtdc.get(), &report) != ACDC_OK) {
        std::fprintf(stderr, "error: %s\n", acdc_last_error());
        acdc_string_free(report);
        return 1;
    }
    acdc_string_free(report);

    acdc_options opts;
    acdc_options_init(&opts);
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    opts.enforce_start_iter = cfg.enforce_start;
    opts.max_pv_per_iter = cfg.max_pv_per_iter;
    opts.qlim_enforcement = cfg.qlim == "on" ? 1 : 0;
    opts.step_damping = cfg.damping;

    acdc_solution* sol_raw = nullptr;
    if (acdc_solve(net.get(), mtdc.get(), &opts, &sol_raw) != ACDC_OK) {
        std::fprintf(stderr, "error: %s\n", acdc_last_error());
        return 1;
    }
    SolutionHandle sol(sol_raw, &acdc_solution_free);

    if (cfg.output == "json") {
        char* json = acdc_solution_to_json(sol.get());
        std::printf("%s\n", json);
        acdc_string_free(json);
    } else {
        print_bus_table(sol.get());
        print_vsc_table(sol.get());
        print_binding(sol.get());
        if (cfg.iter_log) print_iter_log(sol.get());
        const acdc_solve_status st = acdc_solution_status(sol.get());
        const char* verdict = st == ACDC_SOLVE_CONVERGED
                                  ? "Converged"
                                  : (st == ACDC_SOLVE_MAX_ITERATIONS ? "Did not converge"
                                                                     : "Diverged");
        std::printf("\n%s in %d iterations, residual %.3e\n", verdict,
                    acdc_solution_iterations(sol.get()),
                    acdc_solution_residual_norm(sol.get()));
        const char* failure = acdc_solution_failure(sol.get());
        if (failure && failure[0]) std::printf("  %s\n", failure);
        std::printf("Timing: parse %.2f ms, analyze %.2f ms, solve %.2f ms\n", parse_ms,
                    acdc_solution_analyze_ms(sol.get()), acdc_solution_wall_ms(sol.get()));
    }

    return acdc_solution_status(sol.get()) == ACDC_SOLVE_CONVERGED ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AC/DC power flow with VSC MT-HVDC limit enforcement"};
    app.require_subcommand(1);

    RunConfig cfg;
    CLI::App* solve = app.add_subcommand("solve", "solve a power flow case");
    solve->add_option("case", cfg.case_path, "MATPOWER case file")->required();
    solve->add_option("--vsc", cfg.vsc_path, "VSC MT-HVDC overlay (JSON)");
    solve->add_option("--tol", cfg.tol, "convergence tolerance (residual inf-norm)")
        ->capture_default_str();
    solve->add_option("--max-iter", cfg.max_iter, "iteration cap")->capture_default_str();
    solve->add_option("--enforce-start", cfg.enforce_start,
                      "first iteration that enforces limits")
        ->capture_default_str();
    solve->add_option("--max-pv-per-iter", cfg.max_pv_per_iter,
                      "PV conversions allowed per iteration")
        ->capture_default_str();
    solve->add_option("--qlim", cfg.qlim, "generator reactive limit handling")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    solve->add_option("--output", cfg.output, "report format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
    solve->add_flag("--iter-log", cfg.iter_log, "print the per-iteration log");
    solve->add_option("--damping", cfg.damping, "Newton step scale")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) return run_solve(cfg);
    return 1;
}
