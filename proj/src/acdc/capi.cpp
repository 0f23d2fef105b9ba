#include "acdc/acdc.h"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "acdc/matpower.hpp"
#include "acdc/newton.hpp"
#include "acdc/report.hpp"
#include "acdc/types.hpp"
#include "acdc/validate.hpp"
#include "acdc/vsc_json.hpp"

struct acdc_case {
    acdc::NetworkCase net;
    std::vector<std::string> warnings;
};

struct acdc_mtdc {
    acdc::MtdcSystem mtdc;
};

struct acdc_solution {
    acdc::Solution sol;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

acdc_status fail(acdc_status code, const std::string& msg) {
    set_error(msg);
    return code;
}

bool read_file(const char* path, std::string& out, std::string& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err = std::string("file not found: ") + path;
        return false;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int pin_to_vsh_flag(acdc::VscPin a, acdc::VscPin b) {
    for (auto p : {a, b}) {
        if (p == acdc::VscPin::VshAtMax) return 1;
        if (p == acdc::VscPin::VshAtMin) return -1;
    }
    return 0;
}

}  // namespace

extern "C" {

const char* acdc_version(void) { return "1.0.0"; }

const char* acdc_last_error(void) { return g_last_error.c_str(); }

void acdc_string_free(char* s) { std::free(s); }

acdc_status acdc_case_load(const char* path, acdc_case** out) {
    if (!path || !out) return fail(ACDC_ERROR_ARGUMENT, "null argument");
    std::string text, err;
    if (!read_file(path, text, err)) return fail(ACDC_ERROR_IO, err);
    return acdc_case_parse(text.c_str(), out);
}

acdc_status acdc_case_parse(const char* text, acdc_case** out) {
    if (!text || !out) return fail(ACDC_ERROR_ARGUMENT, "null argument");
    try {
        auto c = std::make_unique<acdc_case>();
        c->net = acdc::parse_matpower_case(text, &c->warnings);
        *out = c.release();
        return ACDC_OK;
    } catch (const std::exception& e) {
        return fail(ACDC_ERROR_PARSE, e.what());
    }
}

void acdc_case_free(acdc_case* c) { delete c; }

int acdc_case_bus_count(const acdc_case* c) {
    return c ? static_cast<int>(c->net.buses.size()) : 0;
}
int acdc_case_gen_count(const acdc_case* c) {
    return c ? static_cast<int>(c->net.generators.size()) : 0;
}
int acdc_case_branch_count(const acdc_case* c) {
    return c ? static_cast<int>(c->net.branches.size()) : 0;
}
double acdc_case_base_mva(const acdc_case* c) { return c ? c->net.base_mva : 0.0; }

acdc_status acdc_mtdc_load(const char* path, acdc_mtdc** out) {
    if (!path || !out) return fail(ACDC_ERROR_ARGUMENT, "null argument");
    std::string text, err;
    if (!read_file(path, text, err)) return fail(ACDC_ERROR_IO, err);
    return acdc_mtdc_parse(text.c_str(), out);
}

acdc_status acdc_mtdc_parse(const char* text, acdc_mtdc** out) {
    if (!text || !out) return fail(ACDC_ERROR_ARGUMENT, "null argument");
    try {
        auto m = std::make_unique<acdc_mtdc>();
        m->mtdc = acdc::parse_vsc_extension(text);
        *out = m.release();
        return ACDC_OK;
    } catch (const std::exception& e) {
        return fail(ACDC_ERROR_PARSE, e.what());
    }
}

acdc_status acdc_mtdc_empty(acdc_mtdc** out) {
    if (!out) return fail(ACDC_ERROR_ARGUMENT, "null argument");
    *out = new acdc_mtdc{};
    return ACDC_OK;
}

void acdc_mtdc_free(acdc_mtdc* m) { delete m; }

int acdc_mtdc_converter_count(const acdc_mtdc* m) {
    return m ? static_cast<int>(m->mtdc.converters.size()) : 0;
}

void acdc_options_init(acdc_options* opts) {
    if (!opts) return;
    acdc::SolverOptions d;
    opts->tol = d.tol;
    opts->max_iter = d.max_iter;
    opts->enforce_start_iter = d.enforce_start_iter;
    opts->max_pv_per_iter = d.max_pv_per_iter;
    opts->qlim_enforcement = d.qlim_enforcement ? 1 : 0;
    opts->divergence_norm = d.divergence_norm;
    opts->step_damping = d.step_damping;
    opts->dishonest_newton = 0;
}

acdc_status acdc_validate(const acdc_case* c, const acdc_mtdc* m, char** report_json) {
    if (!c) return fail(ACDC_ERROR_ARGUMENT, "null case");
    static const acdc::MtdcSystem kEmpty;
    const acdc::ValidationReport rep = acdc::validate(c->net, m ? m->mtdc : kEmpty);
    if (report_json) {
        nlohmann::json j;
        j["errors"] = rep.errors;
        j["warnings"] = rep.warnings;
        for (const auto& w : c->warnings) j["warnings"].push_back(w);
        *report_json = dup_string(j.dump(2));
    }
    if (!rep.ok()) {
        std::string msg = "validation failed:";
        for (const auto& e : rep.errors) msg += "\n  " + e;
        return fail(ACDC_ERROR_VALIDATION, msg);
    }
    return ACDC_OK;
}

acdc_status acdc_solve(const acdc_case* c, const acdc_mtdc* m, const acdc_options* opts,
                       acdc_solution** out) {
    if (!c || !out) return fail(ACDC_ERROR_ARGUMENT, "null argument");
    acdc::SolverOptions o;
    if (opts) {
        o.tol = opts->tol;
        o.max_iter = opts->max_iter;
        o.enforce_start_iter = opts->enforce_start_iter;
        o.max_pv_per_iter = opts->max_pv_per_iter;
        o.qlim_enforcement = opts->qlim_enforcement != 0;
        o.divergence_norm = opts->divergence_norm;
        o.step_damping = opts->step_damping;
        o.dishonest_newton = opts->dishonest_newton != 0;
    }
    static const acdc::MtdcSystem kEmpty;
    try {
        auto s = std::make_unique<acdc_solution>();
        s->sol = acdc::newton_solve(c->net, m ? m->mtdc : kEmpty, o);
        *out = s.release();
        return ACDC_OK;
    } catch (const std::invalid_argument& e) {
        return fail(ACDC_ERROR_VALIDATION, e.what());
    } catch (const std::exception& e) {
        return fail(ACDC_ERROR_INTERNAL, e.what());
    }
}

void acdc_solution_free(acdc_solution* s) { delete s; }

acdc_solve_status acdc_solution_status(const acdc_solution* s) {
    switch (s->sol.status) {
        case acdc::SolveStatus::Converged: return ACDC_SOLVE_CONVERGED;
        case acdc::SolveStatus::MaxIterations: return ACDC_SOLVE_MAX_ITERATIONS;
        case acdc::SolveStatus::Diverged: return ACDC_SOLVE_DIVERGED;
    }
    return ACDC_SOLVE_DIVERGED;
}

int acdc_solution_iterations(const acdc_solution* s) { return s->sol.iterations; }
double acdc_solution_residual_norm(const acdc_solution* s) { return s->sol.residual_norm; }
double acdc_solution_wall_ms(const acdc_solution* s) { return s->sol.wall_ms; }
double acdc_solution_analyze_ms(const acdc_solution* s) { return s->sol.analyze_ms; }
int acdc_solution_symbolic_analyses(const acdc_solution* s) { return s->sol.symbolic_analyses; }
int acdc_solution_numeric_factorizations(const acdc_solution* s) {
    return s->sol.numeric_factorizations;
}
int acdc_solution_pattern_stable(const acdc_solution* s) {
    return s->sol.pattern_stable ? 1 : 0;
}
const char* acdc_solution_failure(const acdc_solution* s) { return s->sol.failure.c_str(); }

int acdc_solution_bus_count(const acdc_solution* s) {
    return static_cast<int>(s->sol.buses.size());
}

acdc_status acdc_solution_bus(const acdc_solution* s, int index, acdc_bus_result* out) {
    if (!s || !out || index < 0 || index >= acdc_solution_bus_count(s))
        return fail(ACDC_ERROR_ARGUMENT, "bus index out of range");
    const auto& b = s->sol.buses[index];
    *out = {b.id, b.v, b.theta, b.p_gen, b.q_gen, b.p_load, b.q_load, 0};
    for (const auto& g : s->sol.generators) {
        if (g.bus != b.id) continue;
        if (g.mode == acdc::GenMode::QAtMax) out->q_binding = 1;
        if (g.mode == acdc::GenMode::QAtMin && out->q_binding == 0) out->q_binding = -1;
    }
    return ACDC_OK;
}

int acdc_solution_vsc_count(const acdc_solution* s) {
    return static_cast<int>(s->sol.vscs.size());
}

acdc_status acdc_solution_vsc(const acdc_solution* s, int index, acdc_vsc_result* out) {
    if (!s || !out || index < 0 || index >= acdc_solution_vsc_count(s))
        return fail(ACDC_ERROR_ARGUMENT, "vsc index out of range");
    const auto& v = s->sol.vscs[index];
    out->id = v.id;
    out->ac_bus = v.ac_bus;
    out->dc_node = v.dc_node;
    out->p_sh = v.p_sh;
    out->q_sh = v.q_sh;
    out->p_dc = v.p_dc;
    out->v_m = v.v_m;
    out->v_sh = v.v_sh;
    out->i_sh = v.i_sh;
    out->v_dc = v.v_dc;
    out->vsh_binding = pin_to_vsh_flag(v.slot_b_pin, v.slot_a_pin);
    out->ish_binding =
        (v.slot_b_pin == acdc::VscPin::IshAtMax || v.slot_a_pin == acdc::VscPin::IshAtMax) ? 1
                                                                                           : 0;
    out->p_control_released = v.p_control_released ? 1 : 0;
    out->vdc_control_released = v.vdc_control_released ? 1 : 0;
    return ACDC_OK;
}

int acdc_solution_dc_node_count(const acdc_solution* s) {
    return static_cast<int>(s->sol.dc_nodes.size());
}

acdc_status acdc_solution_dc_node(const acdc_solution* s, int index,
                                  acdc_dc_node_result* out) {
    if (!s || !out || index < 0 || index >= acdc_solution_dc_node_count(s))
        return fail(ACDC_ERROR_ARGUMENT, "dc node index out of range");
    const auto& n = s->sol.dc_nodes[index];
    *out = {n.id, n.v_dc};
    return ACDC_OK;
}

int acdc_solution_binding_count(const acdc_solution* s) {
    return static_cast<int>(s->sol.binding_limits.size());
}

acdc_status acdc_solution_binding(const acdc_solution* s, int index, acdc_binding_limit* out) {
    if (!s || !out || index < 0 || index >= acdc_solution_binding_count(s))
        return fail(ACDC_ERROR_ARGUMENT, "binding index out of range");
    const auto& b = s->sol.binding_limits[index];
    out->device = b.device.c_str();
    out->id = b.id;
    out->limit = b.limit.c_str();
    out->value = b.value;
    return ACDC_OK;
}

int acdc_solution_iteration_count(const acdc_solution* s) {
    return static_cast<int>(s->sol.log.size());
}

acdc_status acdc_solution_iteration(const acdc_solution* s, int index,
                                    acdc_iteration_entry* out) {
    if (!s || !out || index < 0 || index >= acdc_solution_iteration_count(s))
        return fail(ACDC_ERROR_ARGUMENT, "iteration index out of range");
    const auto& e = s->sol.log[index];
    out->iteration = e.iteration;
    out->residual_norm = e.residual_norm;
    out->pattern_hash = e.pattern_hash;
    out->event_count = static_cast<int>(e.events.size());
    return ACDC_OK;
}

const char* acdc_solution_iteration_event(const acdc_solution* s, int iter_index,
                                          int event_index) {
    if (!s || iter_index < 0 || iter_index >= acdc_solution_iteration_count(s)) return nullptr;
    const auto& ev = s->sol.log[iter_index].events;
    if (event_index < 0 || event_index >= static_cast<int>(ev.size())) return nullptr;
    return ev[event_index].c_str();
}

char* acdc_solution_to_json(const acdc_solution* s) {
    if (!s) return nullptr;
    return dup_string(acdc::solution_to_json(s->sol));
}

}  // extern "C"
