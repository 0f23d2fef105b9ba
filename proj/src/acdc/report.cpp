#include "acdc/report.hpp"

#include <json.hpp>

namespace acdc {

using nlohmann::json;

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIterations: return "max_iter";
        case SolveStatus::Diverged: return "diverged";
    }
    return "diverged";
}

std::string to_string(GenMode m) {
    switch (m) {
        case GenMode::VoltageControl: return "voltage_control";
        case GenMode::QAtMax: return "q_at_max";
        case GenMode::QAtMin: return "q_at_min";
    }
    return "voltage_control";
}

std::string to_string(VscPin p) {
    switch (p) {
        case VscPin::None: return "none";
        case VscPin::VshAtMax: return "vsh_max";
        case VscPin::VshAtMin: return "vsh_min";
        case VscPin::IshAtMax: return "ish_max";
    }
    return "none";
}

namespace {

SolveStatus status_from(const std::string& s) {
    if (s == "converged") return SolveStatus::Converged;
    if (s == "max_iter") return SolveStatus::MaxIterations;
    return SolveStatus::Diverged;
}

GenMode gen_mode_from(const std::string& s) {
    if (s == "q_at_max") return GenMode::QAtMax;
    if (s == "q_at_min") return GenMode::QAtMin;
    return GenMode::VoltageControl;
}

VscPin pin_from(const std::string& s) {
    if (s == "vsh_max") return VscPin::VshAtMax;
    if (s == "vsh_min") return VscPin::VshAtMin;
    if (s == "ish_max") return VscPin::IshAtMax;
    return VscPin::None;
}

}  // namespace

std::string solution_to_json(const Solution& sol) {
    json j;
    j["status"] = to_string(sol.status);
    j["iterations"] = sol.iterations;
    j["residual_norm"] = sol.residual_norm;
    j["tolerance"] = sol.tolerance;
    if (!sol.failure.empty()) j["failure"] = sol.failure;

    j["buses"] = json::array();
    for (const auto& b : sol.buses) {
        j["buses"].push_back({{"id", b.id},
                              {"v", b.v},
                              {"theta", b.theta},
                              {"p_gen", b.p_gen},
                              {"q_gen", b.q_gen},
                              {"p_load", b.p_load},
                              {"q_load", b.q_load}});
    }
    j["generators"] = json::array();
    for (const auto& g : sol.generators) {
        j["generators"].push_back({{"bus", g.bus},
                                   {"q", g.q},
                                   {"q_min", g.q_min},
                                   {"q_max", g.q_max},
                                   {"mode", to_string(g.mode)}});
    }
    j["vscs"] = json::array();
    for (const auto& v : sol.vscs) {
        j["vscs"].push_back({{"id", v.id},
                             {"ac_bus", v.ac_bus},
                             {"dc_node", v.dc_node},
                             {"p_sh", v.p_sh},
                             {"q_sh", v.q_sh},
                             {"p_dc", v.p_dc},
                             {"p_dc_prime", v.p_dc_prime},
                             {"v_m", v.v_m},
                             {"v_sh", v.v_sh},
                             {"theta_sh", v.theta_sh},
                             {"i_sh", v.i_sh},
                             {"v_dc", v.v_dc},
                             {"slot_b_pin", to_string(v.slot_b_pin)},
                             {"slot_a_pin", to_string(v.slot_a_pin)},
                             {"p_control_released", v.p_control_released},
                             {"vdc_control_released", v.vdc_control_released}});
    }
    j["dc_nodes"] = json::array();
    for (const auto& n : sol.dc_nodes) {
        j["dc_nodes"].push_back({{"id", n.id}, {"v_dc", n.v_dc}});
    }
    j["binding_limits"] = json::array();
    for (const auto& b : sol.binding_limits) {
        j["binding_limits"].push_back(
            {{"device", b.device}, {"id", b.id}, {"limit", b.limit}, {"value", b.value}});
    }
    j["iteration_log"] = json::array();
    for (const auto& e : sol.log) {
        j["iteration_log"].push_back({{"iteration", e.iteration},
                                      {"residual_norm", e.residual_norm},
                                      {"pattern_hash", e.pattern_hash},
                                      {"events", e.events}});
    }
    j["counters"] = {{"symbolic_analyses", sol.symbolic_analyses},
                     {"numeric_factorizations", sol.numeric_factorizations},
                     {"pattern_stable", sol.pattern_stable},
                     {"pattern_hash", sol.pattern_hash}};
    j["timing_ms"] = {{"analyze", sol.analyze_ms}, {"total", sol.wall_ms}};
    return j.dump(2);
}

Solution solution_from_json(const std::string& text) {
    const json j = json::parse(text);
    Solution sol;
    sol.status = status_from(j.at("status").get<std::string>());
    sol.iterations = j.at("iterations").get<int>();
    sol.residual_norm = j.at("residual_norm").get<double>();
    sol.tolerance = j.at("tolerance").get<double>();
    sol.failure = j.value("failure", "");

    for (const auto& b : j.at("buses")) {
        BusResult r;
        r.id = b.at("id").get<int>();
        r.v = b.at("v").get<double>();
        r.theta = b.at("theta").get<double>();
        r.p_gen = b.at("p_gen").get<double>();
        r.q_gen = b.at("q_gen").get<double>();
        r.p_load = b.at("p_load").get<double>();
        r.q_load = b.at("q_load").get<double>();
        sol.buses.push_back(r);
    }
    for (const auto& g : j.at("generators")) {
        GenResult r;
        r.bus = g.at("bus").get<int>();
        r.q = g.at("q").get<double>();
        r.q_min = g.at("q_min").get<double>();
        r.q_max = g.at("q_max").get<double>();
        r.mode = gen_mode_from(g.at("mode").get<std::string>());
        sol.generators.push_back(r);
    }
    for (const auto& v : j.at("vscs")) {
        VscResult r;
        r.id = v.at("id").get<int>();
        r.ac_bus = v.at("ac_bus").get<int>();
        r.dc_node = v.at("dc_node").get<int>();
        r.p_sh = v.at("p_sh").get<double>();
        r.q_sh = v.at("q_sh").get<double>();
        r.p_dc = v.at("p_dc").get<double>();
        r.p_dc_prime = v.at("p_dc_prime").get<double>();
        r.v_m = v.at("v_m").get<double>();
        r.v_sh = v.at("v_sh").get<double>();
        r.theta_sh = v.at("theta_sh").get<double>();
        r.i_sh = v.at("i_sh").get<double>();
        r.v_dc = v.at("v_dc").get<double>();
        r.slot_b_pin = pin_from(v.at("slot_b_pin").get<std::string>());
        r.slot_a_pin = pin_from(v.at("slot_a_pin").get<std::string>());
        r.p_control_released = v.at("p_control_released").get<bool>();
        r.vdc_control_released = v.at("vdc_control_released").get<bool>();
        sol.vscs.push_back(r);
    }
    for (const auto& n : j.at("dc_nodes")) {
        sol.dc_nodes.push_back({n.at("id").get<int>(), n.at("v_dc").get<double>()});
    }
    for (const auto& b : j.at("binding_limits")) {
        sol.binding_limits.push_back({b.at("device").get<std::string>(), b.at("id").get<int>(),
                                      b.at("limit").get<std::string>(),
                                      b.at("value").get<double>()});
    }
    for (const auto& e : j.at("iteration_log")) {
        IterationEntry entry;
        entry.iteration = e.at("iteration").get<int>();
        entry.residual_norm = e.at("residual_norm").get<double>();
        entry.pattern_hash = e.at("pattern_hash").get<std::uint64_t>();
        entry.events = e.at("events").get<std::vector<std::string>>();
        sol.log.push_back(entry);
    }
    const auto& c = j.at("counters");
    sol.symbolic_analyses = c.at("symbolic_analyses").get<int>();
    sol.numeric_factorizations = c.at("numeric_factorizations").get<int>();
    sol.pattern_stable = c.at("pattern_stable").get<bool>();
    sol.pattern_hash = c.at("pattern_hash").get<std::uint64_t>();
    const auto& t = j.at("timing_ms");
    sol.analyze_ms = t.at("analyze").get<double>();
    sol.wall_ms = t.at("total").get<double>();
    return sol;
}

}  // namespace acdc
