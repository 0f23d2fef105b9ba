#include "acdc/vsc_json.hpp"

#include <json.hpp>
#include <unordered_map>
#include <unordered_set>

namespace acdc {

using nlohmann::json;

namespace {

std::optional<double> opt_number(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_number()) throw ParseError(std::string(key) + " must be a number or null");
    return it->get<double>();
}

double req_number(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number())
        throw ParseError(std::string("missing numeric field ") + key);
    return it->get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return fallback;
    if (!it->is_number()) throw ParseError(std::string(key) + " must be a number");
    return it->get<double>();
}

int req_int(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer())
        throw ParseError(std::string("missing integer field ") + key);
    return it->get<int>();
}

std::string req_string(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string())
        throw ParseError(std::string("missing string field ") + key);
    return it->get<std::string>();
}

void check_dc_structure(const MtdcSystem& m) {
    // Every DC node must be reachable from some other node of its island;
    // an overlay whose line set leaves a multi-node component split is refused.
    // Islands are the connected components of the line graph; isolated nodes
    // (no lines at all) are only legal when the overlay has a single node.
    if (m.dc_nodes.empty()) return;
    std::unordered_map<int, int> idx;
    for (size_t i = 0; i < m.dc_nodes.size(); ++i) idx[m.dc_nodes[i].id] = static_cast<int>(i);
    std::vector<int> comp(m.dc_nodes.size());
    for (size_t i = 0; i < comp.size(); ++i) comp[i] = static_cast<int>(i);
    std::vector<std::vector<int>> adj(m.dc_nodes.size());
    auto root = [&comp](int a) {
        while (comp[a] != a) a = comp[a] = comp[comp[a]];
        return a;
    };
    for (const auto& l : m.dc_lines) {
        auto a = idx.find(l.from), b = idx.find(l.to);
        if (a == idx.end())
            throw ParseError("dc_line references unknown node " + std::to_string(l.from));
        if (b == idx.end())
            throw ParseError("dc_line references unknown node " + std::to_string(l.to));
        adj[a->second].push_back(b->second);
        adj[b->second].push_back(a->second);
        comp[root(a->second)] = root(b->second);
    }
    if (m.dc_nodes.size() > 1) {
        for (size_t i = 0; i < adj.size(); ++i) {
            if (adj[i].empty())
                throw ParseError("DC node " + std::to_string(m.dc_nodes[i].id) +
                                 " is not connected to any DC line");
        }
    }

    // Each island that carries converters needs exactly one secondary.
    std::unordered_map<int, int> secondaries, converters;
    for (const auto& c : m.converters) {
        auto n = idx.find(c.dc_node);
        if (n == idx.end()) continue;  // reported by the caller
        const int r = root(n->second);
        ++converters[r];
        if (c.role == VscRole::Secondary) ++secondaries[r];
    }
    for (const auto& [r, count] : converters) {
        const int n_sec = secondaries.count(r) ? secondaries[r] : 0;
        if (n_sec != 1)
            throw ParseError("DC island containing node " + std::to_string(m.dc_nodes[r].id) +
                             " has " + std::to_string(n_sec) +
                             " secondary converters, expected exactly 1");
    }
}

}  // namespace

MtdcSystem parse_vsc_extension(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("top level must be a JSON object");

    MtdcSystem m;
    std::unordered_set<int> vsc_ids, node_ids;

    for (const auto& jc : j.value("converters", json::array())) {
        VscRecord c;
        c.id = req_int(jc, "id");
        if (!vsc_ids.insert(c.id).second)
            throw ParseError("duplicate converter id " + std::to_string(c.id));
        c.ac_bus = req_int(jc, "ac_bus");
        c.dc_node = req_int(jc, "dc_node");
        std::string role = req_string(jc, "role");
        if (role == "primary") {
            c.role = VscRole::Primary;
            std::string mode = req_string(jc, "control_mode");
            if (mode == "PQ")
                c.control_mode = VscControlMode::PQ;
            else if (mode == "PV")
                c.control_mode = VscControlMode::PV;
            else
                throw ParseError("control_mode must be PQ or PV, got " + mode);
        } else if (role == "secondary") {
            c.role = VscRole::Secondary;
        } else {
            throw ParseError("role must be primary or secondary, got " + role);
        }
        c.p_set = opt_number(jc, "p_set");
        c.q_set = opt_number(jc, "q_set");
        c.v_set = opt_number(jc, "v_set");
        c.vdc_set = opt_number(jc, "vdc_set");
        c.rsh = req_number(jc, "rsh");
        c.xsh = req_number(jc, "xsh");
        c.loss_a = number_or(jc, "loss_a", 0.0);
        c.loss_b = number_or(jc, "loss_b", 0.0);
        c.loss_c = number_or(jc, "loss_c", 0.0);
        c.vsh_min = req_number(jc, "vsh_min");
        c.vsh_max = req_number(jc, "vsh_max");
        c.ish_max = req_number(jc, "ish_max");

        if (c.rsh * c.rsh + c.xsh * c.xsh <= 0.0)
            throw ParseError("converter " + std::to_string(c.id) +
                             ": coupling impedance must be nonzero");
        if (!(c.vsh_min > 0.0) || !(c.vsh_min < c.vsh_max))
            throw ParseError("converter " + std::to_string(c.id) +
                             ": requires 0 < vsh_min < vsh_max");
        if (!(c.ish_max > 0.0))
            throw ParseError("converter " + std::to_string(c.id) + ": requires ish_max > 0");
        if (c.role == VscRole::Primary) {
            if (!c.p_set) throw ParseError("primary converter " + std::to_string(c.id) +
                                           " requires p_set");
            if (c.control_mode == VscControlMode::PQ && !c.q_set)
                throw ParseError("PQ converter " + std::to_string(c.id) + " requires q_set");
            if (c.control_mode == VscControlMode::PV && !c.v_set)
                throw ParseError("PV converter " + std::to_string(c.id) + " requires v_set");
        } else {
            if (!c.v_set || !c.vdc_set)
                throw ParseError("secondary converter " + std::to_string(c.id) +
                                 " requires v_set and vdc_set");
        }
        m.converters.push_back(c);
    }

    for (const auto& jn : j.value("dc_nodes", json::array())) {
        DcNodeRecord n;
        n.id = req_int(jn, "id");
        if (!node_ids.insert(n.id).second)
            throw ParseError("duplicate dc_node id " + std::to_string(n.id));
        n.vdc_init = number_or(jn, "vdc_init", 1.0);
        if (!(n.vdc_init > 0.0))
            throw ParseError("dc_node " + std::to_string(n.id) + ": vdc_init must be positive");
        m.dc_nodes.push_back(n);
    }

    for (const auto& jl : j.value("dc_lines", json::array())) {
        DcLineRecord l;
        l.from = req_int(jl, "from");
        l.to = req_int(jl, "to");
        l.r = req_number(jl, "r");
        if (!(l.r > 0.0))
            throw ParseError("dc_line " + std::to_string(l.from) + "-" + std::to_string(l.to) +
                             ": nonpositive DC resistance");
        m.dc_lines.push_back(l);
    }

    for (const auto& c : m.converters) {
        if (!node_ids.count(c.dc_node))
            throw ParseError("converter " + std::to_string(c.id) + " references unknown dc_node " +
                             std::to_string(c.dc_node));
    }
    check_dc_structure(m);
    return m;
}

std::string write_vsc_extension(const MtdcSystem& m) {
    json j;
    j["converters"] = json::array();
    for (const auto& c : m.converters) {
        json jc;
        jc["id"] = c.id;
        jc["ac_bus"] = c.ac_bus;
        jc["dc_node"] = c.dc_node;
        jc["role"] = c.role == VscRole::Primary ? "primary" : "secondary";
        if (c.role == VscRole::Primary)
            jc["control_mode"] = c.control_mode == VscControlMode::PQ ? "PQ" : "PV";
        auto put_opt = [&jc](const char* key, const std::optional<double>& v) {
            if (v)
                jc[key] = *v;
            else
                jc[key] = nullptr;
        };
        put_opt("p_set", c.p_set);
        put_opt("q_set", c.q_set);
        put_opt("v_set", c.v_set);
        put_opt("vdc_set", c.vdc_set);
        jc["rsh"] = c.rsh;
        jc["xsh"] = c.xsh;
        jc["loss_a"] = c.loss_a;
        jc["loss_b"] = c.loss_b;
        jc["loss_c"] = c.loss_c;
        jc["vsh_min"] = c.vsh_min;
        jc["vsh_max"] = c.vsh_max;
        jc["ish_max"] = c.ish_max;
        j["converters"].push_back(jc);
    }
    j["dc_nodes"] = json::array();
    for (const auto& n : m.dc_nodes) {
        j["dc_nodes"].push_back({{"id", n.id}, {"vdc_init", n.vdc_init}});
    }
    j["dc_lines"] = json::array();
    for (const auto& l : m.dc_lines) {
        j["dc_lines"].push_back({{"from", l.from}, {"to", l.to}, {"r", l.r}});
    }
    return j.dump(2);
}

}  // namespace acdc
