#include "acdc/validate.hpp"

#include <unordered_map>
#include <vector>

namespace acdc {

namespace {

// Union-find over vector indices.
struct Components {
    std::vector<int> parent;
    explicit Components(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::string bus_str(int id) { return "bus " + std::to_string(id); }

}  // namespace

ValidationReport validate(const NetworkCase& net, const MtdcSystem& mtdc) {
    ValidationReport rep;
    auto error = [&rep](const std::string& m) { rep.errors.push_back(m); };
    auto warn = [&rep](const std::string& m) { rep.warnings.push_back(m); };

    if (net.buses.empty()) {
        error("case has no buses");
        return rep;
    }

    std::unordered_map<int, int> bus_of;
    for (size_t i = 0; i < net.buses.size(); ++i) {
        const auto& b = net.buses[i];
        if (bus_of.count(b.id)) error("duplicate bus id " + std::to_string(b.id));
        bus_of[b.id] = static_cast<int>(i);
        if (!(b.v_init > 0.0)) error(bus_str(b.id) + ": v_init must be positive");
    }

    // AC connectivity over in-service branches.
    Components ac(net.buses.size());
    for (const auto& br : net.branches) {
        auto f = bus_of.find(br.from);
        auto t = bus_of.find(br.to);
        if (f == bus_of.end()) {
            error("branch references unknown " + bus_str(br.from));
            continue;
        }
        if (t == bus_of.end()) {
            error("branch references unknown " + bus_str(br.to));
            continue;
        }
        if (!br.in_service) continue;
        if (br.r == 0.0 && br.x == 0.0)
            error("in-service branch " + std::to_string(br.from) + "-" + std::to_string(br.to) +
                  " has zero impedance");
        ac.unite(f->second, t->second);
    }

    // Generators: classify buses as voltage controlled.
    std::vector<int> vc_gens_at_bus(net.buses.size(), 0);
    for (const auto& g : net.generators) {
        auto it = bus_of.find(g.bus);
        if (it == bus_of.end()) {
            error("generator references unknown " + bus_str(g.bus));
            continue;
        }
        if (!g.in_service) continue;
        if (g.q_min > g.q_max) error("generator at " + bus_str(g.bus) + " has q_min > q_max");
        if (!(g.v_set > 0.0)) error("generator at " + bus_str(g.bus) + " has nonpositive v_set");
        const auto& b = net.buses[it->second];
        if (b.kind == BusKind::PQ) {
            warn("generator at PQ-type " + bus_str(g.bus) +
                 " is treated as a fixed injection (p_set, q = 0)");
        } else {
            ++vc_gens_at_bus[it->second];
        }
    }

    // One slack per AC island; PV buses need a live generator.
    std::unordered_map<int, int> slack_in_island;
    for (size_t i = 0; i < net.buses.size(); ++i) {
        const auto& b = net.buses[i];
        if (b.kind == BusKind::Slack) {
            if (vc_gens_at_bus[i] == 0)
                error("slack " + bus_str(b.id) + " has no in-service generator");
            ++slack_in_island[ac.find(static_cast<int>(i))];
        } else if (b.kind == BusKind::PV && vc_gens_at_bus[i] == 0) {
            warn("PV-type " + bus_str(b.id) +
                 " has no in-service generator and is treated as PQ");
        }
    }
    for (size_t i = 0; i < net.buses.size(); ++i) {
        int root = ac.find(static_cast<int>(i));
        int n_slack = slack_in_island.count(root) ? slack_in_island[root] : 0;
        if (n_slack == 0) {
            error("AC island containing " + bus_str(net.buses[i].id) + " has no slack bus");
            slack_in_island[root] = -1;  // report once
        } else if (n_slack > 1) {
            error("AC island containing " + bus_str(net.buses[i].id) + " has " +
                  std::to_string(n_slack) + " slack buses");
            slack_in_island[root] = -1;
        }
    }

    if (mtdc.empty() && mtdc.dc_nodes.empty()) return rep;

    // Overlay cross references.
    std::unordered_map<int, int> node_of;
    for (size_t i = 0; i < mtdc.dc_nodes.size(); ++i) {
        const auto& n = mtdc.dc_nodes[i];
        if (node_of.count(n.id)) error("duplicate dc_node id " + std::to_string(n.id));
        node_of[n.id] = static_cast<int>(i);
        if (!(n.vdc_init > 0.0))
            error("dc_node " + std::to_string(n.id) + ": vdc_init must be positive");
    }

    std::vector<int> vsc_at_node(mtdc.dc_nodes.size(), 0);
    std::vector<int> vctrl_at_bus(net.buses.size(), 0);
    for (const auto& c : mtdc.converters) {
        std::string who = "converter " + std::to_string(c.id);
        auto bit = bus_of.find(c.ac_bus);
        if (bit == bus_of.end()) {
            error(who + ": unresolved ac_bus " + std::to_string(c.ac_bus));
            continue;
        }
        auto nit = node_of.find(c.dc_node);
        if (nit == node_of.end()) {
            error(who + ": unresolved dc_node " + std::to_string(c.dc_node));
            continue;
        }
        ++vsc_at_node[nit->second];
        if (c.rsh * c.rsh + c.xsh * c.xsh <= 0.0) error(who + ": zero coupling impedance");
        if (!(c.vsh_min > 0.0) || !(c.vsh_min < c.vsh_max))
            error(who + ": requires 0 < vsh_min < vsh_max");
        if (!(c.ish_max > 0.0)) error(who + ": requires ish_max > 0");

        bool controls_ac_voltage = c.role == VscRole::Secondary ||
                                   (c.role == VscRole::Primary &&
                                    c.control_mode == VscControlMode::PV);
        if (controls_ac_voltage) {
            const auto& b = net.buses[bit->second];
            if (b.kind != BusKind::PQ || vc_gens_at_bus[bit->second] > 0)
                error(who + ": AC voltage control conflicts with the voltage-controlled " +
                      bus_str(c.ac_bus));
            if (++vctrl_at_bus[bit->second] > 1)
                error(who + ": a second converter controls voltage on " + bus_str(c.ac_bus));
        }
    }
    for (size_t i = 0; i < mtdc.dc_nodes.size(); ++i) {
        if (vsc_at_node[i] != 1)
            error("dc_node " + std::to_string(mtdc.dc_nodes[i].id) + " is referenced by " +
                  std::to_string(vsc_at_node[i]) + " converters, expected exactly 1");
    }

    // DC islands over the line graph: connected, exactly one secondary each.
    Components dc(mtdc.dc_nodes.size());
    for (const auto& l : mtdc.dc_lines) {
        auto f = node_of.find(l.from);
        auto t = node_of.find(l.to);
        if (f == node_of.end()) {
            error("dc_line references unknown node " + std::to_string(l.from));
            continue;
        }
        if (t == node_of.end()) {
            error("dc_line references unknown node " + std::to_string(l.to));
            continue;
        }
        if (!(l.r > 0.0))
            error("dc_line " + std::to_string(l.from) + "-" + std::to_string(l.to) +
                  ": nonpositive DC resistance");
        dc.unite(f->second, t->second);
    }
    std::unordered_map<int, int> secondary_in_island;
    for (const auto& c : mtdc.converters) {
        auto nit = node_of.find(c.dc_node);
        if (nit == node_of.end()) continue;
        if (c.role == VscRole::Secondary) ++secondary_in_island[dc.find(nit->second)];
    }
    for (size_t i = 0; i < mtdc.dc_nodes.size(); ++i) {
        int root = dc.find(static_cast<int>(i));
        auto it = secondary_in_island.find(root);
        int n_sec = it == secondary_in_island.end() ? 0 : it->second;
        if (n_sec != 1 && n_sec != -1) {
            error("DC island containing node " + std::to_string(mtdc.dc_nodes[i].id) + " has " +
                  std::to_string(n_sec) + " secondary converters, expected exactly 1");
            secondary_in_island[root] = -1;
        }
    }

    return rep;
}

}  // namespace acdc
