#include "acdc/layout.hpp"

#include <unordered_map>
#include <unordered_set>

namespace acdc {

VariableLayout VariableLayout::build(const NetworkCase& net, const MtdcSystem& mtdc) {
    VariableLayout lay;
    lay.n_bus_ = static_cast<int>(net.buses.size());
    lay.n_node_ = static_cast<int>(mtdc.dc_nodes.size());

    std::unordered_map<int, int> bus_of;
    for (int i = 0; i < lay.n_bus_; ++i) bus_of[net.buses[i].id] = i;

    std::unordered_set<int> slack_with_pg;
    for (size_t gi = 0; gi < net.generators.size(); ++gi) {
        const auto& g = net.generators[gi];
        if (!g.in_service) continue;
        const int b = bus_of.at(g.bus);
        const auto& bus = net.buses[b];
        if (bus.kind == BusKind::PQ) {
            lay.fixed_.push_back({b, g.p_set});
            continue;
        }
        GenEntry e;
        e.record = static_cast<int>(gi);
        e.bus = b;
        e.p_set = g.p_set;
        e.v_set = g.v_set;
        e.q_min = g.q_min;
        e.q_max = g.q_max;
        if (bus.kind == BusKind::Slack) {
            e.at_slack = true;
            if (slack_with_pg.insert(b).second) {
                e.carries_pg = true;
                e.theta_set = bus.theta_init;
            }
        }
        lay.gens_.push_back(e);
    }

    lay.pg_slot_of_.assign(lay.gens_.size(), -1);
    for (size_t i = 0; i < lay.gens_.size(); ++i) {
        if (lay.gens_[i].carries_pg) lay.pg_slot_of_[i] = lay.n_pg_++;
    }

    std::unordered_map<int, int> node_of;
    for (int i = 0; i < lay.n_node_; ++i) node_of[mtdc.dc_nodes[i].id] = i;
    for (size_t ci = 0; ci < mtdc.converters.size(); ++ci) {
        const auto& c = mtdc.converters[ci];
        VscEntry e;
        e.record = static_cast<int>(ci);
        e.bus = bus_of.at(c.ac_bus);
        e.node = node_of.at(c.dc_node);
        e.ysh = ShuntAdmittance::from_impedance(c.rsh, c.xsh);
        lay.vscs_.push_back(e);
    }

    lay.vsc_base_ = 2 * lay.n_bus_ + lay.n_gen() + lay.n_pg_;
    lay.size_ = lay.vsc_base_ + kVscBlock * lay.n_vsc() + lay.n_node_;
    return lay;
}

}  // namespace acdc
