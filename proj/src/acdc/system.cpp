#include "acdc/system.hpp"

#include <algorithm>

namespace acdc {

System build_system(const NetworkCase& net, const MtdcSystem& mtdc) {
    System sys;
    sys.net = &net;
    sys.mtdc = &mtdc;
    sys.layout = build_layout(net, mtdc);
    sys.ybus = build_admittance(net);
    sys.ydc = dc_network_matrix(mtdc);

    const int nb = sys.layout.n_bus();
    sys.gens_at_bus.resize(nb);
    sys.vscs_at_bus.resize(nb);
    sys.vscs_at_node.resize(sys.layout.n_node());
    sys.p_const.assign(nb, 0.0);
    sys.q_const.assign(nb, 0.0);

    for (int b = 0; b < nb; ++b) {
        sys.p_const[b] -= net.buses[b].p_load;
        sys.q_const[b] -= net.buses[b].q_load;
    }
    for (const auto& f : sys.layout.fixed_injections()) sys.p_const[f.bus] += f.p;
    for (int i = 0; i < sys.layout.n_gen(); ++i) {
        const auto& e = sys.layout.gens()[i];
        sys.gens_at_bus[e.bus].push_back(i);
        if (!e.carries_pg) sys.p_const[e.bus] += e.p_set;
    }
    for (int k = 0; k < sys.layout.n_vsc(); ++k) {
        const auto& e = sys.layout.vscs()[k];
        sys.vscs_at_bus[e.bus].push_back(k);
        sys.vscs_at_node[e.node].push_back(k);
    }
    return sys;
}

SolverState initialize_state(const System& sys) {
    const auto& lay = sys.layout;
    SolverState st;
    st.x.assign(lay.size(), 0.0);

    for (int b = 0; b < lay.n_bus(); ++b) {
        const auto& bus = sys.net->buses[b];
        st.x[lay.theta(b)] = bus.theta_init;
        st.x[lay.v(b)] = bus.v_init > 0.0 ? bus.v_init : 1.0;
    }
    st.gen_mode.assign(lay.n_gen(), GenMode::VoltageControl);
    for (int i = 0; i < lay.n_gen(); ++i) {
        const auto& e = lay.gens()[i];
        st.x[lay.qg(i)] = 0.0;
        if (e.carries_pg) st.x[lay.pg(lay.pg_slot_of(i))] = e.p_set;
    }

    st.vsc_state.assign(lay.n_vsc(), VscLimitState{});
    for (int n = 0; n < lay.n_node(); ++n) st.x[lay.vdc(n)] = sys.mtdc->dc_nodes[n].vdc_init;

    for (int k = 0; k < lay.n_vsc(); ++k) {
        const auto& e = lay.vscs()[k];
        const auto& c = sys.mtdc->converters[e.record];
        const double theta = st.x[lay.theta(e.bus)];
        const double vm = st.x[lay.v(e.bus)];
        const double vsh = std::clamp(1.0, c.vsh_min, c.vsh_max);
        const double psh = c.p_set.value_or(0.0);
        const double qsh = (c.role == VscRole::Primary && c.control_mode == VscControlMode::PQ)
                               ? c.q_set.value_or(0.0)
                               : 0.0;
        st.x[lay.vsc(k, VscVar::ThetaSh)] = theta;
        st.x[lay.vsc(k, VscVar::Vsh)] = vsh;
        st.x[lay.vsc(k, VscVar::Psh)] = psh;
        st.x[lay.vsc(k, VscVar::Qsh)] = qsh;
        st.x[lay.vsc(k, VscVar::Ish)] = ish_magnitude(vm, theta, vsh, theta, e.ysh).i_sh;
        // Lossless first guess for the DC chain: throughput mirrors the AC draw.
        st.x[lay.vsc(k, VscVar::PdcPrime)] = -psh;
        st.x[lay.vsc(k, VscVar::Pdc)] = psh;
    }
    return st;
}

}  // namespace acdc
