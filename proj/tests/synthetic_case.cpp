#include "synthetic_case.hpp"

#include <cmath>

#include "acdc/newton.hpp"

namespace acdc::test {

NetworkCase synthetic_grid_case(int n_buses) {
    const int cols = static_cast<int>(std::sqrt(static_cast<double>(n_buses)));
    const int rows = n_buses / cols;  // grid part; the remainder hangs as a chain
    const int grid = rows * cols;

    NetworkCase net;
    net.base_mva = 100.0;
    net.buses.reserve(n_buses);
    const int gen_stride = 24;
    for (int b = 0; b < n_buses; ++b) {
        BusRecord bus;
        bus.id = b + 1;
        bus.kind = b == 0 ? BusKind::Slack
                          : (b % gen_stride == 0 ? BusKind::PV : BusKind::PQ);
        bus.v_init = 1.0;
        bus.theta_init = 0.0;
        bus.p_load = 0.02;
        bus.q_load = 0.006;
        bus.base_kv = 345.0;
        net.buses.push_back(bus);
    }

    auto link = [&net](int a, int b) {
        BranchRecord br;
        br.from = a + 1;
        br.to = b + 1;
        br.r = 0.004;
        br.x = 0.02;
        br.b_charging = 0.001;
        net.branches.push_back(br);
    };
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int b = r * cols + c;
            if (c + 1 < cols) link(b, b + 1);
            if (r + 1 < rows) link(b, b + cols);
        }
    }
    for (int b = grid; b < n_buses; ++b) link(b - 1, b);

    double total_load = 0.0;
    int n_gens = 0;
    for (const auto& bus : net.buses) {
        total_load += bus.p_load;
        if (bus.kind != BusKind::PQ) ++n_gens;
    }
    for (int b = 0; b < n_buses; ++b) {
        if (net.buses[b].kind == BusKind::PQ) continue;
        GeneratorRecord g;
        g.bus = b + 1;
        g.p_set = total_load * 1.02 / n_gens;
        g.v_set = 1.02;
        g.q_min = -2.0;
        g.q_max = 2.0;
        net.generators.push_back(g);
    }
    return net;
}

MtdcSystem synthetic_overlay(const NetworkCase& net, int n_terminals) {
    // The secondary pins its AC bus voltage, so the setpoint comes from the
    // solved base case rather than a guess.
    SolverOptions opt;
    opt.qlim_enforcement = false;
    const MtdcSystem no_overlay;
    const Solution base = newton_solve(net, no_overlay, opt);

    MtdcSystem m;
    const int n = static_cast<int>(net.buses.size());
    const int spacing = n / (n_terminals + 1);
    int placed = 0;
    for (int b = spacing; b < n && placed < n_terminals; b += spacing) {
        // Stick to plain load buses.
        int pick = b;
        while (net.buses[pick].kind != BusKind::PQ) ++pick;
        VscRecord c;
        c.id = placed + 1;
        c.ac_bus = net.buses[pick].id;
        c.dc_node = placed + 1;
        c.rsh = 0.002;
        c.xsh = 0.1;
        c.vsh_min = 0.8;
        c.vsh_max = 1.2;
        c.ish_max = 2.0;
        if (placed < n_terminals - 1) {
            c.role = VscRole::Primary;
            c.control_mode = VscControlMode::PQ;
            c.p_set = 0.05;
            c.q_set = 0.01;
        } else {
            c.role = VscRole::Secondary;
            c.v_set = base.converged() ? base.buses[pick].v : 1.0;
            c.vdc_set = 1.0;
        }
        m.converters.push_back(c);
        m.dc_nodes.push_back({placed + 1, 1.0});
        ++placed;
    }
    for (int k = 0; k < n_terminals; ++k) {
        m.dc_lines.push_back({k + 1, (k + 1) % n_terminals + 1, 0.05});
    }
    return m;
}

}  // namespace acdc::test
