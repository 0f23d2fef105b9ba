#include "acdc/ac_network.hpp"

#include <algorithm>
#include <cmath>

namespace acdc {

BusPower bus_injection(const System& sys, const std::vector<double>& x, int bus) {
    const auto& lay = sys.layout;
    const double vm = x[lay.v(bus)];
    const double th = x[lay.theta(bus)];
    BusPower out;
    for (const auto& e : sys.ybus.row(bus)) {
        const double vn = x[lay.v(e.col)];
        const double d = th - x[lay.theta(e.col)];
        const double cs = std::cos(d), sn = std::sin(d);
        out.p += vm * vn * (e.g * cs + e.b * sn);
        out.q += vm * vn * (e.g * sn - e.b * cs);
    }
    return out;
}

void ac_residual(const System& sys, const SolverState& st, std::vector<double>& g) {
    const auto& lay = sys.layout;
    const auto& x = st.x;

    for (int b = 0; b < lay.n_bus(); ++b) {
        const BusPower s = bus_injection(sys, x, b);
        g[lay.row_p(b)] += sys.p_const[b] - s.p;
        g[lay.row_q(b)] += sys.q_const[b] - s.q;
    }

    for (int i = 0; i < lay.n_gen(); ++i) {
        const auto& e = lay.gens()[i];
        g[lay.row_q(e.bus)] += x[lay.qg(i)];
        double r = 0.0;
        switch (st.gen_mode[i]) {
            case GenMode::VoltageControl:
                r = x[lay.v(e.bus)] - e.v_set + kEpsilonReg * x[lay.qg(i)];
                break;
            case GenMode::QAtMax: r = x[lay.qg(i)] - e.q_max; break;
            case GenMode::QAtMin: r = x[lay.qg(i)] - e.q_min; break;
        }
        g[lay.row_v(i)] += r;
        if (e.carries_pg) {
            const int s = lay.pg_slot_of(i);
            g[lay.row_p(e.bus)] += x[lay.pg(s)];
            g[lay.row_theta(s)] += x[lay.theta(e.bus)] - e.theta_set + kEpsilonReg * x[lay.pg(s)];
        }
    }
}

void ac_jacobian(const System& sys, const SolverState& st, FixedPatternMatrix& jac) {
    const auto& lay = sys.layout;
    const auto& x = st.x;

    for (int b = 0; b < lay.n_bus(); ++b) {
        const double vm = x[lay.v(b)];
        const double th = x[lay.theta(b)];
        const int rp = lay.row_p(b), rq = lay.row_q(b);
        double p_sum = 0.0, q_sum = 0.0, gmm = 0.0, bmm = 0.0;
        for (const auto& e : sys.ybus.row(b)) {
            const double vn = x[lay.v(e.col)];
            const double d = th - x[lay.theta(e.col)];
            const double cs = std::cos(d), sn = std::sin(d);
            const double t1 = vm * vn * (e.g * cs + e.b * sn);
            const double t2 = vm * vn * (e.g * sn - e.b * cs);
            p_sum += t1;
            q_sum += t2;
            if (e.col == b) {
                gmm = e.g;
                bmm = e.b;
                continue;
            }
            // Residual is scheduled minus calculated: negate the power partials.
            jac.add(rp, lay.theta(e.col), -t2);
            jac.add(rp, lay.v(e.col), -t1 / vn);
            jac.add(rq, lay.theta(e.col), t1);
            jac.add(rq, lay.v(e.col), -t2 / vn);
        }
        jac.add(rp, lay.theta(b), q_sum + bmm * vm * vm);
        jac.add(rp, lay.v(b), -(p_sum / vm + gmm * vm));
        jac.add(rq, lay.theta(b), -(p_sum - gmm * vm * vm));
        jac.add(rq, lay.v(b), -(q_sum / vm - bmm * vm));
    }

    for (int i = 0; i < lay.n_gen(); ++i) {
        const auto& e = lay.gens()[i];
        jac.add(lay.row_q(e.bus), lay.qg(i), 1.0);
        const bool vc = st.gen_mode[i] == GenMode::VoltageControl;
        jac.add(lay.row_v(i), lay.v(e.bus), vc ? 1.0 : 0.0);
        jac.add(lay.row_v(i), lay.qg(i), vc ? kEpsilonReg : 1.0);
        if (e.carries_pg) {
            const int s = lay.pg_slot_of(i);
            jac.add(lay.row_p(e.bus), lay.pg(s), 1.0);
            jac.add(lay.row_theta(s), lay.theta(e.bus), 1.0);
            jac.add(lay.row_theta(s), lay.pg(s), kEpsilonReg);
        }
    }
}

std::vector<LimitEvent> pv_limit_update(const System& sys, SolverState& st, int iteration,
                                        int budget) {
    const auto& lay = sys.layout;
    std::vector<LimitEvent> events;

    struct Violation {
        double amount;
        int slot;
        GenMode target;
    };
    std::vector<Violation> violations;
    for (int i = 0; i < lay.n_gen(); ++i) {
        if (st.gen_mode[i] != GenMode::VoltageControl) continue;
        const auto& e = lay.gens()[i];
        if (e.at_slack) continue;
        const double qv = st.x[lay.qg(i)];
        if (qv > e.q_max) {
            violations.push_back({qv - e.q_max, i, GenMode::QAtMax});
        } else if (qv < e.q_min) {
            violations.push_back({e.q_min - qv, i, GenMode::QAtMin});
        }
    }
    std::stable_sort(violations.begin(), violations.end(),
                     [](const Violation& a, const Violation& b) { return a.amount > b.amount; });
    const int n_swap = std::min<int>(budget, static_cast<int>(violations.size()));
    for (int v = 0; v < n_swap; ++v) {
        const auto& viol = violations[v];
        const auto& e = lay.gens()[viol.slot];
        const bool at_max = viol.target == GenMode::QAtMax;
        st.gen_mode[viol.slot] = viol.target;
        st.x[lay.qg(viol.slot)] = at_max ? e.q_max : e.q_min;
        events.push_back({iteration, "generator at bus " + std::to_string(sys.net->buses[e.bus].id) +
                                         ": Q pinned at " + (at_max ? "max " : "min ") +
                                         std::to_string(at_max ? e.q_max : e.q_min)});
    }

    // Back-off: a pinned machine returns to voltage control once its bus
    // voltage passes the setpoint in the relieving direction.
    for (int i = 0; i < lay.n_gen(); ++i) {
        const auto& e = lay.gens()[i];
        const double vm = st.x[lay.v(e.bus)];
        const bool release = (st.gen_mode[i] == GenMode::QAtMax && vm > e.v_set) ||
                             (st.gen_mode[i] == GenMode::QAtMin && vm < e.v_set);
        if (release) {
            st.gen_mode[i] = GenMode::VoltageControl;
            events.push_back({iteration, "generator at bus " +
                                             std::to_string(sys.net->buses[e.bus].id) +
                                             ": Q limit released, back to voltage control"});
        }
    }
    return events;
}

}  // namespace acdc
