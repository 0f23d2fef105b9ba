#include "acdc/vsc_mtdc.hpp"

#include <cmath>

namespace acdc {

namespace {

struct SlotTargets {
    int a_col = 0;  // active power / DC voltage control column
    int b_col = 0;  // reactive power / AC voltage control column
    double a_set = 0.0;
    double b_set = 0.0;
};

SlotTargets slot_targets(const System& sys, int k) {
    const auto& lay = sys.layout;
    const auto& e = lay.vscs()[k];
    const auto& c = sys.mtdc->converters[e.record];
    SlotTargets t;
    if (c.role == VscRole::Primary) {
        t.a_col = lay.vsc(k, VscVar::Psh);
        t.a_set = c.p_set.value_or(0.0);
        if (c.control_mode == VscControlMode::PQ) {
            t.b_col = lay.vsc(k, VscVar::Qsh);
            t.b_set = c.q_set.value_or(0.0);
        } else {
            t.b_col = lay.v(e.bus);
            t.b_set = c.v_set.value_or(1.0);
        }
    } else {
        t.a_col = lay.vdc(e.node);
        t.a_set = c.vdc_set.value_or(1.0);
        t.b_col = lay.v(e.bus);
        t.b_set = c.v_set.value_or(1.0);
    }
    return t;
}

double pin_bound(const VscRecord& c, VscPin pin) {
    switch (pin) {
        case VscPin::VshAtMax: return c.vsh_max;
        case VscPin::VshAtMin: return c.vsh_min;
        case VscPin::IshAtMax: return c.ish_max;
        case VscPin::None: break;
    }
    return 0.0;
}

const char* pin_name(VscPin pin) {
    switch (pin) {
        case VscPin::VshAtMax: return "Vsh at max";
        case VscPin::VshAtMin: return "Vsh at min";
        case VscPin::IshAtMax: return "Ish at max";
        case VscPin::None: break;
    }
    return "";
}

}  // namespace

void vsc_residual(const System& sys, const SolverState& st, std::vector<double>& g) {
    const auto& lay = sys.layout;
    const auto& x = st.x;

    for (int k = 0; k < lay.n_vsc(); ++k) {
        const auto& e = lay.vscs()[k];
        const auto& c = sys.mtdc->converters[e.record];
        const auto& lim = st.vsc_state[k];
        const double vm = x[lay.v(e.bus)];
        const double thm = x[lay.theta(e.bus)];
        const double vsh = x[lay.vsc(k, VscVar::Vsh)];
        const double tsh = x[lay.vsc(k, VscVar::ThetaSh)];
        const double psh = x[lay.vsc(k, VscVar::Psh)];
        const double qsh = x[lay.vsc(k, VscVar::Qsh)];
        const double pdcp = x[lay.vsc(k, VscVar::PdcPrime)];
        const double pdc = x[lay.vsc(k, VscVar::Pdc)];
        const double ish = x[lay.vsc(k, VscVar::Ish)];

        const auto flow = shunt_power_flow(vm, thm, vsh, tsh, e.ysh);
        const auto thru = converter_throughput(vm, thm, vsh, tsh, e.ysh);
        const auto imag = ish_magnitude(vm, thm, vsh, tsh, e.ysh);

        g[lay.row_vsc(k, VscRow::Psh)] += flow.p - psh;
        g[lay.row_vsc(k, VscRow::Qsh)] += flow.q - qsh;
        g[lay.row_vsc(k, VscRow::PdcPrime)] += thru.p_dc_prime - pdcp;
        // Net DC injection: pdc = -pdc' - loss, so senders inject positive
        // power into the DC network and the node balances conserve energy.
        g[lay.row_vsc(k, VscRow::Loss)] +=
            pdc + pdcp + converter_loss(c.loss_a, c.loss_b, c.loss_c, ish);
        g[lay.row_vsc(k, VscRow::Ish)] += ish - imag.i_sh;

        const SlotTargets t = slot_targets(sys, k);
        const double ga = lim.slot_a_released()
                              ? (lim.slot_a == VscPin::IshAtMax ? ish : vsh) -
                                    pin_bound(c, lim.slot_a)
                              : x[t.a_col] - t.a_set;
        const double gb = lim.slot_b_released()
                              ? (lim.slot_b == VscPin::IshAtMax ? ish : vsh) -
                                    pin_bound(c, lim.slot_b)
                              : x[t.b_col] - t.b_set;
        g[lay.row_vsc(k, VscRow::CtrlA)] += ga;
        g[lay.row_vsc(k, VscRow::CtrlB)] += gb;

        // Converter draw counts as load on the AC bus.
        g[lay.row_p(e.bus)] -= psh;
        g[lay.row_q(e.bus)] -= qsh;
    }

    for (int n = 0; n < lay.n_node(); ++n) {
        const double vdc = x[lay.vdc(n)];
        double r = 0.0;
        for (int k : sys.vscs_at_node[n]) r += x[lay.vsc(k, VscVar::Pdc)];
        r /= vdc;
        for (const auto& e : sys.ydc.row(n)) r -= e.y * x[lay.vdc(e.col)];
        g[lay.row_dc(n)] += r;
    }
}

void vsc_jacobian(const System& sys, const SolverState& st, FixedPatternMatrix& jac) {
    const auto& lay = sys.layout;
    const auto& x = st.x;

    for (int k = 0; k < lay.n_vsc(); ++k) {
        const auto& e = lay.vscs()[k];
        const auto& c = sys.mtdc->converters[e.record];
        const auto& lim = st.vsc_state[k];
        const double vm = x[lay.v(e.bus)];
        const double thm = x[lay.theta(e.bus)];
        const double vsh = x[lay.vsc(k, VscVar::Vsh)];
        const double tsh = x[lay.vsc(k, VscVar::ThetaSh)];
        const double ish = x[lay.vsc(k, VscVar::Ish)];

        const int col_vm = lay.v(e.bus), col_thm = lay.theta(e.bus);
        const int col_vsh = lay.vsc(k, VscVar::Vsh), col_tsh = lay.vsc(k, VscVar::ThetaSh);
        const int col_psh = lay.vsc(k, VscVar::Psh), col_qsh = lay.vsc(k, VscVar::Qsh);
        const int col_pdcp = lay.vsc(k, VscVar::PdcPrime), col_pdc = lay.vsc(k, VscVar::Pdc);
        const int col_ish = lay.vsc(k, VscVar::Ish);

        auto add_terminal = [&](int row, const TerminalGrad& gr, double sign) {
            jac.add(row, col_vm, sign * gr.d_vm);
            jac.add(row, col_thm, sign * gr.d_theta_m);
            jac.add(row, col_vsh, sign * gr.d_vsh);
            jac.add(row, col_tsh, sign * gr.d_theta_sh);
        };

        const auto flow = shunt_power_flow(vm, thm, vsh, tsh, e.ysh);
        const auto thru = converter_throughput(vm, thm, vsh, tsh, e.ysh);
        const auto imag = ish_magnitude(vm, thm, vsh, tsh, e.ysh);

        const int r_psh = lay.row_vsc(k, VscRow::Psh);
        add_terminal(r_psh, flow.dp, 1.0);
        jac.add(r_psh, col_psh, -1.0);

        const int r_qsh = lay.row_vsc(k, VscRow::Qsh);
        add_terminal(r_qsh, flow.dq, 1.0);
        jac.add(r_qsh, col_qsh, -1.0);

        const int r_thru = lay.row_vsc(k, VscRow::PdcPrime);
        add_terminal(r_thru, thru.grad, 1.0);
        jac.add(r_thru, col_pdcp, -1.0);

        const int r_loss = lay.row_vsc(k, VscRow::Loss);
        jac.add(r_loss, col_pdc, 1.0);
        jac.add(r_loss, col_pdcp, 1.0);
        jac.add(r_loss, col_ish, converter_loss_d_ish(c.loss_b, c.loss_c, ish));

        const int r_ish = lay.row_vsc(k, VscRow::Ish);
        jac.add(r_ish, col_ish, 1.0);
        add_terminal(r_ish, imag.grad, -1.0);

        // Control slots: the target entry, plus structurally allocated pin
        // positions on Vsh and Ish so releases stay value-only.
        const SlotTargets t = slot_targets(sys, k);
        const int r_a = lay.row_vsc(k, VscRow::CtrlA);
        jac.add(r_a, t.a_col, lim.slot_a_released() ? 0.0 : 1.0);
        jac.add(r_a, col_vsh,
                lim.slot_a == VscPin::VshAtMax || lim.slot_a == VscPin::VshAtMin ? 1.0 : 0.0);
        jac.add(r_a, col_ish, lim.slot_a == VscPin::IshAtMax ? 1.0 : 0.0);

        const int r_b = lay.row_vsc(k, VscRow::CtrlB);
        jac.add(r_b, t.b_col, lim.slot_b_released() ? 0.0 : 1.0);
        jac.add(r_b, col_vsh,
                lim.slot_b == VscPin::VshAtMax || lim.slot_b == VscPin::VshAtMin ? 1.0 : 0.0);
        jac.add(r_b, col_ish, lim.slot_b == VscPin::IshAtMax ? 1.0 : 0.0);

        jac.add(lay.row_p(e.bus), col_psh, -1.0);
        jac.add(lay.row_q(e.bus), col_qsh, -1.0);
    }

    for (int n = 0; n < lay.n_node(); ++n) {
        const double vdc = x[lay.vdc(n)];
        const int row = lay.row_dc(n);
        double pdc_sum = 0.0;
        for (int k : sys.vscs_at_node[n]) {
            pdc_sum += x[lay.vsc(k, VscVar::Pdc)];
            jac.add(row, lay.vsc(k, VscVar::Pdc), 1.0 / vdc);
        }
        for (const auto& e : sys.ydc.row(n)) {
            double v = -e.y;
            if (e.col == n) v -= pdc_sum / (vdc * vdc);
            jac.add(row, lay.vdc(e.col), v);
        }
    }
}

std::vector<LimitEvent> vsc_limit_update(const System& sys, SolverState& st, int iteration) {
    const auto& lay = sys.layout;
    std::vector<LimitEvent> events;

    for (int k = 0; k < lay.n_vsc(); ++k) {
        const auto& e = lay.vscs()[k];
        const auto& c = sys.mtdc->converters[e.record];
        auto& lim = st.vsc_state[k];
        if (lim.stage == VscStage::SecondReleased) continue;

        const double vsh = st.x[lay.vsc(k, VscVar::Vsh)];
        const double ish = st.x[lay.vsc(k, VscVar::Ish)];
        VscPin vsh_pin = VscPin::None;
        if (vsh > c.vsh_max)
            vsh_pin = VscPin::VshAtMax;
        else if (vsh < c.vsh_min)
            vsh_pin = VscPin::VshAtMin;
        const bool ish_over = ish > c.ish_max;

        VscPin pin = VscPin::None;
        if (lim.stage == VscStage::AllControlsActive) {
            pin = vsh_pin != VscPin::None ? vsh_pin : (ish_over ? VscPin::IshAtMax : VscPin::None);
        } else {
            // Only the other limit family can trigger the second release.
            const bool first_was_ish = lim.slot_b == VscPin::IshAtMax;
            if (first_was_ish) {
                pin = vsh_pin;
                // With the current pinned and active power still committed, a
                // bound that cannot carry |p_set| locks an infeasible branch;
                // pin at the bound whose current rating covers the setpoint.
                if (pin == VscPin::VshAtMin && c.role == VscRole::Primary && c.p_set &&
                    c.vsh_min * c.ish_max < std::abs(*c.p_set) &&
                    c.vsh_max * c.ish_max >= std::abs(*c.p_set)) {
                    pin = VscPin::VshAtMax;
                }
            } else if (ish_over) {
                pin = VscPin::IshAtMax;
            }
        }
        if (pin == VscPin::None) continue;

        if (pin == VscPin::IshAtMax)
            st.x[lay.vsc(k, VscVar::Ish)] = c.ish_max;
        else
            st.x[lay.vsc(k, VscVar::Vsh)] = pin_bound(c, pin);

        const char* slot;
        if (lim.stage == VscStage::AllControlsActive) {
            lim.slot_b = pin;
            lim.stage = VscStage::FirstReleased;
            slot = c.role == VscRole::Secondary
                       ? "AC voltage control released"
                       : (c.control_mode == VscControlMode::PQ ? "Q control released"
                                                               : "AC voltage control released");
        } else {
            lim.slot_a = pin;
            lim.stage = VscStage::SecondReleased;
            slot = c.role == VscRole::Secondary ? "DC voltage control released"
                                                : "P control released";
        }
        events.push_back({iteration, "VSC " + std::to_string(c.id) + ": " + pin_name(pin) + " " +
                                         std::to_string(pin_bound(c, pin)) + ", " + slot});
    }
    return events;
}

}  // namespace acdc
