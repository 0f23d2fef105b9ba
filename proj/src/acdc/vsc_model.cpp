#include "acdc/vsc_model.hpp"

#include <unordered_map>

namespace acdc {

ShuntPowerFlow shunt_power_flow(double v_m, double theta_m, double v_sh, double theta_sh,
                                const ShuntAdmittance& y) {
    const double d = theta_m - theta_sh;
    const double c = std::cos(d), s = std::sin(d);
    ShuntPowerFlow out;
    out.p = y.g * v_m * v_m - y.g * v_m * v_sh * c - y.b * v_m * v_sh * s;
    out.q = -y.b * v_m * v_m - y.g * v_m * v_sh * s + y.b * v_m * v_sh * c;

    out.dp.d_vm = 2.0 * y.g * v_m - y.g * v_sh * c - y.b * v_sh * s;
    out.dp.d_theta_m = y.g * v_m * v_sh * s - y.b * v_m * v_sh * c;
    out.dp.d_vsh = -y.g * v_m * c - y.b * v_m * s;
    out.dp.d_theta_sh = -out.dp.d_theta_m;

    out.dq.d_vm = -2.0 * y.b * v_m - y.g * v_sh * s + y.b * v_sh * c;
    out.dq.d_theta_m = -y.g * v_m * v_sh * c - y.b * v_m * v_sh * s;
    out.dq.d_vsh = -y.g * v_m * s + y.b * v_m * c;
    out.dq.d_theta_sh = -out.dq.d_theta_m;
    return out;
}

ConverterThroughput converter_throughput(double v_m, double theta_m, double v_sh,
                                         double theta_sh, const ShuntAdmittance& y) {
    const double d = theta_m - theta_sh;
    const double c = std::cos(d), s = std::sin(d);
    ConverterThroughput out;
    out.p_dc_prime = y.g * v_sh * v_sh - y.g * v_m * v_sh * c + y.b * v_m * v_sh * s;
    out.grad.d_vm = -y.g * v_sh * c + y.b * v_sh * s;
    out.grad.d_theta_m = y.g * v_m * v_sh * s + y.b * v_m * v_sh * c;
    out.grad.d_vsh = 2.0 * y.g * v_sh - y.g * v_m * c + y.b * v_m * s;
    out.grad.d_theta_sh = -out.grad.d_theta_m;
    return out;
}

double converter_loss(double a, double b, double c, double i_sh) {
    return a + b * i_sh + c * i_sh * i_sh;
}

double converter_loss_d_ish(double b, double c, double i_sh) { return b + 2.0 * c * i_sh; }

IshMagnitude ish_magnitude(double v_m, double theta_m, double v_sh, double theta_sh,
                           const ShuntAdmittance& y) {
    const double d = theta_m - theta_sh;
    const double c = std::cos(d), s = std::sin(d);
    const double n = v_m * v_m + v_sh * v_sh - 2.0 * v_m * v_sh * c;
    const double root = std::sqrt(std::max(n, 0.0));
    IshMagnitude out;
    out.i_sh = root / y.z_mag;
    // The magnitude has a conical point at v_m == v_sh, theta_m == theta_sh;
    // the gradient is left at zero there.
    if (root > 1e-12) {
        const double inv = 1.0 / (root * y.z_mag);
        out.grad.d_vm = (v_m - v_sh * c) * inv;
        out.grad.d_vsh = (v_sh - v_m * c) * inv;
        out.grad.d_theta_m = v_m * v_sh * s * inv;
        out.grad.d_theta_sh = -out.grad.d_theta_m;
    }
    return out;
}

DcMatrix DcMatrix::build(const MtdcSystem& mtdc) {
    const int n = static_cast<int>(mtdc.dc_nodes.size());
    std::unordered_map<int, int> node_of;
    for (int i = 0; i < n; ++i) node_of[mtdc.dc_nodes[i].id] = i;

    std::vector<double> diag(n, 0.0);
    std::vector<std::vector<std::pair<int, double>>> off(n);
    for (const auto& l : mtdc.dc_lines) {
        if (!(l.r > 0.0)) throw std::invalid_argument("nonpositive DC resistance");
        const int f = node_of.at(l.from);
        const int t = node_of.at(l.to);
        const double y = 1.0 / l.r;
        diag[f] += y;
        diag[t] += y;
        off[f].emplace_back(t, -y);
        off[t].emplace_back(f, -y);
    }

    DcMatrix m;
    m.row_start_.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        auto& r = off[i];
        r.emplace_back(i, diag[i]);
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        size_t out = 0;
        for (size_t k = 0; k < r.size(); ++k) {
            if (out > 0 && r[out - 1].first == r[k].first) {
                r[out - 1].second += r[k].second;
            } else {
                r[out++] = r[k];
            }
        }
        r.resize(out);
        for (const auto& [col, y] : r) m.entries_.push_back({col, y});
        m.row_start_[i + 1] = static_cast<int>(m.entries_.size());
    }
    return m;
}

std::vector<double> dc_node_balance(const std::vector<double>& p_dc,
                                    const std::vector<double>& v_dc, const DcMatrix& y) {
    std::vector<double> g(v_dc.size(), 0.0);
    for (int m = 0; m < y.size(); ++m) {
        if (v_dc[m] == 0.0) throw std::domain_error("zero DC voltage at node index " +
                                                    std::to_string(m));
        double net = p_dc[m] / v_dc[m];
        for (const auto& e : y.row(m)) net -= e.y * v_dc[e.col];
        g[m] = net;
    }
    return g;
}

}  // namespace acdc
