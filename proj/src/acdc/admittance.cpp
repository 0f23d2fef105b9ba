#include "acdc/admittance.hpp"

#include <algorithm>
#include <unordered_map>

namespace acdc {

AdmittanceMatrix AdmittanceMatrix::build(const NetworkCase& net) {
    const int n = static_cast<int>(net.buses.size());
    std::unordered_map<int, int> bus_of;
    bus_of.reserve(net.buses.size() * 2);
    for (int i = 0; i < n; ++i) bus_of[net.buses[i].id] = i;

    using cx = std::complex<double>;
    std::vector<std::vector<std::pair<int, cx>>> rows(n);
    auto add = [&rows](int i, int j, cx y) { rows[i].emplace_back(j, y); };

    for (const auto& br : net.branches) {
        if (!br.in_service) continue;
        if (br.r == 0.0 && br.x == 0.0)
            throw std::invalid_argument("in-service branch " + std::to_string(br.from) + "-" +
                                        std::to_string(br.to) + " has zero impedance");
        const int f = bus_of.at(br.from);
        const int t = bus_of.at(br.to);
        const cx ys = 1.0 / cx(br.r, br.x);
        const cx ych(0.0, br.b_charging / 2.0);
        const double tau = br.tap;
        const cx shift = std::polar(1.0, br.shift);
        // Off-nominal tap on the from side, MATPOWER convention.
        add(f, f, (ys + ych) / (tau * tau));
        add(f, t, -ys / (tau * std::conj(shift)));
        add(t, f, -ys / (tau * shift));
        add(t, t, ys + ych);
    }
    for (int i = 0; i < n; ++i) add(i, i, cx(net.buses[i].g_shunt, net.buses[i].b_shunt));

    AdmittanceMatrix m;
    m.row_start_.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        auto& r = rows[i];
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        // Merge duplicates (parallel branches, shunt on an existing diagonal).
        size_t out = 0;
        for (size_t k = 0; k < r.size(); ++k) {
            if (out > 0 && r[out - 1].first == r[k].first) {
                r[out - 1].second += r[k].second;
            } else {
                r[out++] = r[k];
            }
        }
        r.resize(out);
        for (const auto& [col, y] : r) m.entries_.push_back({col, y.real(), y.imag()});
        m.row_start_[i + 1] = static_cast<int>(m.entries_.size());
    }
    return m;
}

}  // namespace acdc
