#pragma once

#include <cmath>

#include "acdc/newton.hpp"

namespace acdc::test {

struct FdReport {
    double max_rel_err = 0.0;   // over analytic entries with |a| > 1e-8
    int significant_missing = 0;  // |fd| > 1e-6 where the analytic side has none
};

/// Central finite differences of the full residual against the assembled
/// Jacobian, step h, dense sweep.
inline FdReport fd_compare(const System& sys, SolverState st, double h = 1e-7) {
    FixedPatternMatrix jac(sys.layout.size());
    assemble_jacobian(sys, st, jac);
    FdReport rep;
    const int n = sys.layout.size();
    for (int col = 0; col < n; ++col) {
        const double saved = st.x[col];
        st.x[col] = saved + h;
        const auto hi = eval_residual(sys, st);
        st.x[col] = saved - h;
        const auto lo = eval_residual(sys, st);
        st.x[col] = saved;
        for (int row = 0; row < n; ++row) {
            const double fd = (hi[row] - lo[row]) / (2.0 * h);
            const double an = jac.at(row, col);
            if (std::abs(an) > 1e-8) {
                const double rel = std::abs(an - fd) / std::max(std::abs(an), 1.0);
                rep.max_rel_err = std::max(rep.max_rel_err, rel);
            } else if (std::abs(fd) > 1e-6) {
                ++rep.significant_missing;
            }
        }
    }
    return rep;
}

}  // namespace acdc::test
