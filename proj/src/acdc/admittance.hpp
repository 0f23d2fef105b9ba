#pragma once

#include <complex>
#include <span>
#include <vector>

#include "acdc/types.hpp"

namespace acdc {

/// Bus admittance matrix in compressed-row form over internal bus indices.
/// The sparsity pattern is symmetric; parallel branches are merged.
class AdmittanceMatrix {
public:
    struct Entry {
        int col;
        double g;
        double b;
    };

    int size() const { return static_cast<int>(row_start_.size()) - 1; }
    std::span<const Entry> row(int i) const {
        return {entries_.data() + row_start_[i], entries_.data() + row_start_[i + 1]};
    }
    int nnz() const { return static_cast<int>(entries_.size()); }

    std::complex<double> at(int i, int j) const {
        for (const auto& e : row(i))
            if (e.col == j) return {e.g, e.b};
        return {0.0, 0.0};
    }

    static AdmittanceMatrix build(const NetworkCase& net);

private:
    std::vector<int> row_start_;
    std::vector<Entry> entries_;
};

/// Builds the bus admittance matrix including branch series elements, line
/// charging, off-nominal taps, phase shifts and bus shunts. Throws on an
/// in-service branch with zero impedance.
inline AdmittanceMatrix build_admittance(const NetworkCase& net) {
    return AdmittanceMatrix::build(net);
}

}  // namespace acdc
