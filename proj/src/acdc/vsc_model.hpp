#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "acdc/types.hpp"

namespace acdc {

/// Partial derivatives of one converter quantity with respect to the four
/// terminal variables that drive it.
struct TerminalGrad {
    double d_vm = 0.0;
    double d_theta_m = 0.0;
    double d_vsh = 0.0;
    double d_theta_sh = 0.0;
};

/// Series admittance of the coupling transformer, gsh + j*bsh = 1/(rsh + j*xsh).
struct ShuntAdmittance {
    double g = 0.0;
    double b = 0.0;
    double z_mag = 0.0;

    static ShuntAdmittance from_impedance(double rsh, double xsh) {
        const double z2 = rsh * rsh + xsh * xsh;
        if (z2 <= 0.0) throw std::invalid_argument("coupling impedance must be nonzero");
        return {rsh / z2, -xsh / z2, std::sqrt(z2)};
    }
};

/// Active/reactive power injection from the AC bus into the coupling
/// transformer, as a function of the two terminal voltage phasors.
struct ShuntPowerFlow {
    double p = 0.0;
    double q = 0.0;
    TerminalGrad dp;
    TerminalGrad dq;
};

ShuntPowerFlow shunt_power_flow(double v_m, double theta_m, double v_sh, double theta_sh,
                                const ShuntAdmittance& y);

/// Active power through the converter (the DC-side throughput before
/// converter losses). Satisfies p_sh + p_dc_prime == rsh * i_sh^2.
struct ConverterThroughput {
    double p_dc_prime = 0.0;
    TerminalGrad grad;
};

ConverterThroughput converter_throughput(double v_m, double theta_m, double v_sh,
                                         double theta_sh, const ShuntAdmittance& y);

/// Converter loss p_loss = a + b*i_sh + c*i_sh^2.
double converter_loss(double a, double b, double c, double i_sh);
double converter_loss_d_ish(double b, double c, double i_sh);

/// Current magnitude through the coupling transformer.
struct IshMagnitude {
    double i_sh = 0.0;
    TerminalGrad grad;
};

IshMagnitude ish_magnitude(double v_m, double theta_m, double v_sh, double theta_sh,
                           const ShuntAdmittance& y);

/// DC conductance matrix over internal node indices, compressed rows.
/// Diagonal holds the sum of incident line conductances, off-diagonals -1/r.
class DcMatrix {
public:
    struct Entry {
        int col;
        double y;
    };

    int size() const { return static_cast<int>(row_start_.size()) - 1; }
    std::span<const Entry> row(int i) const {
        return {entries_.data() + row_start_[i], entries_.data() + row_start_[i + 1]};
    }
    double at(int i, int j) const {
        for (const auto& e : row(i))
            if (e.col == j) return e.y;
        return 0.0;
    }

    static DcMatrix build(const MtdcSystem& mtdc);

private:
    std::vector<int> row_start_;
    std::vector<Entry> entries_;
};

inline DcMatrix dc_network_matrix(const MtdcSystem& mtdc) { return DcMatrix::build(mtdc); }

/// Per-node DC current balance residuals g[m] = p_dc[m]/v_dc[m] - sum_n Y[m][n]*v_dc[n].
std::vector<double> dc_node_balance(const std::vector<double>& p_dc,
                                    const std::vector<double>& v_dc, const DcMatrix& y);

/// Which control slot of a converter is replaced by a limit pin.
enum class VscPin { None, VshAtMax, VshAtMin, IshAtMax };

enum class VscStage { AllControlsActive, FirstReleased, SecondReleased };

/// Latched per-converter limit state. Slot B (reactive power or AC voltage
/// control) is released first, slot A (active power or DC voltage control)
/// second. Pins are value-only row rewrites; the matrix pattern is fixed.
struct VscLimitState {
    VscStage stage = VscStage::AllControlsActive;
    VscPin slot_b = VscPin::None;
    VscPin slot_a = VscPin::None;

    bool slot_b_released() const { return slot_b != VscPin::None; }
    bool slot_a_released() const { return slot_a != VscPin::None; }
};

}  // namespace acdc
