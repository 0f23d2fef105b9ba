#pragma once

#include <vector>

#include "acdc/types.hpp"
#include "acdc/vsc_model.hpp"

namespace acdc {

/// Variable block of one converter. Appears in this order per converter.
enum class VscVar { ThetaSh = 0, Vsh, Psh, Qsh, PdcPrime, Pdc, Ish };

/// Equation block of one converter. CtrlA is the slot released second
/// (active power / DC voltage), CtrlB the slot released first (reactive
/// power / AC voltage).
enum class VscRow { Psh = 0, Qsh, CtrlA, CtrlB, PdcPrime, Loss, Ish };

constexpr int kVscBlock = 7;

/// A generator carrying a reactive-power variable paired with a voltage row.
/// The designated machine of each slack bus additionally carries the active
/// power variable paired with the angle row.
struct GenEntry {
    int record = 0;  // index into NetworkCase::generators
    int bus = 0;     // internal bus index
    double p_set = 0.0;
    double v_set = 1.0;
    double q_min = 0.0;
    double q_max = 0.0;
    bool at_slack = false;   // slack machines ride free of reactive limits
    bool carries_pg = false;
    double theta_set = 0.0;  // angle target, pg carriers only
};

struct VscEntry {
    int record = 0;  // index into MtdcSystem::converters
    int bus = 0;     // internal AC bus index
    int node = 0;    // internal DC node index
    ShuntAdmittance ysh;
};

/// An in-service generator at a PQ-type bus contributes a fixed injection.
struct FixedInjection {
    int bus = 0;
    double p = 0.0;
};

/// Bijection between named quantities and solution-vector indices. Equation
/// rows mirror the variable columns so the assembled system is square by
/// construction.
class VariableLayout {
public:
    static VariableLayout build(const NetworkCase& net, const MtdcSystem& mtdc);

    int n_bus() const { return n_bus_; }
    int n_gen() const { return static_cast<int>(gens_.size()); }
    int n_pg() const { return n_pg_; }
    int n_vsc() const { return static_cast<int>(vscs_.size()); }
    int n_node() const { return n_node_; }
    int size() const { return size_; }

    const std::vector<GenEntry>& gens() const { return gens_; }
    const std::vector<VscEntry>& vscs() const { return vscs_; }
    const std::vector<FixedInjection>& fixed_injections() const { return fixed_; }

    // Variable columns.
    int theta(int bus) const { return bus; }
    int v(int bus) const { return n_bus_ + bus; }
    int qg(int gen_slot) const { return 2 * n_bus_ + gen_slot; }
    int pg(int pg_slot) const { return 2 * n_bus_ + n_gen() + pg_slot; }
    int vsc(int vsc_slot, VscVar which) const {
        return vsc_base_ + kVscBlock * vsc_slot + static_cast<int>(which);
    }
    int vdc(int node) const { return vsc_base_ + kVscBlock * n_vsc() + node; }

    // Equation rows (same block arrangement).
    int row_p(int bus) const { return bus; }
    int row_q(int bus) const { return n_bus_ + bus; }
    int row_v(int gen_slot) const { return 2 * n_bus_ + gen_slot; }
    int row_theta(int pg_slot) const { return 2 * n_bus_ + n_gen() + pg_slot; }
    int row_vsc(int vsc_slot, VscRow which) const {
        return vsc_base_ + kVscBlock * vsc_slot + static_cast<int>(which);
    }
    int row_dc(int node) const { return vsc_base_ + kVscBlock * n_vsc() + node; }

    /// pg slot of a gen slot, -1 when the generator does not carry Pg.
    int pg_slot_of(int gen_slot) const { return pg_slot_of_[gen_slot]; }

private:
    int n_bus_ = 0;
    int n_pg_ = 0;
    int n_node_ = 0;
    int vsc_base_ = 0;
    int size_ = 0;
    std::vector<GenEntry> gens_;
    std::vector<VscEntry> vscs_;
    std::vector<FixedInjection> fixed_;
    std::vector<int> pg_slot_of_;
};

inline VariableLayout build_layout(const NetworkCase& net, const MtdcSystem& mtdc) {
    return VariableLayout::build(net, mtdc);
}

}  // namespace acdc
