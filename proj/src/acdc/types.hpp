#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace acdc {

enum class BusKind { PQ, PV, Slack };

/// AC bus. Powers and voltages are per-unit on the case base; angles in radians.
struct BusRecord {
    int id = 0;
    BusKind kind = BusKind::PQ;
    double v_init = 1.0;
    double theta_init = 0.0;
    double p_load = 0.0;
    double q_load = 0.0;
    double g_shunt = 0.0;
    double b_shunt = 0.0;
    double base_kv = 0.0;

    bool operator==(const BusRecord&) const = default;
};

struct GeneratorRecord {
    int bus = 0;
    double p_set = 0.0;
    double v_set = 1.0;
    double q_min = 0.0;
    double q_max = 0.0;
    bool in_service = true;

    bool operator==(const GeneratorRecord&) const = default;
};

struct BranchRecord {
    int from = 0;
    int to = 0;
    double r = 0.0;
    double x = 0.0;
    double b_charging = 0.0;
    double tap = 1.0;       // off-nominal turns ratio, 1.0 when none
    double shift = 0.0;     // phase shift, radians
    bool in_service = true;

    bool operator==(const BranchRecord&) const = default;
};

enum class VscRole { Primary, Secondary };
enum class VscControlMode { PQ, PV };

/// Shunt-connected converter plus its coupling transformer and limits.
/// Setpoints that do not apply to the control mode stay unset.
struct VscRecord {
    int id = 0;
    int ac_bus = 0;
    int dc_node = 0;
    VscRole role = VscRole::Primary;
    VscControlMode control_mode = VscControlMode::PQ;  // meaningful for primary only
    std::optional<double> p_set;
    std::optional<double> q_set;
    std::optional<double> v_set;
    std::optional<double> vdc_set;
    double rsh = 0.0;
    double xsh = 0.0;
    double loss_a = 0.0;
    double loss_b = 0.0;
    double loss_c = 0.0;
    double vsh_min = 0.0;
    double vsh_max = 0.0;
    double ish_max = 0.0;

    bool operator==(const VscRecord&) const = default;
};

struct DcNodeRecord {
    int id = 0;
    double vdc_init = 1.0;

    bool operator==(const DcNodeRecord&) const = default;
};

struct DcLineRecord {
    int from = 0;
    int to = 0;
    double r = 0.0;

    bool operator==(const DcLineRecord&) const = default;
};

struct NetworkCase {
    double base_mva = 100.0;
    std::vector<BusRecord> buses;
    std::vector<GeneratorRecord> generators;
    std::vector<BranchRecord> branches;

    bool operator==(const NetworkCase&) const = default;
};

struct MtdcSystem {
    std::vector<VscRecord> converters;
    std::vector<DcNodeRecord> dc_nodes;
    std::vector<DcLineRecord> dc_lines;

    bool operator==(const MtdcSystem&) const = default;
    bool empty() const { return converters.empty(); }

    int node_index(int node_id) const;  // -1 when unknown
};

/// Parse failure carrying a 1-based line number when it is known.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : std::move(message)),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const { return errors.empty(); }
};

}  // namespace acdc
