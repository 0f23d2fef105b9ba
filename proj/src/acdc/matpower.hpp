#pragma once

#include <string>

#include "acdc/types.hpp"

namespace acdc {

/// Parses the MATPOWER case subset: the mpc.baseMVA scalar and the
/// mpc.bus / mpc.gen / mpc.branch numeric matrices. Other assignments
/// (gencost, bus_name, ...) are skipped with a warning. Throws ParseError
/// on malformed input, duplicate bus ids, unknown bus references or a
/// missing slack generator. All quantities are normalized to per-unit on
/// baseMVA, angles to radians.
NetworkCase parse_matpower_case(const std::string& text,
                                std::vector<std::string>* warnings = nullptr);

/// Writes a case back out as a MATPOWER file. parse(write(c)) == c.
std::string write_matpower_case(const NetworkCase& net);

}  // namespace acdc
