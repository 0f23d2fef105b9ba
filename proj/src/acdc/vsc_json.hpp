#pragma once

#include <string>

#include "acdc/types.hpp"

namespace acdc {

/// Parses the converter overlay from JSON:
///   {"converters":[...], "dc_nodes":[...], "dc_lines":[...]}
/// Throws ParseError on schema violations, duplicate converter ids and a
/// disconnected DC graph. Values are per-unit already; no scaling applied.
MtdcSystem parse_vsc_extension(const std::string& text);

/// Inverse of parse_vsc_extension, for persisting an overlay.
std::string write_vsc_extension(const MtdcSystem& mtdc);

}  // namespace acdc
