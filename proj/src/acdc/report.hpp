#pragma once

#include <string>

#include "acdc/newton.hpp"

namespace acdc {

/// Serializes a solution to JSON. Doubles keep full precision so the output
/// parses back to an identical Solution.
std::string solution_to_json(const Solution& sol);

/// Inverse of solution_to_json.
Solution solution_from_json(const std::string& text);

std::string to_string(SolveStatus s);
std::string to_string(GenMode m);
std::string to_string(VscPin p);

}  // namespace acdc
