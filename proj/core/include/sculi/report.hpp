#pragma once

#include <iosfwd>
#include <string>

#include "sculi/attack.hpp"

namespace sculi::report {

/// Stable JSON rendering: keys sorted, fixed indentation, trailing newline.
std::string to_json(const attack::AttackReport& r);
/// "slot,delta_raw,delta_inverted" rows (empty delta fields when unscored).
std::string to_csv(const attack::AttackReport& r);
/// Human-readable summary of a report.json document.
void pretty_print(std::ostream& os, const std::string& report_json);

}  // namespace sculi::report
