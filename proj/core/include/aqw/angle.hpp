#pragma once

#include <string>
#include <string_view>

namespace aqw {

/// Parses "pi", "-pi/2", "5pi/16", "5*pi/16", "2pi" or a plain decimal into
/// radians. Throws ConfigError on anything else.
[[nodiscard]] double parse_angle(std::string_view text);

/// Renders as "<num>pi/<den>" when the value is exactly such a multiple of pi
/// (as parse_angle would compute it), otherwise as a round-trippable decimal.
[[nodiscard]] std::string render_angle(double radians);

}  // namespace aqw
