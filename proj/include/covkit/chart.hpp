#pragma once

#include <span>
#include <string>

#include "covkit/io.hpp"

namespace covkit {

// Log-x SVG plot of coverage curves. Adds a dashed red reference line at
// y = 0 whenever a normalized curve is present or any value is negative.
// Pure function of its input: identical curves give identical bytes.
std::string render_chart_svg(std::span<const NamedCurve> curves);

}  // namespace covkit
