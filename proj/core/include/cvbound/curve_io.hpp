#pragma once

#include <filesystem>
#include <iosfwd>

#include "cvbound/coherent.hpp"

namespace cvbound {

inline constexpr const char* kCurveHeader = "r,rho";

/// RadialCurve as CSV: header `r,rho`, one node per line.
RadialCurve read_curve(std::istream& in);
RadialCurve load_curve(const std::filesystem::path& path);
void write_curve(std::ostream& out, const RadialCurve& curve);

}  // namespace cvbound
