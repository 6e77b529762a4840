#include "cvbound/curve_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cvbound/errors.hpp"

namespace cvbound {

namespace {

double parse_number(std::string_view text, std::size_t line) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DatasetError(line, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

RadialCurve read_curve(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  bool have_header = false;
  std::vector<RadialCurve::Node> nodes;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    if (text.find_first_not_of(" \t") == std::string_view::npos) continue;
    if (!have_header) {
      if (text != kCurveHeader) throw DatasetError(line, std::string("expected header '") + kCurveHeader + "'");
      have_header = true;
      continue;
    }
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
      throw DatasetError(line, "expected 2 fields");
    }
    nodes.push_back({parse_number(text.substr(0, comma), line), parse_number(text.substr(comma + 1), line)});
  }
  if (!have_header) throw DatasetError(std::max<std::size_t>(line, 1), "missing header");
  return RadialCurve(std::move(nodes));
}

RadialCurve load_curve(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open curve file '" + path.string() + "'");
  return read_curve(in);
}

void write_curve(std::ostream& out, const RadialCurve& curve) {
  const auto precision = out.precision(17);
  out << kCurveHeader << '\n';
  for (const auto& node : curve.nodes()) out << node.r << ',' << node.rho << '\n';
  out.precision(precision);
}

}  // namespace cvbound
