#include "cvbound/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "cvbound/errors.hpp"

namespace cvbound {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double parse_field(std::string_view text, std::size_t line, const char* name) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw DatasetError(line, std::string("field '") + name + "' is not a number: '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) throw DatasetError(line, std::string("field '") + name + "' is not finite");
  return value;
}

void write_number(std::ostream& out, double value) {
  std::array<char, 32> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  out.write(buffer.data(), ptr - buffer.data());
}

}  // namespace

std::vector<DatasetRecord> read_dataset(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  bool have_header = false;
  std::vector<DatasetRecord> records;

  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    if (line == 1 && text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    if (trim(text).empty()) continue;

    if (!have_header) {
      if (trim(text) != kDatasetHeader) {
        throw DatasetError(line, std::string("expected header '") + kDatasetHeader + "'");
      }
      have_header = true;
      continue;
    }

    std::array<std::string_view, 3> fields;
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      if (count == fields.size()) throw DatasetError(line, "expected 3 fields");
      fields[count++] = text.substr(start, comma == std::string_view::npos ? comma : comma - start);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (count != fields.size()) throw DatasetError(line, "expected 3 fields");

    DatasetRecord record{parse_field(fields[0], line, "beta_re"), parse_field(fields[1], line, "beta_im"),
                         parse_field(fields[2], line, "fidelity")};
    if (record.fidelity < 0.0 || record.fidelity > 1.0) {
      throw DatasetError(line, "fidelity outside [0, 1]");
    }
    records.push_back(record);
  }

  if (!have_header) throw DatasetError(std::max<std::size_t>(line, 1), "missing header");
  if (records.empty()) throw InputError("dataset has no records");
  return records;
}

std::vector<DatasetRecord> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open dataset '" + path.string() + "'");
  return read_dataset(in);
}

void write_dataset(std::ostream& out, std::span<const DatasetRecord> records) {
  out << kDatasetHeader << '\n';
  for (const auto& r : records) {
    write_number(out, r.beta_re);
    out << ',';
    write_number(out, r.beta_im);
    out << ',';
    write_number(out, r.fidelity);
    out << '\n';
  }
}

void save_dataset(const std::filesystem::path& path, std::span<const DatasetRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write dataset '" + path.string() + "'");
  write_dataset(out, records);
  if (!out) throw InputError("failed writing dataset '" + path.string() + "'");
}

double sample_radius(std::span<const DatasetRecord> records) {
  double radius = 0.0;
  for (const auto& r : records) radius = std::max(radius, std::hypot(r.beta_re, r.beta_im));
  return radius;
}

}  // namespace cvbound
