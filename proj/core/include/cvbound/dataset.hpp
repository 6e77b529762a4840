#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace cvbound {

/// One teleported input amplitude and its measured fidelity.
struct DatasetRecord {
  double beta_re = 0.0;
  double beta_im = 0.0;
  double fidelity = 0.0;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

inline constexpr const char* kDatasetHeader = "beta_re,beta_im,fidelity";

/// Parses the CSV format: header `beta_re,beta_im,fidelity`, then one record
/// per line. LF or CRLF, blank lines ignored. Throws DatasetError naming the
/// offending line, or InputError for an empty dataset.
std::vector<DatasetRecord> read_dataset(std::istream& in);
std::vector<DatasetRecord> load_dataset(const std::filesystem::path& path);

/// Writes shortest round-trip decimal representations.
void write_dataset(std::ostream& out, std::span<const DatasetRecord> records);
void save_dataset(const std::filesystem::path& path, std::span<const DatasetRecord> records);

/// Largest |beta| in the dataset.
double sample_radius(std::span<const DatasetRecord> records);

}  // namespace cvbound
