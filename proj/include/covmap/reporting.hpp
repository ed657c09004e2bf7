#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "covmap/linalg.hpp"
#include "covmap/positivity.hpp"

namespace covmap {

struct Axis {
  std::string name;
  double lo = 0;
  double hi = 0;
  double step = 1;

  std::size_t count() const;
  double value(std::size_t k) const { return lo + static_cast<double>(k) * step; }
};

struct ScanRow {
  std::vector<double> params;
  bool cp = false;
  bool cop = false;
  bool cuboid = false;
  bool diag = false;
  bool reduction = false;
  std::optional<bool> exact;
  std::optional<double> sampled_min;
};

struct RegionScan {
  std::vector<Axis> axes;  // one per non-id parameter; fixed parameters have a single point
  std::vector<ScanRow> rows;  // lexicographic in the grid index, first axis slowest
};

std::string format_double(double x);  // 12 significant digits
std::string region_csv(const RegionScan& scan);
void write_region_csv(const RegionScan& scan, const std::string& path);

nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);
void write_matrix_json(const CMatrix& m, const std::string& path);
CMatrix read_matrix_json(const std::string& path);

nlohmann::json report_to_json(const ClassificationReport& r);
nlohmann::json scan_to_json(const RegionScan& scan);

// Deterministic provenance record written next to every output file.
nlohmann::json metadata_json(const std::vector<std::string>& argv, std::optional<std::uint64_t> seed);
void write_text(const std::string& path, const std::string& content);

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace covmap
