#include "covmap/reporting.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "covmap/errors.hpp"

namespace covmap {

std::size_t Axis::count() const {
  if (!(step > 0) || !std::isfinite(lo) || !std::isfinite(hi)) throw ValidationError("axis " + name + ": bad range");
  if (hi < lo) return 0;
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

std::string format_double(double x) {
  if (x == 0.0) return "0";  // folds −0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string region_csv(const RegionScan& scan) {
  std::ostringstream out;
  for (const auto& a : scan.axes) out << a.name << ',';
  out << "cp,cop,cuboid,diag,reduction,exact,sampled_min\n";
  for (const auto& r : scan.rows) {
    for (double p : r.params) out << format_double(p) << ',';
    out << r.cp << ',' << r.cop << ',' << r.cuboid << ',' << r.diag << ',' << r.reduction << ',';
    if (r.exact) out << *r.exact;
    out << ',';
    if (r.sampled_min) out << format_double(*r.sampled_min);
    out << '\n';
  }
  return out.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("failed writing " + path);
}

void write_region_csv(const RegionScan& scan, const std::string& path) { write_text(path, region_csv(scan)); }

nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dim", m.rows()}, {"rows", rows}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("dim").get<Eigen::Index>();
    const auto& rows = j.at("rows");
    if (n < 0 || static_cast<Eigen::Index>(rows.size()) != n) throw ValidationError("row count does not match dim");
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows.at(i);
      if (static_cast<Eigen::Index>(row.size()) != n) throw ValidationError("row length does not match dim");
      for (Eigen::Index k = 0; k < n; ++k) {
        const auto& z = row.at(k);
        if (z.size() != 2) throw ValidationError("complex entries must be [re, im]");
        m(i, k) = {z.at(0).get<double>(), z.at(1).get<double>()};
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed matrix JSON: ") + e.what());
  }
}

void write_matrix_json(const CMatrix& m, const std::string& path) { write_text(path, matrix_to_json(m).dump() + "\n"); }

CMatrix read_matrix_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("cannot parse " + path + ": " + e.what());
  }
  return matrix_from_json(j);
}

namespace {

nlohmann::json vector_json(const CVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

}  // namespace

nlohmann::json report_to_json(const ClassificationReport& r) {
  nlohmann::json j;
  j["group"] = r.map.group;
  j["irrep"] = r.map.irrep;
  j["theta"] = r.map.theta;
  j["l"] = r.map.real_params();
  j["verdict"] = r.verdict;
  j["cp"] = {{"holds", r.cp.holds}, {"min_eigenvalue", r.cp.min_eigenvalue}};
  j["cop"] = {{"holds", r.cop.holds}, {"min_eigenvalue", r.cop.min_eigenvalue}};
  j["cuboid_necessary"] = r.cuboid_necessary;
  j["diagonal_necessary"] = {{"holds", r.diagonal.holds}, {"min_entry", r.diagonal.min_entry}};
  j["degenerate"] = r.degenerate;
  if (r.degenerate) {
    j["reduction_sufficient"] = nullptr;
  } else {
    j["reduction_sufficient"] = {{"holds", r.reduction.sufficient}, {"values", r.reduction.values}};
  }
  j["exact_positive"] = r.exact_positive ? nlohmann::json(*r.exact_positive) : nlohmann::json(nullptr);
  if (r.sampled) {
    j["sampled_block_min"] = {{"value", r.sampled->min_value},
                              {"x", vector_json(r.sampled->best.x)},
                              {"y", vector_json(r.sampled->best.y)},
                              {"restarts", r.sampled->restarts},
                              {"iters", r.sampled->iters},
                              {"seed", r.sampled->seed},
                              {"evidence_only", true}};
  } else {
    j["sampled_block_min"] = nullptr;
  }
  j["witness_flag"] = r.witness_flag;
  return j;
}

nlohmann::json scan_to_json(const RegionScan& scan) {
  nlohmann::json axes = nlohmann::json::array();
  for (const auto& a : scan.axes) axes.push_back({{"name", a.name}, {"lo", a.lo}, {"hi", a.hi}, {"step", a.step}});
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : scan.rows) {
    rows.push_back({{"params", r.params},
                    {"cp", r.cp},
                    {"cop", r.cop},
                    {"cuboid", r.cuboid},
                    {"diag", r.diag},
                    {"reduction", r.reduction},
                    {"exact", r.exact ? nlohmann::json(*r.exact) : nlohmann::json(nullptr)},
                    {"sampled_min", r.sampled_min ? nlohmann::json(*r.sampled_min) : nlohmann::json(nullptr)}});
  }
  return {{"axes", axes}, {"rows", rows}};
}

nlohmann::json metadata_json(const std::vector<std::string>& argv, std::optional<std::uint64_t> seed) {
  nlohmann::json j;
  j["tool"] = "covmap";
  j["version"] = kToolVersion;
  j["command_line"] = argv;
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  return j;
}

}  // namespace covmap
