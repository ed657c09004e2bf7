#include "covmap/scan.hpp"

#include <omp.h>

#include <exception>

#include "covmap/errors.hpp"

namespace covmap {

std::vector<std::string> parameter_names(const ProjectorFamily& family) {
  const std::string& g = family.group_name();
  if (g == "s3") return {"lsgn", "llmb"};
  if (g == "s4") return {"lmb1", "lmb2", "lmb3"};
  if (g == "q") return {"lt1", "lt2", "lt3"};
  if (g.rfind("mu:", 0) == 0) return {"alpha", "beta"};
  throw ValidationError("no parameter names for family " + g);
}

std::uint64_t point_seed(std::uint64_t global_seed, std::uint64_t index) {
  // splitmix64 of a mixed key
  std::uint64_t z = global_seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::size_t grid_size(const std::vector<Axis>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.count();
  return n;
}

std::vector<double> grid_point(const std::vector<Axis>& axes, std::size_t index) {
  std::vector<double> p(axes.size());
  for (std::size_t k = axes.size(); k-- > 0;) {
    const std::size_t c = axes[k].count();
    p[k] = axes[k].value(index % c);
    index /= c;
  }
  return p;
}

ScanRow evaluate_point(const ProjectorFamily& family, const ScanSpec& spec, std::size_t index,
                       const ExactPredicate* exact) {
  ScanRow row;
  row.params = grid_point(spec.axes, index);
  std::vector<double> l{1.0};
  l.insert(l.end(), row.params.begin(), row.params.end());
  ClassifyOptions opts = spec.options;
  opts.search.seed = point_seed(spec.seed, index);
  const ClassificationReport rep = classify(family, family.make_map(l), opts, exact);
  row.cp = rep.cp.holds;
  row.cop = rep.cop.holds;
  row.cuboid = rep.cuboid_necessary;
  row.diag = rep.diagonal.holds;
  row.reduction = rep.reduction.sufficient;
  row.exact = rep.exact_positive;
  if (rep.sampled) row.sampled_min = rep.sampled->min_value;
  return row;
}

namespace {

void check_spec(const ProjectorFamily& family, const ScanSpec& spec) {
  const auto names = parameter_names(family);
  if (spec.axes.size() != names.size()) throw ValidationError("scan needs one axis per parameter");
  for (std::size_t k = 0; k < names.size(); ++k)
    if (spec.axes[k].name != names[k]) throw ValidationError("axis order must follow " + names[k]);
}

}  // namespace

RegionScan scan_serial(const ProjectorFamily& family, const ScanSpec& spec, const ExactPredicate* exact) {
  check_spec(family, spec);
  RegionScan scan{spec.axes, {}};
  const std::size_t n = grid_size(spec.axes);
  scan.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) scan.rows.push_back(evaluate_point(family, spec, i, exact));
  return scan;
}

RegionScan scan_parallel(const ProjectorFamily& family, const ScanSpec& spec, const ExactPredicate* exact,
                         int jobs) {
  check_spec(family, spec);
  if (jobs < 1) throw ValidationError("--jobs must be at least 1");
  RegionScan scan{spec.axes, {}};
  const std::size_t n = grid_size(spec.axes);
  scan.rows.resize(n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      scan.rows[static_cast<std::size_t>(i)] = evaluate_point(family, spec, static_cast<std::size_t>(i), exact);
    } catch (...) {
#pragma omp critical(covmap_scan_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return scan;
}

}  // namespace covmap
