#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covmap/covmaps.hpp"
#include "covmap/positivity.hpp"
#include "covmap/reporting.hpp"

namespace covmap {

// Names of the non-id spectral parameters in Θ order: s3 lsgn,llmb; s4 lmb1,lmb2,lmb3;
// q lt1,lt2,lt3; mu alpha,beta.
std::vector<std::string> parameter_names(const ProjectorFamily& family);

struct ScanSpec {
  std::vector<Axis> axes;  // one per parameter name, same order
  ClassifyOptions options;
  std::uint64_t seed = 0;
};

std::uint64_t point_seed(std::uint64_t global_seed, std::uint64_t index);
std::size_t grid_size(const std::vector<Axis>& axes);
std::vector<double> grid_point(const std::vector<Axis>& axes, std::size_t index);

ScanRow evaluate_point(const ProjectorFamily& family, const ScanSpec& spec, std::size_t index,
                       const ExactPredicate* exact);

// Reference implementation, one point after another.
RegionScan scan_serial(const ProjectorFamily& family, const ScanSpec& spec, const ExactPredicate* exact);
// OpenMP over grid points; rows identical to scan_serial.
RegionScan scan_parallel(const ProjectorFamily& family, const ScanSpec& spec, const ExactPredicate* exact,
                         int jobs);

}  // namespace covmap
