// Serial vs OpenMP region scan timing.
//   bench_scan [group] [points-per-axis] [jobs]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "covmap/catalog.hpp"
#include "covmap/scan.hpp"

using namespace covmap;

int main(int argc, char** argv) {
  const std::string group = argc > 1 ? argv[1] : "s4";
  const int per_axis = argc > 2 ? std::atoi(argv[2]) : 9;
  const int jobs = argc > 3 ? std::atoi(argv[3]) : omp_get_max_threads();
  if (per_axis < 1 || jobs < 1) {
    std::fprintf(stderr, "usage: bench_scan [group] [points-per-axis >= 1] [jobs >= 1]\n");
    return 1;
  }

  const ProjectorFamily f = family_for(group);
  ScanSpec spec;
  const double step = per_axis > 1 ? 2.0 / (per_axis - 1) : 1.0;
  for (const auto& n : parameter_names(f)) spec.axes.push_back({n, -1.0, per_axis > 1 ? 1.0 : -1.0, step});
  spec.seed = 7;
  spec.options.search.restarts = 16;
  spec.options.search.iters = 100;
  const auto exact = exact_predicate(f);
  const ExactPredicate* ex = exact ? &*exact : nullptr;

  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  const RegionScan a = scan_serial(f, spec, ex);
  auto t1 = clock::now();
  const RegionScan b = scan_parallel(f, spec, ex, jobs);
  auto t2 = clock::now();

  const double ts = std::chrono::duration<double>(t1 - t0).count();
  const double tp = std::chrono::duration<double>(t2 - t1).count();
  const bool same = region_csv(a) == region_csv(b);
  std::printf("group=%s points=%zu jobs=%d\n", group.c_str(), a.rows.size(), jobs);
  std::printf("serial   %.3f s\n", ts);
  std::printf("parallel %.3f s  speedup %.2fx\n", tp, tp > 0 ? ts / tp : 0.0);
  std::printf("identical rows: %s\n", same ? "yes" : "no");
  return same ? 0 : 1;
}
