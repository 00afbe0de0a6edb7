#include "eulerslip/sampling.hpp"

#include <numeric>

namespace eulerslip {

namespace {

std::vector<std::size_t> permutation(std::size_t n, std::mt19937_64& eng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(eng() % i);
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

std::vector<ChartPoint> latin_hypercube(const SurfaceChart& chart, std::size_t count,
                                        std::uint64_t seed, double depth) {
  std::mt19937_64 eng(seed);
  const ParamRange r1 = chart.range(1);
  const ParamRange r2 = chart.range(2);
  const auto p2 = permutation(count, eng);
  const auto p3 = permutation(count, eng);
  std::vector<ChartPoint> out(count);
  const double n = static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double s1 = (static_cast<double>(i) + unit_uniform(eng)) / n;
    const double s2 = (static_cast<double>(p2[i]) + unit_uniform(eng)) / n;
    const double s3 = (static_cast<double>(p3[i]) + unit_uniform(eng)) / n;
    out[i].xi1 = r1.lo + (r1.hi - r1.lo) * s1;
    out[i].xi2 = r2.lo + (r2.hi - r2.lo) * s2;
    out[i].xi3 = -depth * s3;
  }
  return out;
}

}  // namespace

std::vector<ChartPoint> stratified_boundary_samples(const SurfaceChart& chart, std::size_t count,
                                                    std::uint64_t seed) {
  return latin_hypercube(chart, count, seed, 0.0);
}

std::vector<ChartPoint> stratified_interior_samples(const SurfaceChart& chart, std::size_t count,
                                                    std::uint64_t seed, double depth) {
  return latin_hypercube(chart, count, seed, depth);
}

}  // namespace eulerslip
