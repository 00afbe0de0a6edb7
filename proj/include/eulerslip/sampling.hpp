#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "eulerslip/geometry.hpp"

namespace eulerslip {

struct ChartPoint {
  double xi1 = 0.0;
  double xi2 = 0.0;
  double xi3 = 0.0;
};

/// Uniform double in [0, 1) taken from the top 53 bits of the engine, so the
/// sequence is identical across standard library implementations.
inline double unit_uniform(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Latin-hypercube (stratified) boundary samples over the chart's sampling
/// range; deterministic for a given seed.
std::vector<ChartPoint> stratified_boundary_samples(const SurfaceChart& chart, std::size_t count,
                                                    std::uint64_t seed);

/// Stratified samples inside the domain within normal distance `depth` of the
/// boundary (xi3 in [-depth, 0)).
std::vector<ChartPoint> stratified_interior_samples(const SurfaceChart& chart, std::size_t count,
                                                    std::uint64_t seed, double depth);

}  // namespace eulerslip
