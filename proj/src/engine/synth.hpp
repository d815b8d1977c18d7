// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "engine/io.hpp"

namespace tabletale::synth {

/// Pinhole camera used by every generator.
struct Camera {
  double focal = 900;
  double cx = 640;
  double cy = 360;
  /// Height of the table plane in camera coordinates (camera above table).
  double tableY = -0.25;

  Point2 project(const Vec3& p) const;
  /// Screen box of an upright object of physical size (w, h) whose base
  /// center sits at `base`.
  Rect box(const Vec3& base, double w, double h) const;
  /// Base center of an object resting on the table.
  Vec3 on_table(double x, double z) const { return {x, tableY, z}; }
};

/// mt19937_64 output is fully specified; the standard distributions are not,
/// so values are derived from raw bits here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi);  // inclusive
  /// Zero-mean noise with standard deviation `sigma` (uniform shape).
  double noise(double sigma);

 private:
  std::mt19937_64 engine_;
};

std::vector<std::string> scenario_names();

/// Throws Error{UnknownScenario}.
io::TrackStreamFile generate(const std::string& scenario, std::uint64_t seed);

}  // namespace tabletale::synth
