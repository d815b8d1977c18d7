// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "engine/types.hpp"

namespace tabletale::tracking {

struct Detection {
  ObjectClass classLabel;
  Rect bbox;
  Vec3 position;
  double confidence = 1.0;
  friend bool operator==(const Detection&, const Detection&) = default;
};

struct HandObservation {
  HandSide side = HandSide::Right;
  Point2 indexTip;
  friend bool operator==(const HandObservation&, const HandObservation&) = default;
};

/// One timestamped observation of the tabletop.
struct TrackFrame {
  double timestamp = 0;
  std::int64_t frameIndex = 0;
  std::vector<Detection> detections;
  std::vector<HandObservation> hands;
  std::optional<Rect> faceBox;
  FrameSize frameSize;

  const HandObservation* hand(HandSide side) const;
  friend bool operator==(const TrackFrame&, const TrackFrame&) = default;
};

struct TrackParams {
  double gateRadius = 0.25;
  int trackLossFrames = 15;
  int calibrationMinSamples = 30;
  friend bool operator==(const TrackParams&, const TrackParams&) = default;
};

struct TrackedObject {
  ObjectId id;
  ObjectClass classLabel;
  Rect bbox;
  Vec3 position;
  Vec3 previousPosition;
  std::int64_t firstSeenFrame = 0;
  std::int64_t lastSeenFrame = 0;
  /// Order of first detection within the class, lowest free ordinal on reuse.
  int instanceOrdinal = 1;
  int missedFrames = 0;

  bool observed() const { return missedFrames == 0; }
  friend bool operator==(const TrackedObject&, const TrackedObject&) = default;
};

/// Everything `associate` carries from one frame to the next.
struct TrackerState {
  std::vector<TrackedObject> tracks;  // ascending id
  int nextId = 1;
  std::optional<std::int64_t> lastFrameIndex;
  friend bool operator==(const TrackerState&, const TrackerState&) = default;
};

struct AssociationResult {
  TrackerState state;
  std::vector<ObjectId> births;          // in detection order
  std::vector<TrackedObject> deaths;     // ascending id, last known state
};

/// Greedy class-constrained nearest-neighbour association of a frame's
/// detections with the previous tracks. Throws Error{StreamOrder} when the
/// frame index does not increase.
AssociationResult associate(const TrackerState& prev, const TrackFrame& frame,
                            const TrackParams& params);

struct TableBaseline {
  double baselineY = 0;
  bool calibrated = false;
  int sampleCount = 0;
  friend bool operator==(const TableBaseline&, const TableBaseline&) = default;
};

/// Median over qualifying frames (>= 1 detection) of the per-frame minimum
/// detection height. Throws Error{InsufficientSamples}.
TableBaseline calibrate_baseline(std::span<const TrackFrame> frames,
                                 const TrackParams& params);

/// Incremental form of calibrate_baseline used by the session loop.
class BaselineCalibrator {
 public:
  explicit BaselineCalibrator(int minSamples) : minSamples_(minSamples) {}

  /// Feeds one frame; returns the baseline once enough samples are seen.
  const TableBaseline& observe(const TrackFrame& frame);
  const TableBaseline& baseline() const { return baseline_; }

 private:
  int minSamples_;
  std::vector<double> minima_;
  TableBaseline baseline_;
};

struct Kinematics {
  double heightAboveTable = 0;
  double cameraDistance = 0;
  double displacementSinceLastFrame = 0;
};

/// Throws Error{BaselineNotCalibrated}.
Kinematics kinematics(const TrackedObject& track, const TableBaseline& baseline);

}  // namespace tabletale::tracking
