// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include "engine/tracking.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace tabletale::tracking {

const HandObservation* TrackFrame::hand(HandSide side) const {
  for (const auto& h : hands)
    if (h.side == side) return &h;
  return nullptr;
}

AssociationResult associate(const TrackerState& prev, const TrackFrame& frame,
                            const TrackParams& params) {
  if (prev.lastFrameIndex && frame.frameIndex <= *prev.lastFrameIndex)
    throw Error(ErrorCode::StreamOrder,
                "frame index " + std::to_string(frame.frameIndex) +
                    " does not follow " + std::to_string(*prev.lastFrameIndex));

  struct Candidate {
    double dist;
    std::size_t track;
    std::size_t det;
  };
  std::vector<Candidate> candidates;
  for (std::size_t t = 0; t < prev.tracks.size(); ++t) {
    for (std::size_t d = 0; d < frame.detections.size(); ++d) {
      const auto& det = frame.detections[d];
      if (det.classLabel != prev.tracks[t].classLabel) continue;
      double dist = distance(prev.tracks[t].position, det.position);
      if (dist <= params.gateRadius) candidates.push_back({dist, t, d});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return std::tie(a.dist, a.track, a.det) <
                     std::tie(b.dist, b.track, b.det);
            });

  std::vector<int> detForTrack(prev.tracks.size(), -1);
  std::vector<bool> detClaimed(frame.detections.size(), false);
  for (const auto& c : candidates) {
    if (detForTrack[c.track] >= 0 || detClaimed[c.det]) continue;
    detForTrack[c.track] = static_cast<int>(c.det);
    detClaimed[c.det] = true;
  }

  AssociationResult out;
  out.state.nextId = prev.nextId;
  out.state.lastFrameIndex = frame.frameIndex;

  for (std::size_t t = 0; t < prev.tracks.size(); ++t) {
    TrackedObject track = prev.tracks[t];
    if (detForTrack[t] >= 0) {
      const auto& det = frame.detections[static_cast<std::size_t>(detForTrack[t])];
      track.previousPosition = track.position;
      track.position = det.position;
      track.bbox = det.bbox;
      track.lastSeenFrame = frame.frameIndex;
      track.missedFrames = 0;
      out.state.tracks.push_back(std::move(track));
    } else {
      track.previousPosition = track.position;
      ++track.missedFrames;
      if (track.missedFrames > params.trackLossFrames)
        out.deaths.push_back(std::move(track));
      else
        out.state.tracks.push_back(std::move(track));
    }
  }

  std::map<ObjectClass, std::set<int>> ordinalsInUse;
  for (const auto& t : out.state.tracks)
    ordinalsInUse[t.classLabel].insert(t.instanceOrdinal);

  for (std::size_t d = 0; d < frame.detections.size(); ++d) {
    if (detClaimed[d]) continue;
    const auto& det = frame.detections[d];
    auto& used = ordinalsInUse[det.classLabel];
    int ordinal = 1;
    while (used.count(ordinal)) ++ordinal;
    used.insert(ordinal);

    TrackedObject track;
    track.id = ObjectId{out.state.nextId++};
    track.classLabel = det.classLabel;
    track.bbox = det.bbox;
    track.position = det.position;
    track.previousPosition = det.position;
    track.firstSeenFrame = frame.frameIndex;
    track.lastSeenFrame = frame.frameIndex;
    track.instanceOrdinal = ordinal;
    out.births.push_back(track.id);
    out.state.tracks.push_back(std::move(track));
  }
  return out;
}

namespace {

std::optional<double> frame_min_height(const TrackFrame& frame) {
  if (frame.detections.empty()) return std::nullopt;
  double lo = frame.detections.front().position.y;
  for (const auto& d : frame.detections) lo = std::min(lo, d.position.y);
  return lo;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

}  // namespace

TableBaseline calibrate_baseline(std::span<const TrackFrame> frames,
                                 const TrackParams& params) {
  std::vector<double> minima;
  for (const auto& f : frames)
    if (auto m = frame_min_height(f)) minima.push_back(*m);
  if (minima.empty() ||
      static_cast<int>(minima.size()) < params.calibrationMinSamples)
    throw Error(ErrorCode::InsufficientSamples,
                "baseline needs " + std::to_string(params.calibrationMinSamples) +
                    " frames with detections, got " +
                    std::to_string(minima.size()));
  TableBaseline b;
  b.sampleCount = static_cast<int>(minima.size());
  b.baselineY = median(std::move(minima));
  b.calibrated = true;
  return b;
}

const TableBaseline& BaselineCalibrator::observe(const TrackFrame& frame) {
  if (baseline_.calibrated) return baseline_;
  if (auto m = frame_min_height(frame)) minima_.push_back(*m);
  baseline_.sampleCount = static_cast<int>(minima_.size());
  if (baseline_.sampleCount >= minSamples_ && !minima_.empty()) {
    baseline_.baselineY = median(minima_);
    baseline_.calibrated = true;
    minima_.clear();
    minima_.shrink_to_fit();
  }
  return baseline_;
}

Kinematics kinematics(const TrackedObject& track, const TableBaseline& baseline) {
  if (!baseline.calibrated)
    throw Error(ErrorCode::BaselineNotCalibrated, "table baseline not calibrated");
  return {track.position.y - baseline.baselineY, track.position.z,
          distance(track.position, track.previousPosition)};
}

}  // namespace tabletale::tracking
