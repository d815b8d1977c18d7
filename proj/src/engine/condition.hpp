// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "engine/events.hpp"
#include "engine/types.hpp"

namespace tabletale::condition {

/// Replacement registered for a binding ("class#ordinal") while a condition
/// holds. A swap may replace the chart, the annotation, or both.
struct SwapSpec {
  std::string target;
  std::optional<std::string> chartName;
  std::optional<ChartSpec> chart;  // resolved from chartName
  std::optional<Annotation> annotation;
  friend bool operator==(const SwapSpec&, const SwapSpec&) = default;
};

struct ConditionSpec {
  std::string conditionId;
  std::string prompt;
  double pollIntervalSeconds = 1.0;
  int debounceCount = 2;
  bool latching = false;
  std::vector<SwapSpec> swaps;
  friend bool operator==(const ConditionSpec&, const ConditionSpec&) = default;
};

/// True for prompts phrased from the presenter's point of view ("Am I ...",
/// "Do I ..."), which vision-language models answer poorly.
bool is_first_person_prompt(std::string_view prompt);

struct OracleRequest {
  std::uint64_t requestId = 0;
  std::string conditionId;
  std::string prompt;
  std::int64_t frameRef = 0;
  double issuedAt = 0;
};

struct OracleAnswer {
  std::uint64_t requestId = 0;
  std::string conditionId;
  /// 0 or 1; anything else is a protocol error.
  int answer = 0;
  double latencySeconds = 0;
  std::int64_t frameIndexAsked = 0;
};

/// Asynchronous yes/no oracle. `submit` must not block the frame loop;
/// completed answers are collected with `drain` at frame boundaries.
class Oracle {
 public:
  virtual ~Oracle() = default;
  /// Throws Error{OracleUnavailable} when the request cannot be queued.
  virtual void submit(const OracleRequest& request) = 0;
  virtual std::vector<OracleAnswer> drain(double now) = 0;
};

struct ScriptEntry {
  std::string conditionId;
  double from = 0;  // inclusive
  double to = 0;    // exclusive
  int answer = 0;
};

struct OracleScript {
  double latencySeconds = 0;
  std::vector<ScriptEntry> entries;
};

/// Deterministic oracle answering from a script, evaluated at the time the
/// request was issued (the frame the question refers to), delivered after the
/// configured latency. Times not covered by the script answer 0.
class ScriptedOracle final : public Oracle {
 public:
  explicit ScriptedOracle(OracleScript script);
  void submit(const OracleRequest& request) override;
  std::vector<OracleAnswer> drain(double now) override;

  int answer_at(const std::string& conditionId, double time) const;
  std::size_t pending() const { return pending_.size(); }

 private:
  struct Pending {
    double readyAt;
    OracleAnswer answer;
  };
  OracleScript script_;
  std::vector<Pending> pending_;
};

std::unique_ptr<Oracle> scripted_oracle(OracleScript script);

struct PerCondition {
  std::optional<double> lastPoll;
  std::optional<std::uint64_t> inFlight;
  int streakValue = -1;
  int streak = 0;
  bool met = false;
};

struct ConditionState {
  std::map<std::string, PerCondition> conditions;
  std::uint64_t nextRequestId = 1;
  std::uint64_t droppedTicks = 0;
  std::uint64_t protocolErrors = 0;
  std::uint64_t staleAnswers = 0;
};

/// Issues at most one request per due condition; returns how many were sent.
int poll_tick(double now, std::int64_t frameRef, std::span<const ConditionSpec> specs,
              ConditionState& state, Oracle* oracle);

/// Debounces one answer. Events are stamped with the applying frame.
std::vector<events::ManipulationEvent> ingest_answer(
    const OracleAnswer& answer, std::span<const ConditionSpec> specs,
    ConditionState& state, std::int64_t frameIndex, double timestamp);

}  // namespace tabletale::condition
