// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include "engine/condition.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace tabletale::condition {

namespace {

constexpr double kTimeEps = 1e-9;

bool starts_with_word(std::string_view s, std::string_view word) {
  if (s.size() < word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(s[i])) !=
        std::tolower(static_cast<unsigned char>(word[i])))
      return false;
  return s.size() == word.size() || !std::isalpha(static_cast<unsigned char>(s[word.size()]));
}

const ConditionSpec* find_spec(std::span<const ConditionSpec> specs,
                               const std::string& id) {
  for (const auto& s : specs)
    if (s.conditionId == id) return &s;
  return nullptr;
}

}  // namespace

bool is_first_person_prompt(std::string_view prompt) {
  while (!prompt.empty() && std::isspace(static_cast<unsigned char>(prompt.front())))
    prompt.remove_prefix(1);
  return starts_with_word(prompt, "am i") || starts_with_word(prompt, "do i");
}

ScriptedOracle::ScriptedOracle(OracleScript script) : script_(std::move(script)) {}

int ScriptedOracle::answer_at(const std::string& conditionId, double time) const {
  for (const auto& e : script_.entries)
    if (e.conditionId == conditionId && time >= e.from && time < e.to) return e.answer;
  return 0;
}

void ScriptedOracle::submit(const OracleRequest& request) {
  OracleAnswer a;
  a.requestId = request.requestId;
  a.conditionId = request.conditionId;
  a.answer = answer_at(request.conditionId, request.issuedAt);
  a.latencySeconds = script_.latencySeconds;
  a.frameIndexAsked = request.frameRef;
  pending_.push_back({request.issuedAt + script_.latencySeconds, std::move(a)});
}

std::vector<OracleAnswer> ScriptedOracle::drain(double now) {
  std::vector<Pending> ready;
  auto it = std::stable_partition(pending_.begin(), pending_.end(), [&](const Pending& p) {
    return p.readyAt > now + kTimeEps;
  });
  ready.assign(std::make_move_iterator(it), std::make_move_iterator(pending_.end()));
  pending_.erase(it, pending_.end());
  std::sort(ready.begin(), ready.end(), [](const Pending& a, const Pending& b) {
    return std::tie(a.readyAt, a.answer.requestId) < std::tie(b.readyAt, b.answer.requestId);
  });
  std::vector<OracleAnswer> out;
  for (auto& p : ready) out.push_back(std::move(p.answer));
  return out;
}

std::unique_ptr<Oracle> scripted_oracle(OracleScript script) {
  return std::make_unique<ScriptedOracle>(std::move(script));
}

int poll_tick(double now, std::int64_t frameRef, std::span<const ConditionSpec> specs,
              ConditionState& state, Oracle* oracle) {
  int issued = 0;
  for (const auto& spec : specs) {
    auto& c = state.conditions[spec.conditionId];
    if (c.inFlight) continue;
    if (c.lastPoll && now - *c.lastPoll < spec.pollIntervalSeconds - kTimeEps) continue;
    c.lastPoll = now;
    if (!oracle) {
      ++state.droppedTicks;
      continue;
    }
    OracleRequest req{state.nextRequestId, spec.conditionId, spec.prompt, frameRef, now};
    try {
      oracle->submit(req);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OracleUnavailable) throw;
      ++state.droppedTicks;
      continue;
    }
    ++state.nextRequestId;
    c.inFlight = req.requestId;
    ++issued;
  }
  return issued;
}

std::vector<events::ManipulationEvent> ingest_answer(
    const OracleAnswer& answer, std::span<const ConditionSpec> specs,
    ConditionState& state, std::int64_t frameIndex, double timestamp) {
  std::vector<events::ManipulationEvent> out;
  const ConditionSpec* spec = find_spec(specs, answer.conditionId);
  auto it = state.conditions.find(answer.conditionId);
  if (!spec || it == state.conditions.end() || it->second.inFlight != answer.requestId) {
    ++state.staleAnswers;
    return out;
  }
  auto& c = it->second;
  c.inFlight.reset();
  if (answer.answer != 0 && answer.answer != 1) {
    ++state.protocolErrors;
    return out;
  }

  if (answer.answer == c.streakValue) {
    ++c.streak;
  } else {
    c.streakValue = answer.answer;
    c.streak = 1;
  }
  if (c.streak < spec->debounceCount) return out;

  auto emit = [&](events::EventKind kind) {
    events::ManipulationEvent e;
    e.kind = kind;
    e.frameIndex = frameIndex;
    e.timestamp = timestamp;
    e.conditionId = spec->conditionId;
    out.push_back(std::move(e));
  };
  if (!c.met && c.streakValue == 1) {
    c.met = true;
    emit(events::EventKind::ConditionMet);
  } else if (c.met && c.streakValue == 0 && !spec->latching) {
    c.met = false;
    emit(events::EventKind::ConditionCleared);
  }
  return out;
}

}  // namespace tabletale::condition
