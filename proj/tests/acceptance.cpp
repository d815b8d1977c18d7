// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate: one PASS/FAIL line per criterion; exits 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "engine/condition.hpp"
#include "engine/events.hpp"
#include "engine/layout.hpp"
#include "engine/net.hpp"
#include "engine/replay.hpp"
#include "engine/session.hpp"
#include "engine/synth.hpp"
#include "mutations.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace tabletale;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

// ---------------------------------------------------------------------------

Verdict determinism() {
  Verdict v;
  for (auto [cfg, stream] : {std::pair{"wine.json", "wine.stream.jsonl"},
                             std::pair{"ev.json", "ev.stream.jsonl"},
                             std::pair{"fruit.json", "fruit.stream.jsonl"}}) {
    const auto s = io::load_stream(tt_test::fixture(stream));
    const auto p = io::load_presentation(tt_test::fixture(cfg));
    const auto t0 = Clock::now();
    const auto a = tt_test::replay_logs(s, p);
    const double first = seconds_since(t0);
    const auto b = tt_test::replay_logs(s, p);
    const bool same = a.events == b.events && a.render == b.render;
    v.pass = v.pass && same && first < 5.0;
    v.detail += std::string(stream) + (same ? " identical " : " DIFFERS ") + fmt(first) + "s; ";
  }
  return v;
}

// ---------------------------------------------------------------------------

struct Expected {
  events::EventKind kind;
  std::function<bool(const io::EventRecord&)> effect;
};

bool has_effect(const io::EventRecord& r, scene::EffectKind kind,
                const std::function<bool(const scene::VisEffect&)>& pred = {}) {
  for (const auto& e : r.effects)
    if (e.kind == kind && (!pred || pred(e))) return true;
  return false;
}

Verdict wine_reenactment() {
  Verdict v;
  const auto s = io::load_stream(tt_test::fixture("wine.stream.jsonl"));
  const auto p = io::load_presentation(tt_test::fixture("wine.json"));
  const auto logs = tt_test::replay_logs(s, p);
  const bool eventsMatch = logs.events == tt_test::slurp(tt_test::golden("wine.events.jsonl"));
  const bool renderMatch = logs.render == tt_test::slurp(tt_test::golden("wine.render.jsonl"));

  using events::EventKind;
  using scene::EffectKind;
  const auto radar = [](const scene::VisEffect& c) { return c.chartType == ChartType::Radar; };
  const std::vector<Expected> story{
      {EventKind::ObjectAppeared, [&](auto& r) { return has_effect(r, EffectKind::ShowChart, radar); }},
      {EventKind::ObjectAppeared, [&](auto& r) { return has_effect(r, EffectKind::ShowChart, radar); }},
      {EventKind::PointAtObject, [&](auto& r) { return !r.effects.empty(); }},
      {EventKind::ProximityJoin,
       [&](auto& r) {
         return has_effect(r, EffectKind::ShowComposite, [](const scene::VisEffect& c) {
           return c.chartType == ChartType::Radar && c.composition == charts::CompositionKind::Overlay;
         });
       }},
      {EventKind::SceneChanged, [&](auto& r) { return has_effect(r, EffectKind::ClearScene); }},
      {EventKind::Lifted, [&](auto& r) { return has_effect(r, EffectKind::HighlightSeries); }},
      {EventKind::ConditionMet, [&](auto& r) { return has_effect(r, EffectKind::SwapChart, radar); }},
  };
  std::istringstream in(logs.events);
  const auto records = io::read_event_log(in);
  std::size_t next = 0;
  for (const auto& r : records)
    if (next < story.size() && r.event.kind == story[next].kind && story[next].effect(r)) ++next;
  v.pass = eventsMatch && renderMatch && next == story.size();
  v.detail = "golden events " + std::string(eventsMatch ? "match" : "DIFFER") + ", render " +
             (renderMatch ? "match" : "DIFFER") + "; narrative steps " + std::to_string(next) + "/" +
             std::to_string(story.size());
  return v;
}

// ---------------------------------------------------------------------------

Verdict association() {
  Verdict v;
  std::size_t frames = 0, agree = 0, spacingViolations = 0;
  const tracking::TrackParams params;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto stream = synth::generate("random-walk", seed);
    tracking::TrackerState state;
    for (const auto& item : stream.items) {
      const auto& f = std::get<tracking::TrackFrame>(item);
      if (f.detections.size() > 5) ++spacingViolations;
      for (std::size_t i = 0; i < f.detections.size(); ++i)
        for (std::size_t j = i + 1; j < f.detections.size(); ++j) {
          const auto& a = f.detections[i].position;
          const auto& b = f.detections[j].position;
          if (std::hypot(a.x - b.x, a.y - b.y, a.z - b.z) <= 2 * params.gateRadius) ++spacingViolations;
        }

      std::vector<tt_oracle::Point> tracks, dets;
      for (const auto& t : state.tracks) tracks.push_back({t.classLabel.label, t.position});
      for (const auto& d : f.detections) dets.push_back({d.classLabel.label, d.position});
      const auto expected = tt_oracle::min_cost_assignment(tracks, dets, params.gateRadius);
      const auto before = state.tracks;
      state = tracking::associate(state, f, params).state;

      bool ok = true;
      for (std::size_t d = 0; d < f.detections.size(); ++d) {
        const auto& pos = f.detections[d].position;
        const tracking::TrackedObject* holder = nullptr;
        for (const auto& t : state.tracks)
          if (t.position == pos && t.classLabel == f.detections[d].classLabel) holder = &t;
        if (!holder) {
          ok = false;
          continue;
        }
        if (expected[d] >= 0) {
          ok = ok && holder->id == before[static_cast<std::size_t>(expected[d])].id;
        } else {
          for (const auto& t : before) ok = ok && t.id != holder->id;
        }
      }
      ++frames;
      if (ok) ++agree;
    }
  }
  v.pass = frames > 0 && agree == frames && spacingViolations == 0;
  v.detail = std::to_string(agree) + "/" + std::to_string(frames) + " frames agree over 200 seeds";
  if (spacingViolations) v.detail += "; " + std::to_string(spacingViolations) + " spacing violations";
  return v;
}

// ---------------------------------------------------------------------------

Verdict layout_oracle() {
  Verdict v;
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> ux(0, 1240), uy(0, 680), uw(40, 300), uh(30, 200);
  std::uniform_int_distribution<int> count(1, 3), coin(0, 1);
  const layout::LayoutWeights w;
  const tt_oracle::Weights ow{w.wFace, w.wObject, w.wVis, w.wTop, w.wPrev};
  const FrameSize frame{1280, 720};
  std::size_t vis = 0, argmaxOk = 0, inside = 0, faceChecked = 0, faceOk = 0;

  for (int sceneNo = 0; sceneNo < 500; ++sceneNo) {
    layout::LayoutScene s;
    s.frameSize = frame;
    const bool faceOnly = sceneNo % 2 == 0;  // isolates the face term
    if (coin(rng) || faceOnly) s.faceBox = Rect{ux(rng), uy(rng), 120 + uw(rng) / 2, 150 + uh(rng) / 2};
    const int n = faceOnly ? 1 : count(rng);
    std::vector<layout::LayoutRequest> reqs;
    std::set<layout::LayoutKey> keys;
    for (int k = 0; k < n; ++k) {
      const Rect anchor{ux(rng), uy(rng), 40 + uw(rng) / 5, 40 + uh(rng) / 3};
      s.objectBoxes.push_back({ObjectId{k + 1}, anchor});
      layout::LayoutKey key{coin(rng) ? layout::ItemKind::Chart : layout::ItemKind::Annotation,
                            1 + static_cast<int>(rng() % 9)};
      if (!keys.insert(key).second) continue;
      reqs.push_back({key, anchor, uw(rng), uh(rng)});
      if (coin(rng)) s.previousPlacements[key] = Rect{ux(rng), uy(rng), uw(rng), uh(rng)};
    }
    const auto got = layout::place(reqs, s, w);

    // Oracle: ascending key order, each vis sees the ones placed before it.
    auto ordered = reqs;
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
      return std::pair{static_cast<int>(a.key.kind), a.key.id} < std::pair{static_cast<int>(b.key.kind), b.key.id};
    });
    tt_oracle::Scene o{{frame.w, frame.h}, s.faceBox, {}, {}, std::nullopt};
    for (const auto& [id, box] : s.objectBoxes) o.objects.push_back(box);
    for (std::size_t i = 0; i < ordered.size(); ++i) {
      const auto& r = ordered[i];
      auto it = s.previousPlacements.find(r.key);
      o.previous = it == s.previousPlacements.end() ? std::nullopt : std::optional<Rect>(it->second);
      const auto cands = tt_oracle::candidates(r.anchor, r.width, r.height, o.frame, w.margin);
      const int best = tt_oracle::exhaustive_argmax(cands, o, ow);
      ++vis;
      const auto& g = got[i];
      if (g.key == r.key && g.rect == cands[best]) ++argmaxOk;
      if (g.rect.x >= 0 && g.rect.y >= 0 && g.rect.right() <= frame.w && g.rect.bottom() <= frame.h) ++inside;

      if (o.face) {
        bool zeroExists = false, othersClean = true;
        double minNonzero = std::numeric_limits<double>::infinity();
        for (const auto& c : cands) {
          const double f = tt_oracle::overlap(c, *o.face);
          if (f == 0) zeroExists = true;
          else minNonzero = std::min(minNonzero, f);
          for (const auto& ob : o.objects) othersClean = othersClean && tt_oracle::overlap(c, ob) == 0;
          for (const auto& pv : o.placed) othersClean = othersClean && tt_oracle::overlap(c, pv) == 0;
        }
        const bool condition = w.wFace * minNonzero / 1000 > w.wTop + w.wPrev;
        if (zeroExists && othersClean && condition) {
          ++faceChecked;
          if (tt_oracle::overlap(g.rect, *o.face) == 0) ++faceOk;
        }
      }
      o.placed.push_back(cands[best]);
    }
  }
  v.pass = vis > 0 && argmaxOk == vis && inside == vis && faceOk == faceChecked && faceChecked > 0;
  v.detail = "argmax " + std::to_string(argmaxOk) + "/" + std::to_string(vis) + ", inside " +
             std::to_string(inside) + "/" + std::to_string(vis) + ", face-free " +
             std::to_string(faceOk) + "/" + std::to_string(faceChecked);
  return v;
}

// ---------------------------------------------------------------------------

/// Feeds `step` frame by frame with synthetic tracks.
struct Driver {
  events::EventParams params;
  events::EventState state;
  tracking::TableBaseline baseline{0.0, true, 30};
  std::int64_t index = 0;
  std::vector<tracking::TrackedObject> last;

  std::vector<events::ManipulationEvent> feed(std::vector<tracking::TrackedObject> tracks) {
    for (auto& t : tracks)
      for (const auto& p : last)
        if (p.id == t.id) t.previousPosition = p.position;
    events::StepInput in;
    in.frameIndex = index;
    in.timestamp = static_cast<double>(index) / 30;
    ++index;
    in.tracks = tracks;
    in.baseline = baseline;
    in.canCompose = [](const auto&, const auto&) { return true; };
    auto r = events::step(in, params, std::move(state));
    state = std::move(r.state);
    last = tracks;
    return r.events;
  }
};

/// Signal sequence that wanders through and across a threshold pair.
std::vector<double> crossing_sequence(std::mt19937_64& rng, double lo, double hi, int n) {
  std::uniform_real_distribution<double> u(lo, hi), jitter(-1, 1), p(0, 1);
  const double span = hi - lo;
  std::vector<double> xs;
  double x = u(rng);
  for (int i = 0; i < n; ++i) {
    if (p(rng) < 0.08)
      x = u(rng);
    else
      x = std::clamp(x + jitter(rng) * span * 0.03, lo, hi);
    xs.push_back(x);
  }
  return xs;
}

struct SuiteTally {
  std::size_t sequences = 0, clean = 0, edges = 0;
};

/// Compares engine edges against oracle edges frame by frame; also checks
/// alternation (+1/-1) and that every edge sits beyond its threshold.
bool same_edges(const std::vector<int>& engine, const std::vector<int>& oracle) {
  if (engine != oracle) return false;
  int last = -1;
  for (int e : engine) {
    if (e == 0) continue;
    if (e == last) return false;
    last = e;
  }
  return true;
}

std::string tally(const std::string& name, const SuiteTally& t) {
  return name + " " + std::to_string(t.clean) + "/" + std::to_string(t.sequences) + " (" +
         std::to_string(t.edges) + " edges)";
}

Verdict hysteresis() {
  using events::EventKind;
  std::mt19937_64 rng(99);
  const events::EventParams ep;
  const int n = 240;
  SuiteTally lift, prox, vis, band;

  for (int seq = 0; seq < 1000; ++seq) {
    {  // lift: height above the table
      auto hs = crossing_sequence(rng, -0.005, 0.1, n);
      hs[0] = 0;
      Driver d;
      tt_oracle::RisingSwitch sw{ep.liftOnHeight, ep.liftOffHeight};
      std::vector<int> got, want;
      for (double h : hs) {
        int g = 0;
        for (const auto& e : d.feed({tt_test::track(1, "a", {0, h, 0.8})})) {
          if (e.kind == EventKind::Lifted) g = g ? 9 : 1;
          if (e.kind == EventKind::Lowered) g = g ? 9 : -1;
        }
        if (g == 1 && !(h > ep.liftOnHeight)) g = 9;
        if (g == -1 && !(h < ep.liftOffHeight)) g = 9;
        got.push_back(g);
        want.push_back(sw.feed(h));
        lift.edges += g != 0;
      }
      ++lift.sequences;
      lift.clean += same_edges(got, want);
    }
    {  // proximity: separation of two objects
      auto ds = crossing_sequence(rng, 0.05, 0.3, n);
      Driver d;
      tt_oracle::FallingSwitch sw{ep.joinDistance, ep.splitDistance};
      std::vector<int> got, want;
      for (double dist : ds) {
        int g = 0;
        for (const auto& e : d.feed({tt_test::track(1, "a", {0, 0, 0.8}, {500, 300, 60, 80}),
                                     tt_test::track(2, "b", {dist, 0, 0.8}, {700, 300, 60, 80})})) {
          if (e.kind == EventKind::ProximityJoin) g = g ? 9 : 1;
          if (e.kind == EventKind::ProximitySplit) g = g ? 9 : -1;
        }
        got.push_back(g);
        want.push_back(sw.feed(dist));
        prox.edges += g != 0;
      }
      ++prox.sequences;
      prox.clean += same_edges(got, want);
    }
    {  // visibility: hidden beyond the far band
      auto zs = crossing_sequence(rng, 0.6, 1.6, n);
      zs[0] = 0.8;
      Driver d;
      tt_oracle::RisingSwitch sw{ep.farBand, ep.farBand - ep.bandHysteresis};
      std::vector<int> got, want;
      for (std::size_t i = 0; i < zs.size(); ++i) {
        int g = 0;
        for (const auto& e : d.feed({tt_test::track(1, "a", {0, 0, zs[i]})})) {
          if (i == 0) continue;  // first sighting
          if (e.kind == EventKind::ObjectHidden) g = g ? 9 : 1;
          if (e.kind == EventKind::ObjectAppeared) g = g ? 9 : -1;
        }
        got.push_back(g);
        want.push_back(sw.feed(zs[i]));
        vis.edges += g != 0;
      }
      ++vis.sequences;
      vis.clean += same_edges(got, want);
    }
    {  // distance band: near and far as two independent switches
      auto zs = crossing_sequence(rng, 0.3, 1.5, n);
      zs[0] = 0.8;
      Driver d;
      tt_oracle::FallingSwitch near{ep.nearBand, ep.nearBand + ep.bandHysteresis};
      tt_oracle::RisingSwitch far{ep.farBand, ep.farBand - ep.bandHysteresis};
      std::vector<int> got, want;
      bool ok = true;
      events::DistanceBand previous = events::DistanceBand::Normal;
      int lastWant = 1 + static_cast<int>(events::DistanceBand::Normal);
      for (double z : zs) {
        int g = 0;
        for (const auto& e : d.feed({tt_test::track(1, "a", {0, 0, z})})) {
          if (e.kind != EventKind::DistanceBandChanged) continue;
          if (g || !e.band || *e.band == previous) ok = false;
          g = 1 + static_cast<int>(*e.band);
          if (e.band) previous = *e.band;
        }
        near.feed(z);
        far.feed(z);
        const int bandNow = 1 + static_cast<int>(far.state    ? events::DistanceBand::Far
                                                 : near.state ? events::DistanceBand::Near
                                                              : events::DistanceBand::Normal);
        want.push_back(bandNow != lastWant ? bandNow : 0);
        lastWant = bandNow;
        got.push_back(g);
        band.edges += g != 0;
      }
      ++band.sequences;
      band.clean += ok && got == want;
    }
  }
  Verdict v;
  v.pass = lift.clean == 1000 && prox.clean == 1000 && vis.clean == 1000 && band.clean == 1000 &&
           lift.edges && prox.edges && vis.edges && band.edges;
  v.detail = tally("lift", lift) + ", " + tally("proximity", prox) + ", " + tally("visibility", vis) +
             ", " + tally("band", band);
  return v;
}

// ---------------------------------------------------------------------------

Verdict condition_timing() {
  Verdict v;
  condition::ConditionSpec spec;
  spec.conditionId = "c";
  spec.prompt = "Is the glass filled?";
  spec.pollIntervalSeconds = 1.0;
  spec.debounceCount = 2;

  condition::ScriptedOracle oracle({1.08, {{"c", 5.0, 1e9, 1}}});
  condition::ConditionState st;
  std::optional<double> metAt;
  for (int i = 0; i < 600; ++i) {
    const double t = i / 30.0;
    for (const auto& a : oracle.drain(t))
      for (const auto& e : condition::ingest_answer(a, std::span(&spec, 1), st, i, t))
        if (e.kind == events::EventKind::ConditionMet && !metAt) metAt = e.timestamp;
    condition::poll_tick(t, i, std::span(&spec, 1), st, &oracle);
  }
  const bool timely = metAt && std::abs(*metAt - 7.0) <= spec.pollIntervalSeconds;

  // A remote oracle that accepts requests and never replies (well past 10 s
  // for this run) must not slow frames down.
  auto silent = net::listen_on({"127.0.0.1", 0});
  const int port = net::bound_port(silent);
  const auto p = io::load_presentation(tt_test::fixture("wine.json"));
  const auto stream = io::load_stream(tt_test::fixture("wine.stream.jsonl"));
  session::Session s(p, stream.header.frameSize,
                     std::make_unique<net::RemoteOracle>(net::Endpoint{"127.0.0.1", port}, 30.0));
  double worstMs = 0;
  std::size_t frames = 0, met = 0;
  for (const auto& item : stream.items) {
    if (const auto* c = std::get_if<io::Control>(&item)) {
      s.handle_control(*c);
      continue;
    }
    const auto t0 = Clock::now();
    auto out = s.process_frame(std::get<tracking::TrackFrame>(item));
    worstMs = std::max(worstMs, seconds_since(t0) * 1000);
    ++frames;
    for (const auto& r : out.records) met += r.event.kind == events::EventKind::ConditionMet;
  }
  const bool cadence = frames == stream.frame_count() && worstMs < 50 && met == 0;

  v.pass = timely && cadence;
  v.detail = "ConditionMet at " + (metAt ? fmt(*metAt) + "s" : std::string("never")) +
             "; silent remote oracle: " + std::to_string(frames) + " frames, worst " + fmt(worstMs) + " ms";
  return v;
}

// ---------------------------------------------------------------------------

Verdict engine_budget() {
  const auto stream = io::load_stream(tt_test::fixture("desk-6.stream.jsonl"));
  const auto p = io::load_presentation(tt_test::fixture("desk.json"));
  auto r = session::bench(stream, p, 5, [&] { return session::stream_oracle(stream, std::nullopt); });
  Verdict v;
  const double median = r.all.median(), p95 = r.all.p95();
  v.pass = r.all.count() > 0 && median < 10 && p95 < 20;
  v.detail = "median " + fmt(median) + " ms, p95 " + fmt(p95) + " ms over " + std::to_string(r.all.count()) +
             " frames";
  return v;
}

// ---------------------------------------------------------------------------

Verdict config_validation() {
  Verdict v;
  const auto base = io::load_config_json(tt_test::fixture("wine.json"));
  std::size_t named = 0;
  const auto& table = tt_test::config_mutations();
  for (const auto& m : table) {
    auto cfg = base;
    cfg[io::Json::json_pointer(m.pointer)] = m.value;
    const auto issues = io::validate_config(cfg);
    bool hit = false;
    for (const auto& i : issues) hit = hit || (i.severity == io::Severity::Error && i.path == m.path);
    if (io::error_count(issues) >= 1 && hit) ++named;
  }
  std::size_t cleanConfigs = 0;
  const std::vector<std::string> fixtures{"wine.json", "ev.json", "fruit.json", "desk.json", "property.json"};
  for (const auto& f : fixtures)
    if (io::validate_config(io::load_config_json(tt_test::fixture(f))).empty()) ++cleanConfigs;

  bool warned = true;
  std::size_t promptErrors = 0;
  for (const char* prompt : {"Am I pouring the wine?", "Do I hold the glass?"}) {
    auto cfg = base;
    cfg["scenes"][1]["conditions"][0]["prompt"] = prompt;
    const auto issues = io::validate_config(cfg);
    bool hit = false;
    for (const auto& i : issues)
      hit = hit || (i.severity == io::Severity::Warning && i.code == "FirstPersonPrompt" &&
                    i.path == "scenes[1].conditions[0].prompt");
    warned = warned && hit;
    promptErrors += io::error_count(issues);
  }

  v.pass = named == table.size() && cleanConfigs == fixtures.size() && warned && promptErrors == 0;
  v.detail = std::to_string(named) + "/" + std::to_string(table.size()) + " mutations named, " +
             std::to_string(cleanConfigs) + "/" + std::to_string(fixtures.size()) + " fixtures clean, " +
             (warned ? "first-person prompt warned" : "first-person prompt NOT warned");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"determinism", determinism},
      {"wine-reenactment", wine_reenactment},
      {"association-oracle", association},
      {"layout-oracle", layout_oracle},
      {"hysteresis", hysteresis},
      {"condition-timing", condition_timing},
      {"engine-budget", engine_budget},
      {"config-validation", config_validation},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
    failed += !v.pass;
  }
  return failed ? 1 : 0;
}
