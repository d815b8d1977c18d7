// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include "engine/synth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace tabletale::synth {

Point2 Camera::project(const Vec3& p) const {
  return {cx + focal * p.x / p.z, cy - focal * p.y / p.z};
}

Rect Camera::box(const Vec3& base, double w, double h) const {
  Point2 bottom = project(base);
  Point2 top = project({base.x, base.y + h, base.z});
  double pw = focal * w / base.z;
  return {bottom.x - pw / 2, top.y, pw, bottom.y - top.y};
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::integer(int lo, int hi) {
  return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
}

double Rng::noise(double sigma) { return sigma * std::sqrt(3.0) * (2 * uniform() - 1); }

namespace {

using io::Json;

double round_to(double v, double unit) { return std::round(v / unit) * unit; }

// Rounded box that the stream loader leaves untouched.
Rect emitted_box(const Rect& raw, FrameSize frame) {
  const Rect b = clamp_to_frame(raw, frame);
  return clamp_to_frame({round_to(b.x, 0.01), round_to(b.y, 0.01), round_to(b.w, 0.01),
                         round_to(b.h, 0.01)},
                        frame);
}

struct Key {
  double t;
  Vec3 base;
};

struct ObjectPath {
  std::string cls;
  double w = 0.08, h = 0.25;
  double from = 0, to = 1e9;  // presence interval
  std::vector<Key> keys;      // ascending t

  Vec3 at(double t) const {
    if (t <= keys.front().t) return keys.front().base;
    for (std::size_t i = 1; i < keys.size(); ++i) {
      if (t <= keys[i].t) {
        const auto& a = keys[i - 1];
        const auto& b = keys[i];
        double u = (t - a.t) / (b.t - a.t);
        return {a.base.x + u * (b.base.x - a.base.x), a.base.y + u * (b.base.y - a.base.y),
                a.base.z + u * (b.base.z - a.base.z)};
      }
    }
    return keys.back().base;
  }
  bool present(double t) const { return t >= from && t < to; }
};

struct Pointing {
  double from, to;
  HandSide side = HandSide::Right;
  std::size_t object = 0;
};

struct Timeline {
  std::string description;
  double duration = 10;
  double fps = 30;
  double sigma = 0.001;  // position noise, meters
  std::vector<ObjectPath> objects;
  std::vector<Pointing> pointing;
  std::vector<std::pair<double, io::Control>> controls;
  std::optional<Rect> face = Rect{570, 20, 140, 170};
  std::optional<condition::OracleScript> script;
  Json annotations = Json::object();
};

struct Built {
  io::TrackStreamFile file;
  // Emitted (rounded, noisy) base positions: [frame][object], absent = nullopt.
  std::vector<std::vector<std::optional<Vec3>>> positions;
};

Built build(const Timeline& tl, Rng& rng) {
  const Camera cam;
  Built out;
  auto& file = out.file;
  file.header.description = tl.description;
  file.header.fps = tl.fps;
  file.header.oracleScript = tl.script;
  if (!tl.annotations.empty()) file.header.annotations = tl.annotations;

  const auto frames = static_cast<std::int64_t>(std::floor(tl.duration * tl.fps + 1e-9)) + 1;
  std::size_t nextControl = 0;
  for (std::int64_t i = 0; i < frames; ++i) {
    const double t = round_to(static_cast<double>(i) / tl.fps, 1e-6);
    while (nextControl < tl.controls.size() && tl.controls[nextControl].first <= t + 1e-9)
      file.items.emplace_back(tl.controls[nextControl++].second);

    tracking::TrackFrame f;
    f.frameIndex = i;
    f.timestamp = t;
    f.frameSize = file.header.frameSize;
    std::vector<std::optional<Vec3>> pos(tl.objects.size());
    std::vector<Rect> boxes(tl.objects.size());
    for (std::size_t k = 0; k < tl.objects.size(); ++k) {
      const auto& o = tl.objects[k];
      if (!o.present(t)) continue;
      Vec3 p = o.at(t);
      p = {round_to(p.x + rng.noise(tl.sigma), 1e-5), round_to(p.y + rng.noise(tl.sigma), 1e-5),
           round_to(p.z + rng.noise(tl.sigma), 1e-5)};
      const Rect b = emitted_box(cam.box(p, o.w, o.h), f.frameSize);
      pos[k] = p;
      boxes[k] = b;
      f.detections.push_back(
          {ObjectClass{o.cls}, b, p, round_to(rng.uniform(0.85, 0.99), 0.001)});
    }
    for (const auto& pt : tl.pointing) {
      if (t < pt.from || t >= pt.to || !pos[pt.object]) continue;
      Point2 c = boxes[pt.object].center();
      f.hands.push_back({pt.side, {round_to(c.x + rng.noise(1.0), 0.01),
                                   round_to(c.y + rng.noise(1.0), 0.01)}});
    }
    f.faceBox = tl.face;
    out.positions.push_back(std::move(pos));
    file.items.emplace_back(std::move(f));
  }
  return out;
}

ObjectPath still(std::string cls, double w, double h, Vec3 base, double from = 0) {
  ObjectPath o;
  o.cls = std::move(cls);
  o.w = w;
  o.h = h;
  o.from = from;
  o.keys = {{0, base}};
  return o;
}

io::Control control(io::ControlKind k) { return io::Control{k, std::nullopt}; }

// ---------------------------------------------------------------------------
// Use-case scenarios
// ---------------------------------------------------------------------------

Built wine(Rng& rng) {
  const Camera cam;
  Timeline tl;
  tl.description = "wine tasting: two bottles, overlay, ratings, pour condition";
  tl.duration = 16.5;
  const double z = 0.75;
  const double jitter = rng.uniform(-0.01, 0.01);

  ObjectPath a = still("bottle", 0.07, 0.25, cam.on_table(-0.15 + jitter, z));
  a.keys = {{5.0, cam.on_table(-0.15 + jitter, z)}, {7.0, cam.on_table(-0.045, z)}};
  ObjectPath b = still("bottle", 0.07, 0.25, cam.on_table(0.20, z), 1.5);
  b.keys = {{5.0, cam.on_table(0.20, z)},
            {7.0, cam.on_table(0.045, z)},
            {9.0, cam.on_table(0.045, z)},
            {9.3, {0.045, cam.tableY + 0.10, z}},
            {10.2, {0.045, cam.tableY + 0.10, z}},
            {10.5, cam.on_table(0.045, z)}};
  tl.objects = {a, b};
  tl.pointing = {{3.0, 4.5, HandSide::Right, 0}};
  tl.controls = {{8.0, control(io::ControlKind::SceneNext)}};
  tl.script = condition::OracleScript{1.08, {{"wine-poured", 12.0, 1e6, 1}}};
  tl.annotations = {{"scenario", "wine"},
                    {"timeline",
                     {"bottle#1 appears at 0 s", "bottle#2 appears at 1.5 s",
                      "right hand points at bottle#1 3.0-4.5 s",
                      "bottles brought together 5-7 s", "SceneNext at 8 s",
                      "bottle#2 lifted 9.0-10.5 s", "glass filled from 12 s"}}};
  return build(tl, rng);
}

Built ev(Rng& rng) {
  const Camera cam;
  Timeline tl;
  tl.description = "electric vehicles: two toy cars, clustered then stacked sales";
  tl.duration = 11.0;
  const double z = 0.7 + rng.uniform(-0.02, 0.02);
  const double carH = 0.05;
  ObjectPath c1 = still("car", 0.10, carH, cam.on_table(-0.12, z));
  ObjectPath c2 = still("car", 0.10, carH, cam.on_table(0.15, z), 1.0);
  c2.keys = {{3.0, cam.on_table(0.15, z)},
             {5.0, cam.on_table(-0.02, z)},
             {6.0, cam.on_table(-0.02, z)},
             {7.0, cam.on_table(0.15, z)},
             {7.6, {0.15, cam.tableY + 0.15, z}},
             {8.6, {-0.12, cam.tableY + 0.15, z}},
             {9.5, {-0.12, cam.tableY + carH, z}}};
  tl.objects = {c1, c2};
  tl.annotations = {{"scenario", "ev"},
                    {"objects", {{{"class", "car"}, {"ordinal", 1}}, {{"class", "car"}, {"ordinal", 2}}}},
                    {"timeline",
                     {"car#1 appears at 0 s", "car#2 appears at 1 s",
                      "cars side by side 3-6 s (clustered)", "cars apart 7 s",
                      "car#2 placed on top of car#1 7-9.5 s (stacked)"}}};
  return build(tl, rng);
}

Built fruit(Rng& rng) {
  const Camera cam;
  Timeline tl;
  tl.description = "fruit nutrition: orange detail view, banana peel condition";
  tl.duration = 10.0;
  const double z = 0.8;
  ObjectPath orange = still("orange", 0.08, 0.08, cam.on_table(-0.15, z));
  orange.keys = {{4.0, cam.on_table(-0.15, z)},
                 {5.0, cam.on_table(-0.08, 0.40)},
                 {7.0, cam.on_table(-0.08, 0.40)},
                 {8.0, cam.on_table(-0.15, z)}};
  ObjectPath banana = still("banana", 0.18, 0.05, cam.on_table(0.15 + rng.uniform(-0.01, 0.01), z), 0.5);
  tl.objects = {orange, banana};
  tl.pointing = {{2.0, 3.5, HandSide::Right, 1}};
  tl.script = condition::OracleScript{1.08, {{"banana-peeled", 5.0, 1e6, 1}}};
  tl.annotations = {{"scenario", "fruit"},
                    {"timeline",
                     {"orange appears at 0 s", "banana appears at 0.5 s",
                      "right hand points at banana 2.0-3.5 s", "orange brought near 4-5 s",
                      "banana peeled from 5 s", "orange returned 7-8 s"}}};
  return build(tl, rng);
}

// ---------------------------------------------------------------------------
// Property generators
// ---------------------------------------------------------------------------

// Two blocks; the first is raised and lowered repeatedly, the second rests.
// Ground truth: frames where the Lifted / Lowered edges must fire.
Built lift_cycle(Rng& rng) {
  const Camera cam;
  const double liftOn = 0.06, liftOff = 0.03, z = 0.7;
  Timeline tl;
  tl.description = "lift cycles of block#1 with block#2 resting";
  tl.sigma = 0;
  tl.face.reset();
  ObjectPath a = still("block", 0.06, 0.06, cam.on_table(0, z));
  ObjectPath b = still("block", 0.06, 0.06, cam.on_table(0.25, z));
  double t = 2.0;
  const int cycles = rng.integer(3, 6);
  for (int c = 0; c < cycles; ++c) {
    const double rise = rng.uniform(0.2, 0.5), hold = rng.uniform(0.3, 1.0),
                 peak = rng.uniform(0.08, 0.15), rest = rng.uniform(0.5, 1.0);
    a.keys.push_back({t, cam.on_table(0, z)});
    a.keys.push_back({t + rise, {0, cam.tableY + peak, z}});
    a.keys.push_back({t + rise + hold, {0, cam.tableY + peak, z}});
    a.keys.push_back({t + 2 * rise + hold, cam.on_table(0, z)});
    t += 2 * rise + hold + rest;
  }
  tl.duration = t + 0.5;
  tl.objects = {a, b};
  Built built = build(tl, rng);

  Json lifts = Json::array();
  bool lifted = false;
  std::int64_t liftFrame = 0;
  for (std::size_t i = 0; i < built.positions.size(); ++i) {
    const double h = built.positions[i][0]->y - cam.tableY;
    if (!lifted && h > liftOn) {
      lifted = true;
      liftFrame = static_cast<std::int64_t>(i);
    } else if (lifted && h < liftOff) {
      lifted = false;
      lifts.push_back({{"liftFrame", liftFrame}, {"lowerFrame", static_cast<std::int64_t>(i)}});
    }
  }
  built.file.header.annotations = Json{{"scenario", "lift-cycle"},
                                       {"liftOnHeight", liftOn},
                                       {"liftOffHeight", liftOff},
                                       {"lifts", lifts}};
  return built;
}

// block#2 approaches and leaves block#1 along x at random distances.
// Ground truth: frames where ProximityJoin / ProximitySplit must fire.
Built join_split_cycle(Rng& rng) {
  const Camera cam;
  const double join = 0.12, split = 0.18, z = 0.7;
  Timeline tl;
  tl.description = "block#2 oscillates toward and away from block#1";
  tl.sigma = 0;
  tl.face.reset();
  ObjectPath a = still("block", 0.06, 0.06, cam.on_table(-0.05, z));
  ObjectPath b = still("block", 0.06, 0.06, cam.on_table(0.25, z));
  double t = 0.5;
  const int legs = rng.integer(6, 12);
  for (int k = 0; k < legs; ++k) {
    const double d = (k % 2 == 0) ? rng.uniform(0.07, 0.16) : rng.uniform(0.14, 0.32);
    t += rng.uniform(0.4, 1.2);
    b.keys.push_back({t, cam.on_table(-0.05 + d, z)});
  }
  tl.duration = t + 0.5;
  tl.objects = {a, b};
  Built built = build(tl, rng);

  Json pairs = Json::array();
  bool joined = false;
  std::int64_t joinFrame = 0;
  for (std::size_t i = 0; i < built.positions.size(); ++i) {
    const auto& pa = built.positions[i][0];
    const auto& pb = built.positions[i][1];
    const double d = distance(*pa, *pb);
    if (!joined && d < join) {
      joined = true;
      joinFrame = static_cast<std::int64_t>(i);
    } else if (joined && d > split) {
      joined = false;
      pairs.push_back({{"joinFrame", joinFrame}, {"splitFrame", static_cast<std::int64_t>(i)}});
    }
  }
  Json truth = {{"scenario", "join-split-cycle"},
                {"joinDistance", join},
                {"splitDistance", split},
                {"joins", pairs}};
  if (joined) truth["openJoinFrame"] = joinFrame;
  built.file.header.annotations = truth;
  return built;
}

// Same-class blocks wandering on a grid with spacing above twice the gate;
// detection order is shuffled each frame. Ground truth: for each frame, the
// object index behind each detection.
Built random_walk(Rng& rng) {
  const int n = rng.integer(2, 5);
  Timeline tl;
  tl.description = "random walk of same-class blocks";
  tl.duration = 6.0;
  tl.sigma = 0;
  tl.face.reset();
  const double spacing = 0.6;  // lanes of +-0.04 keep neighbours over 0.5 apart
  std::vector<Vec3> p;
  for (int k = 0; k < n; ++k) p.push_back({-1.2 + spacing * k, -0.25, 0.9});

  const Camera cam;
  io::TrackStreamFile file;
  file.header.description = tl.description;
  Json truth = Json::array();
  const auto frames = static_cast<std::int64_t>(tl.duration * tl.fps) + 1;
  for (std::int64_t i = 0; i < frames; ++i) {
    tracking::TrackFrame f;
    f.frameIndex = i;
    f.timestamp = round_to(static_cast<double>(i) / tl.fps, 1e-6);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) order[static_cast<std::size_t>(k)] = k;
    for (int k = n - 1; k > 0; --k) std::swap(order[static_cast<std::size_t>(k)],
                                              order[static_cast<std::size_t>(rng.integer(0, k))]);
    for (int k : order) {
      auto& q = p[static_cast<std::size_t>(k)];
      const double lane = -1.2 + spacing * k;
      q.x = round_to(std::clamp(q.x + rng.uniform(-0.02, 0.02), lane - 0.04, lane + 0.04), 1e-5);
      q.z = round_to(std::clamp(q.z + rng.uniform(-0.02, 0.02), 0.8, 1.0), 1e-5);
      const Rect b = emitted_box(cam.box(q, 0.06, 0.06), f.frameSize);
      f.detections.push_back({ObjectClass{"block"}, b, q, 0.9});
    }
    truth.push_back(order);
    file.items.emplace_back(std::move(f));
  }
  file.header.annotations = Json{{"scenario", "random-walk"}, {"objects", n}, {"truth", truth}};
  return {std::move(file), {}};
}

// Desk-scale load: `n` objects drifting slowly, a pointing hand, a face.
Built desk(Rng& rng, int n) {
  const Camera cam;
  Timeline tl;
  tl.description = "desk-scale load, " + std::to_string(n) + " objects";
  tl.duration = 20.0;
  const char* classes[] = {"bottle", "bottle", "car", "car", "orange", "banana"};
  for (int k = 0; k < n; ++k) {
    const double x0 = -0.30 + 0.12 * k, z0 = 0.75 + 0.05 * (k % 2);
    ObjectPath o = still(classes[k % 6], 0.07, 0.12, cam.on_table(x0, z0));
    o.keys.clear();
    for (double t = 0; t <= tl.duration + 1; t += 2.0) {
      const double dx = rng.uniform(-0.02, 0.02), dz = rng.uniform(-0.03, 0.03);
      o.keys.push_back({t, cam.on_table(x0 + dx, z0 + dz)});
    }
    tl.objects.push_back(o);
  }
  for (double t = 1.0; t + 2 < tl.duration; t += 3.0)
    tl.pointing.push_back({t, t + 1.5, HandSide::Right,
                           static_cast<std::size_t>(rng.integer(0, n - 1))});
  tl.annotations = {{"scenario", "desk-" + std::to_string(n)}};
  return build(tl, rng);
}

const std::map<std::string, std::function<Built(Rng&)>>& generators() {
  static const std::map<std::string, std::function<Built(Rng&)>> g = {
      {"wine", wine},
      {"ev", ev},
      {"fruit", fruit},
      {"random-walk", random_walk},
      {"lift-cycle", lift_cycle},
      {"join-split-cycle", join_split_cycle},
      {"desk-1", [](Rng& r) { return desk(r, 1); }},
      {"desk-6", [](Rng& r) { return desk(r, 6); }},
  };
  return g;
}

}  // namespace

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : generators()) out.push_back(name);
  return out;
}

io::TrackStreamFile generate(const std::string& scenario, std::uint64_t seed) {
  auto it = generators().find(scenario);
  if (it == generators().end())
    throw Error(ErrorCode::UnknownScenario, "unknown scenario '" + scenario + "'");
  Rng rng(seed);
  return it->second(rng).file;
}

}  // namespace tabletale::synth
