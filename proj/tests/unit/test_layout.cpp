// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "engine/layout.hpp"
#include "oracles.hpp"

using namespace tabletale;
using namespace tabletale::layout;

namespace {

const FrameSize kFrame{1280, 720};
const LayoutKey kChart1{ItemKind::Chart, 1};

LayoutScene empty_scene() {
  LayoutScene s;
  s.frameSize = kFrame;
  return s;
}

}  // namespace

TEST_SUITE("layout") {
  TEST_CASE("candidates around a centered anchor") {
    const Rect anchor{610, 320, 60, 80};
    auto c = candidates(anchor, 100, 50, kFrame, 12);
    for (int i = 0; i < 8; ++i) {
      CHECK(c[i].dir == static_cast<Compass>(i));
      for (int j = i + 1; j < 8; ++j) CHECK_FALSE(c[i].rect == c[j].rect);
    }
    CHECK(c[0].rect == Rect{590, 258, 100, 50});
    auto ref = tt_oracle::candidates(anchor, 100, 50, {1280, 720}, 12);
    for (int i = 0; i < 8; ++i) CHECK(c[i].rect == ref[i]);
  }

  TEST_CASE("candidates at the top edge stay inside the frame") {
    auto c = candidates({600, 0, 60, 80}, 100, 50, kFrame, 12);
    for (const auto& k : c) {
      CHECK(k.rect.y >= 0);
      CHECK(k.rect.x >= 0);
      CHECK(k.rect.right() <= 1280);
      CHECK(k.rect.bottom() <= 720);
    }
  }

  TEST_CASE("candidate set is mirror-symmetric about a centered anchor") {
    auto c = candidates({610, 320, 60, 80}, 100, 50, kFrame, 12);
    auto mirror = [](const Rect& r) { return Rect{1280 - r.x - r.w, r.y, r.w, r.h}; };
    // N<->N, NE<->NW, E<->W, SE<->SW, S<->S
    const int pair[8] = {0, 7, 6, 5, 4, 3, 2, 1};
    for (int i = 0; i < 8; ++i) CHECK(mirror(c[i].rect) == c[pair[i]].rect);
  }

  TEST_CASE("score with no active terms") {
    auto s = empty_scene();
    LayoutWeights w;
    CHECK(score({Compass::E, {100, 100, 50, 50}}, s, kChart1, w) == 0);
    CHECK(score({Compass::N, {100, 100, 50, 50}}, s, kChart1, w) == w.wTop);
  }

  TEST_CASE("5000 px2 of face overlap on N loses to a free S") {
    // Anchor 600..660 x 300..380; vis 100x50. N candidate is x 580..680,
    // y 238..288. Face rect covers 100x50 = 5000 px² of it.
    auto s = empty_scene();
    s.faceBox = Rect{580, 238, 100, 50};
    LayoutWeights w;
    auto c = candidates({600, 300, 60, 80}, 100, 50, kFrame, 12);
    const double n = score(c[0], s, kChart1, w);
    const double south = score(c[4], s, kChart1, w);
    // Hand-computed: N = -4.0 * 5 + 1.0 = -19, S = 0.
    CHECK(n == doctest::Approx(-19));
    CHECK(south == doctest::Approx(0));
    CHECK(south > n);
  }

  TEST_CASE("one vis in an empty scene goes north") {
    LayoutRequest r{kChart1, {600, 300, 60, 80}, 100, 50};
    auto p = place(std::span(&r, 1), empty_scene(), LayoutWeights{});
    REQUIRE(p.size() == 1);
    CHECK(p[0].dir == Compass::N);
  }

  TEST_CASE("second vis on an adjacent anchor avoids the first") {
    std::vector<LayoutRequest> rs{{kChart1, {600, 300, 60, 80}, 160, 100},
                                  {{ItemKind::Chart, 2}, {680, 300, 60, 80}, 160, 100}};
    auto p = place(rs, empty_scene(), LayoutWeights{});
    REQUIRE(p.size() == 2);
    CHECK(rect_overlap_area(p[0].rect, p[1].rect) == 0);
  }

  TEST_CASE("composite anchor spans its members") {
    std::vector<Rect> m{{100, 300, 60, 80}, {300, 300, 60, 80}};
    auto a = composite_anchor(m);
    CHECK(a.center().x == doctest::Approx(230));
    auto c = candidates(a, 100, 50, kFrame, 12);
    CHECK(c[0].rect.center().x == doctest::Approx(230));
    CHECK(c[0].rect.bottom() <= 300);
  }

  TEST_CASE("smoothing") {
    const Rect t{100, 0, 50, 50};
    CHECK(smooth(t, t, 0.25) == t);
    CHECK(smooth({0, 0, 50, 50}, t, 0.25) == Rect{25, 0, 50, 50});
    CHECK(smooth({0, 0, 10, 10}, t, 1.0) == t);
    CHECK(smooth({0, 0, 10, 10}, t, 0.25).w == 50);

    // d0 = 200: ceil(log(1/200) / log(0.75)) = 19 frames to come within 1 px.
    Rect r{0, 0, 50, 50};
    const Rect target{200, 0, 50, 50};
    int frames = 0;
    while (std::abs(r.x - target.x) > 1) {
      r = smooth(r, target, 0.25);
      ++frames;
      CHECK(std::abs(r.x - target.x) == doctest::Approx(200 * std::pow(0.75, frames)));
    }
    CHECK(frames == static_cast<int>(std::ceil(std::log(1.0 / 200) / std::log(0.75))));
    CHECK(frames <= 20);
  }

  TEST_CASE("place matches the exhaustive argmax on random scenes") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(0, 1200), uy(0, 650), us(40, 260);
    LayoutWeights w;
    for (int iter = 0; iter < 300; ++iter) {
      LayoutScene s = empty_scene();
      tt_oracle::Scene o{{1280, 720}, std::nullopt, {}, {}, std::nullopt};
      if (iter % 2) {
        s.faceBox = Rect{ux(rng), uy(rng), 160, 200};
        o.face = s.faceBox;
      }
      for (int k = 0; k < 3; ++k) {
        Rect b{ux(rng), uy(rng), 60, 80};
        s.objectBoxes.push_back({ObjectId{k + 1}, b});
        o.objects.push_back(b);
      }
      if (iter % 3 == 0) {
        Rect prev{ux(rng), uy(rng), 120, 80};
        s.previousPlacements[kChart1] = prev;
        o.previous = prev;
      }
      const Rect anchor = s.objectBoxes[0].second;
      const double vw = us(rng), vh = us(rng) * 0.6;
      LayoutRequest r{kChart1, anchor, vw, vh};
      auto p = place(std::span(&r, 1), s, w);
      auto cands = tt_oracle::candidates(anchor, vw, vh, {1280, 720}, w.margin);
      const int best = tt_oracle::exhaustive_argmax(
          cands, o, {w.wFace, w.wObject, w.wVis, w.wTop, w.wPrev});
      CHECK(p[0].rect == cands[best]);
      CHECK(static_cast<int>(p[0].dir) == best);
    }
  }

  TEST_CASE("placements are deterministic and stable for a static scene") {
    std::vector<LayoutRequest> rs{{kChart1, {600, 300, 60, 80}, 160, 100},
                                  {{ItemKind::Annotation, 1}, {600, 300, 60, 80}, 120, 40}};
    auto s = empty_scene();
    s.faceBox = Rect{560, 60, 160, 200};
    auto a = place(rs, s, LayoutWeights{});
    auto b = place(rs, s, LayoutWeights{});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].rect == b[i].rect);
      s.previousPlacements[a[i].key] = a[i].rect;
    }
    auto c = place(rs, s, LayoutWeights{});
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(c[i].rect == a[i].rect);
  }
}
