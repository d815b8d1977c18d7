// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include "engine/scene.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace tabletale::scene {

using charts::VisInstance;
using events::EventKind;
using events::ManipulationEvent;

namespace {

constexpr std::array<std::string_view, 15> kEffectNames{
    "ShowChart",      "HideChart",      "ShowComposite", "HideComposite",
    "HighlightSeries", "UnhighlightSeries", "SelectPoint", "DeselectPoint",
    "ShowAnnotation", "HideAnnotation", "SwapChart",     "RestoreChart",
    "EnterDetail",    "ExitDetail",     "ClearScene",
};

const tracking::TrackedObject* find_track(std::span<const tracking::TrackedObject> tracks,
                                          ObjectId id) {
  for (const auto& t : tracks)
    if (t.id == id) return &t;
  return nullptr;
}

const Binding* binding_for(const SceneConfig& scene,
                           std::span<const tracking::TrackedObject> tracks, ObjectId id) {
  const auto* t = find_track(tracks, id);
  return t ? resolve_binding(*t, scene) : nullptr;
}

VisEffect chart_effect(EffectKind kind, const VisInstance& v) {
  VisEffect e;
  e.kind = kind;
  e.visId = v.visId;
  e.title = v.spec.title;
  e.chartType = v.spec.chartType;
  e.composition = v.composition;
  if (const auto* id = std::get_if<ObjectId>(&v.anchor)) e.object = *id;
  return e;
}

VisEffect annotation_effect(EffectKind kind, ObjectId id, const std::optional<Annotation>& a) {
  VisEffect e;
  e.kind = kind;
  e.object = id;
  if (a && kind == EffectKind::ShowAnnotation) {
    e.text = a->text;
    e.imageRef = a->imageRef;
  }
  return e;
}

// Brings a singleton's chart in line with its binding's effective chart.
void reconcile(const SceneConfig& scene, SceneRuntime& rt, const Binding& binding, ObjectId id,
               EffectKind kind, std::vector<VisEffect>& effects) {
  auto it = rt.visible.find(id);
  if (it == rt.visible.end()) return;
  ChartSpec want = effective_chart(scene, rt, binding, rt.detailMode.count(id) > 0);
  if (it->second.spec == want) return;
  it->second = charts::apply_swap(std::move(it->second), std::move(want));
  effects.push_back(chart_effect(kind, it->second));
}

// Removes a composite and puts both members back on screen.
void dissolve(const SceneConfig& scene, SceneRuntime& rt, PairKey pair,
              std::span<const tracking::TrackedObject> tracks,
              std::vector<VisEffect>& effects) {
  auto node = rt.composites.extract(pair);
  if (node.empty()) return;
  auto [a, b] = charts::decompose(node.mapped());
  effects.push_back(chart_effect(EffectKind::HideComposite, node.mapped()));
  for (auto* member : {&a, &b}) {
    ObjectId id = std::get<ObjectId>(member->anchor);
    effects.push_back(chart_effect(EffectKind::ShowChart, *member));
    rt.visible[id] = std::move(*member);
    if (const auto* binding = binding_for(scene, tracks, id))
      reconcile(scene, rt, *binding, id, EffectKind::SwapChart, effects);
  }
}

std::optional<std::string> series_in(const VisInstance& v, const std::optional<PairKey>& pair,
                                     ObjectId id, const std::string& series) {
  if (!pair) {
    if (v.spec.find_series(series)) return series;
    return std::nullopt;
  }
  std::size_t member = pair->a == id ? 0 : 1;
  for (const auto& o : v.origins)
    if (o.member == member && o.memberName == series) return o.compositeName;
  return std::nullopt;
}

VisInstance* vis_by_id(SceneRuntime& rt, int visId) {
  for (auto& [id, v] : rt.visible)
    if (v.visId == visId) return &v;
  for (auto& [key, v] : rt.composites)
    if (v.visId == visId) return &v;
  return nullptr;
}

std::vector<ObjectId> objects_with_key(std::span<const tracking::TrackedObject> tracks,
                                       const BindingKey& key) {
  std::vector<ObjectId> out;
  for (const auto& t : tracks)
    if (t.classLabel == key.classLabel && t.instanceOrdinal == key.ordinal) out.push_back(t.id);
  return out;
}

VisCommand swap_command(const condition::SwapSpec& swap, const ChartSpec& current) {
  if (!swap.chart) return VisCommand::Annotation;
  return swap.chart->chartType != current.chartType ? VisCommand::ChangeChartType
                                                    : VisCommand::ChangeDataSource;
}

void refresh_panel_bindings(const SceneConfig& scene, SceneRuntime& rt,
                            const condition::ConditionSpec& cond) {
  for (const auto& swap : cond.swaps) {
    for (std::size_t i = 0; i < scene.bindings.size() && i < rt.panel.objectToChart.size(); ++i) {
      if (scene.bindings[i].key().str() != swap.target) continue;
      rt.panel.objectToChart[i].chartTitle =
          effective_chart(scene, rt, scene.bindings[i], false).title;
    }
  }
}

DispatchResult apply_condition(const ManipulationEvent& e, const SceneConfig& scene,
                               SceneRuntime& rt, std::span<const tracking::TrackedObject> tracks) {
  DispatchResult r;
  const condition::ConditionSpec* cond = nullptr;
  for (const auto& c : scene.conditions)
    if (e.conditionId && c.conditionId == *e.conditionId) cond = &c;
  if (!cond) {
    r.diagnostic = "UnknownCondition";
    return r;
  }
  const bool met = e.kind == EventKind::ConditionMet;
  bool changed = false;
  for (std::size_t i = 0; i < cond->swaps.size(); ++i) {
    const auto& swap = cond->swaps[i];
    auto key = BindingKey::parse(swap.target);
    const Binding* binding = key ? scene.find_binding(*key) : nullptr;
    if (!binding) continue;
    const std::pair<std::string, std::size_t> tag{cond->conditionId, i};
    if (met) {
      if (!scene.enabled(swap_command(swap, effective_chart(scene, rt, *binding, false))))
        continue;
      rt.activeSwaps.insert(tag);
    } else if (!rt.activeSwaps.erase(tag)) {
      continue;
    }
    changed = true;
    for (ObjectId id : objects_with_key(tracks, *key)) {
      if (swap.chart) {
        if (auto pair = rt.composite_of(id)) dissolve(scene, rt, *pair, tracks, r.effects);
        reconcile(scene, rt, *binding, id, met ? EffectKind::SwapChart : EffectKind::RestoreChart,
                  r.effects);
      }
      if (rt.annotations.count(id))
        r.effects.push_back(annotation_effect(EffectKind::ShowAnnotation, id,
                                              effective_annotation(scene, rt, *binding)));
    }
  }
  if (!changed) {
    r.diagnostic = "Masked";
    return r;
  }
  refresh_panel_bindings(scene, rt, *cond);
  return r;
}

}  // namespace

std::string BindingKey::str() const { return classLabel.label + "#" + std::to_string(ordinal); }

std::optional<BindingKey> BindingKey::parse(std::string_view s) {
  auto hash = s.rfind('#');
  if (hash == std::string_view::npos || hash == 0) return std::nullopt;
  int ordinal = 0;
  auto digits = s.substr(hash + 1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), ordinal);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return BindingKey{ObjectClass{std::string(s.substr(0, hash))}, ordinal};
}

const Binding* SceneConfig::find_binding(const BindingKey& key) const {
  for (const auto& b : bindings)
    if (b.key() == key) return &b;
  return nullptr;
}

std::optional<PairKey> SceneRuntime::composite_of(ObjectId id) const {
  for (const auto& [key, v] : composites)
    if (key.a == id || key.b == id) return key;
  return std::nullopt;
}

std::vector<const VisInstance*> SceneRuntime::on_screen() const {
  std::vector<const VisInstance*> out;
  for (const auto& [id, v] : visible) out.push_back(&v);
  for (const auto& [key, v] : composites) out.push_back(&v);
  std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->visId < b->visId; });
  return out;
}

std::string_view to_string(EffectKind k) { return kEffectNames[static_cast<std::size_t>(k)]; }

std::optional<EffectKind> effect_kind_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kEffectNames.size(); ++i)
    if (kEffectNames[i] == s) return static_cast<EffectKind>(i);
  return std::nullopt;
}

std::optional<VisCommand> implied_command(const ManipulationEvent& e) {
  switch (e.kind) {
    case EventKind::ObjectAppeared:
    case EventKind::ObjectHidden: return VisCommand::ShowHide;
    case EventKind::Lifted:
    case EventKind::Lowered: return VisCommand::SelectDataSeries;
    case EventKind::ProximityJoin:
    case EventKind::ProximitySplit: return VisCommand::ComposeDecompose;
    case EventKind::PointAtObject: return VisCommand::Annotation;
    case EventKind::PointAtVis: return VisCommand::SelectDataPoint;
    case EventKind::DistanceBandChanged:
      if (e.band == events::DistanceBand::Far) return std::nullopt;
      return VisCommand::HierarchicalNavigation;
    case EventKind::ConditionMet:
    case EventKind::ConditionCleared:
    case EventKind::SceneChanged:
    case EventKind::PointDwellEnd: return std::nullopt;
  }
  return std::nullopt;
}

const Binding* resolve_binding(const tracking::TrackedObject& track, const SceneConfig& scene) {
  return scene.find_binding({track.classLabel, track.instanceOrdinal});
}

ChartSpec effective_chart(const SceneConfig& scene, const SceneRuntime& rt,
                          const Binding& binding, bool detail) {
  const ChartSpec* base = &binding.chart;
  const std::string key = binding.key().str();
  for (const auto& cond : scene.conditions)
    for (std::size_t i = 0; i < cond.swaps.size(); ++i) {
      const auto& swap = cond.swaps[i];
      if (swap.chart && swap.target == key && rt.activeSwaps.count({cond.conditionId, i}))
        base = &*swap.chart;
    }
  if (detail && base->detailVariant) return *base->detailVariant;
  return *base;
}

std::optional<Annotation> effective_annotation(const SceneConfig& scene, const SceneRuntime& rt,
                                               const Binding& binding) {
  std::optional<Annotation> out = binding.annotation;
  const std::string key = binding.key().str();
  for (const auto& cond : scene.conditions)
    for (std::size_t i = 0; i < cond.swaps.size(); ++i) {
      const auto& swap = cond.swaps[i];
      if (swap.annotation && swap.target == key && rt.activeSwaps.count({cond.conditionId, i}))
        out = swap.annotation;
    }
  return out;
}

bool can_compose(const SceneConfig& scene, const SceneRuntime& rt,
                 const tracking::TrackedObject& a, const tracking::TrackedObject& b) {
  const Binding* ba = resolve_binding(a, scene);
  const Binding* bb = resolve_binding(b, scene);
  if (!ba || !bb || !scene.enabled(VisCommand::ComposeDecompose)) return false;
  auto type_of = [&](const tracking::TrackedObject& t, const Binding& binding) {
    if (auto it = rt.visible.find(t.id); it != rt.visible.end()) return it->second.spec.chartType;
    return effective_chart(scene, rt, binding, false).chartType;
  };
  ChartType ta = type_of(a, *ba), tb = type_of(b, *bb);
  if (ta != tb) return false;
  const auto& reg = scene.compositionRegistry;
  if (ta == ChartType::Bar)
    return reg.count(charts::CompositionKind::Clustered) || reg.count(charts::CompositionKind::Stacked);
  return reg.count(charts::CompositionKind::Overlay) > 0;
}

DispatchResult dispatch(const ManipulationEvent& e, const SceneConfig& scene, SceneRuntime& rt,
                        std::span<const tracking::TrackedObject> tracks) {
  DispatchResult r;
  if (e.kind == EventKind::ConditionMet || e.kind == EventKind::ConditionCleared)
    return apply_condition(e, scene, rt, tracks);

  const auto command = implied_command(e);
  if (!command) return r;
  if (!scene.enabled(*command)) {
    r.diagnostic = "Masked";
    return r;
  }

  const ObjectId id = e.object.value_or(ObjectId{});
  auto fail = [&](const char* why) {
    r.diagnostic = why;
    return r;
  };

  switch (e.kind) {
    case EventKind::ObjectAppeared: {
      const Binding* binding = binding_for(scene, tracks, id);
      if (!binding) return fail("UnboundObject");
      if (rt.visible.count(id) || rt.composite_of(id)) return fail("AlreadyVisible");
      VisInstance v;
      v.visId = rt.nextVisId++;
      v.anchor = id;
      v.spec = effective_chart(scene, rt, *binding, rt.detailMode.count(id) > 0);
      r.effects.push_back(chart_effect(EffectKind::ShowChart, v));
      rt.visible[id] = std::move(v);
      return r;
    }
    case EventKind::ObjectHidden: {
      if (auto pair = rt.composite_of(id)) {
        auto node = rt.composites.extract(*pair);
        auto [a, b] = charts::decompose(node.mapped());
        r.effects.push_back(chart_effect(EffectKind::HideComposite, node.mapped()));
        VisInstance& keep = pair->a == id ? b : a;
        ObjectId other = std::get<ObjectId>(keep.anchor);
        r.effects.push_back(chart_effect(EffectKind::ShowChart, keep));
        rt.visible[other] = std::move(keep);
        if (const auto* binding = binding_for(scene, tracks, other))
          reconcile(scene, rt, *binding, other, EffectKind::SwapChart, r.effects);
      } else if (auto it = rt.visible.find(id); it != rt.visible.end()) {
        r.effects.push_back(chart_effect(EffectKind::HideChart, it->second));
        rt.visible.erase(it);
      } else {
        return fail(binding_for(scene, tracks, id) ? "NotVisible" : "UnboundObject");
      }
      if (rt.annotations.erase(id))
        r.effects.push_back(annotation_effect(EffectKind::HideAnnotation, id, std::nullopt));
      rt.detailMode.erase(id);
      return r;
    }
    case EventKind::Lifted:
    case EventKind::Lowered: {
      const Binding* binding = binding_for(scene, tracks, id);
      if (!binding) return fail("UnboundObject");
      if (!binding->seriesName) return fail("NoSeries");
      auto pair = rt.composite_of(id);
      VisInstance* v = nullptr;
      if (pair)
        v = &rt.composites.at(*pair);
      else if (auto it = rt.visible.find(id); it != rt.visible.end())
        v = &it->second;
      if (!v) return fail("NotVisible");
      auto series = series_in(*v, pair, id, *binding->seriesName);
      if (!series) return fail("NoSeries");
      VisEffect fx = chart_effect(EventKind::Lifted == e.kind ? EffectKind::HighlightSeries
                                                              : EffectKind::UnhighlightSeries,
                                  *v);
      fx.series = *series;
      bool changed = e.kind == EventKind::Lifted ? v->highlightSeries.insert(*series).second
                                                 : v->highlightSeries.erase(*series) > 0;
      if (!changed) return fail("Unchanged");
      r.effects.push_back(std::move(fx));
      return r;
    }
    case EventKind::ProximityJoin: {
      const ObjectId other = e.other.value_or(ObjectId{});
      if (!binding_for(scene, tracks, id) || !binding_for(scene, tracks, other))
        return fail("UnboundObject");
      if (rt.composite_of(id) || rt.composite_of(other)) return fail("AlreadyComposed");
      auto ia = rt.visible.find(id), ib = rt.visible.find(other);
      if (ia == rt.visible.end() || ib == rt.visible.end()) return fail("NotVisible");
      charts::CompositionKind kind;
      try {
        kind = charts::composition_kind(ia->second.spec.chartType, ib->second.spec.chartType,
                                        e.orientation.value_or(charts::Orientation::Horizontal));
      } catch (const Error&) {
        return fail("IncompatibleCharts");
      }
      auto tmpl = scene.compositionRegistry.find(kind);
      if (tmpl == scene.compositionRegistry.end()) return fail("NotComposable");
      VisInstance c = charts::compose(ia->second, ib->second,
                                      e.orientation.value_or(charts::Orientation::Horizontal),
                                      rt.nextVisId++, tmpl->second.title);
      c.anchor = PairKey::of(id, other);
      r.effects.push_back(chart_effect(EffectKind::ShowComposite, c));
      r.effects.push_back(chart_effect(EffectKind::HideChart, ia->second));
      r.effects.push_back(chart_effect(EffectKind::HideChart, ib->second));
      rt.visible.erase(ia);
      rt.visible.erase(other);
      rt.composites[PairKey::of(id, other)] = std::move(c);
      return r;
    }
    case EventKind::ProximitySplit: {
      const PairKey pair = PairKey::of(id, e.other.value_or(ObjectId{}));
      if (!rt.composites.count(pair)) return fail("NotComposed");
      dissolve(scene, rt, pair, tracks, r.effects);
      return r;
    }
    case EventKind::PointAtObject: {
      const Binding* binding = binding_for(scene, tracks, id);
      if (!binding) return fail("UnboundObject");
      auto content = effective_annotation(scene, rt, *binding);
      if (!content) return fail("NoAnnotation");
      if (rt.annotations.erase(id)) {
        r.effects.push_back(annotation_effect(EffectKind::HideAnnotation, id, std::nullopt));
      } else {
        rt.annotations.insert(id);
        r.effects.push_back(annotation_effect(EffectKind::ShowAnnotation, id, content));
      }
      return r;
    }
    case EventKind::PointAtVis: {
      VisInstance* v = vis_by_id(rt, e.visId.value_or(-1));
      if (!v) return fail("StaleVis");
      charts::PointKey key{e.seriesName.value_or(""), e.category.value_or("")};
      bool selected = !v->highlightPoints.erase(key);
      if (selected) v->highlightPoints.insert(key);
      VisEffect fx = chart_effect(selected ? EffectKind::SelectPoint : EffectKind::DeselectPoint, *v);
      fx.series = key.first;
      fx.category = key.second;
      r.effects.push_back(std::move(fx));
      return r;
    }
    case EventKind::DistanceBandChanged: {
      const Binding* binding = binding_for(scene, tracks, id);
      if (!binding) return fail("UnboundObject");
      if (e.band == events::DistanceBand::Near) {
        rt.detailMode.insert(id);
        std::size_t before = r.effects.size();
        reconcile(scene, rt, *binding, id, EffectKind::EnterDetail, r.effects);
        if (r.effects.size() == before) return fail("NoDetail");
      } else if (rt.detailMode.erase(id)) {
        reconcile(scene, rt, *binding, id, EffectKind::ExitDetail, r.effects);
      }
      return r;
    }
    default:
      return r;
  }
}

Presentation advance_scene(Presentation p, Direction direction) {
  const int last = static_cast<int>(p.scenes.size()) - 1;
  p.currentIndex = std::clamp(p.currentIndex + (direction == Direction::Next ? 1 : -1), 0,
                              std::max(last, 0));
  return p;
}

SceneRuntime enter_scene(const Presentation& p) {
  SceneRuntime rt;
  rt.panel = build_panel(p.current(), rt, p.currentIndex, static_cast<int>(p.scenes.size()));
  return rt;
}

PresenterPanel build_panel(const SceneConfig& scene, const SceneRuntime& rt, int sceneIndex,
                           int sceneCount) {
  PresenterPanel panel;
  panel.sceneName = scene.name;
  panel.sceneIndex = sceneIndex;
  panel.sceneCount = sceneCount;
  for (const auto& b : scene.bindings)
    panel.objectToChart.push_back({b.key().str(), effective_chart(scene, rt, b, false).title});
  panel.activeCommands.assign(scene.enabledCommands.begin(), scene.enabledCommands.end());
  for (const auto& cond : scene.conditions)
    for (const auto& swap : cond.swaps) {
      std::string what = swap.chart ? swap.chart->title
                                    : (swap.annotation ? "annotation: " + swap.annotation->text : "");
      panel.registeredSwaps.push_back({cond.prompt, swap.target, what});
    }
  for (const auto& [kind, tmpl] : scene.compositionRegistry)
    panel.registeredCompositions.push_back(std::string(charts::to_string(kind)) + ": " +
                                           tmpl.title);
  return panel;
}

}  // namespace tabletale::scene
