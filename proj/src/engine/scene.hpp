// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "engine/charts.hpp"
#include "engine/condition.hpp"
#include "engine/events.hpp"
#include "engine/layout.hpp"
#include "engine/tracking.hpp"
#include "engine/types.hpp"

namespace tabletale::scene {

/// "class#ordinal", the authoring-time name of a physical object.
struct BindingKey {
  ObjectClass classLabel;
  int ordinal = 1;

  std::string str() const;
  static std::optional<BindingKey> parse(std::string_view s);
  friend auto operator<=>(const BindingKey&, const BindingKey&) = default;
};

struct Binding {
  ObjectClass classLabel;
  int instanceOrdinal = 1;
  std::string chartName;
  ChartSpec chart;  // resolved from chartName
  std::optional<Annotation> annotation;
  /// Series highlighted when the object is lifted.
  std::optional<std::string> seriesName;

  BindingKey key() const { return {classLabel, instanceOrdinal}; }
  friend bool operator==(const Binding&, const Binding&) = default;
};

struct CompositeTemplate {
  std::string title;
  friend bool operator==(const CompositeTemplate&, const CompositeTemplate&) = default;
};

struct SceneConfig {
  std::string name;
  std::set<VisCommand> enabledCommands;
  std::vector<Binding> bindings;
  std::vector<condition::ConditionSpec> conditions;
  std::map<charts::CompositionKind, CompositeTemplate> compositionRegistry;

  bool enabled(VisCommand c) const { return enabledCommands.count(c) > 0; }
  const Binding* find_binding(const BindingKey& key) const;
  friend bool operator==(const SceneConfig&, const SceneConfig&) = default;
};

struct Presentation {
  std::map<std::string, ChartSpec> charts;
  std::vector<SceneConfig> scenes;
  int currentIndex = 0;
  tracking::TrackParams trackParams;
  events::EventParams eventParams;
  layout::LayoutWeights layoutWeights;
  charts::ChartParams chartParams;

  const SceneConfig& current() const { return scenes.at(static_cast<std::size_t>(currentIndex)); }
};

struct PanelBinding {
  std::string object;
  std::string chartTitle;
  friend bool operator==(const PanelBinding&, const PanelBinding&) = default;
};

struct PanelSwap {
  std::string conditionPrompt;
  std::string target;
  std::string chartTitle;
  friend bool operator==(const PanelSwap&, const PanelSwap&) = default;
};

/// Presenter-only cue card for the current scene.
struct PresenterPanel {
  std::string sceneName;
  int sceneIndex = 0;
  int sceneCount = 0;
  std::vector<PanelBinding> objectToChart;
  std::vector<VisCommand> activeCommands;
  std::vector<PanelSwap> registeredSwaps;
  std::vector<std::string> registeredCompositions;
  friend bool operator==(const PresenterPanel&, const PresenterPanel&) = default;
};

struct SceneRuntime {
  std::map<ObjectId, charts::VisInstance> visible;    // singleton charts on screen
  std::map<PairKey, charts::VisInstance> composites;  // composite charts on screen
  std::set<ObjectId> detailMode;
  std::set<ObjectId> annotations;
  std::set<std::pair<std::string, std::size_t>> activeSwaps;  // (conditionId, swap index)
  int nextVisId = 1;
  PresenterPanel panel;

  std::optional<PairKey> composite_of(ObjectId id) const;
  /// Every chart on screen, ascending visId.
  std::vector<const charts::VisInstance*> on_screen() const;
};

enum class EffectKind {
  ShowChart,
  HideChart,
  ShowComposite,
  HideComposite,
  HighlightSeries,
  UnhighlightSeries,
  SelectPoint,
  DeselectPoint,
  ShowAnnotation,
  HideAnnotation,
  SwapChart,
  RestoreChart,
  EnterDetail,
  ExitDetail,
  ClearScene,
};

std::string_view to_string(EffectKind k);
std::optional<EffectKind> effect_kind_from_string(std::string_view s);

struct VisEffect {
  EffectKind kind = EffectKind::ShowChart;
  std::optional<int> visId;
  std::optional<ObjectId> object;
  std::optional<std::string> title;
  std::optional<ChartType> chartType;
  std::optional<charts::CompositionKind> composition;
  std::optional<std::string> series;
  std::optional<std::string> category;
  std::optional<std::string> text;
  std::optional<std::string> imageRef;
  friend bool operator==(const VisEffect&, const VisEffect&) = default;
};

struct DispatchResult {
  std::vector<VisEffect> effects;
  /// Why the event changed nothing, when it did not ("Masked",
  /// "UnboundObject", ...).
  std::optional<std::string> diagnostic;
};

/// The command an event exercises; nullopt for events that are never masked.
/// Condition events are masked per registered swap instead.
std::optional<VisCommand> implied_command(const events::ManipulationEvent& e);

const Binding* resolve_binding(const tracking::TrackedObject& track, const SceneConfig& scene);

/// Chart currently in force for a binding: a swap registered by an active
/// condition wins over the authored chart; `detail` selects the detail variant.
ChartSpec effective_chart(const SceneConfig& scene, const SceneRuntime& rt,
                          const Binding& binding, bool detail);
std::optional<Annotation> effective_annotation(const SceneConfig& scene,
                                               const SceneRuntime& rt,
                                               const Binding& binding);

/// Whether a join of these two tracks would produce a composite here.
bool can_compose(const SceneConfig& scene, const SceneRuntime& rt,
                 const tracking::TrackedObject& a, const tracking::TrackedObject& b);

/// Applies one event. `tracks` must contain every object the event names
/// (live tracks plus this frame's deaths).
DispatchResult dispatch(const events::ManipulationEvent& event, const SceneConfig& scene,
                        SceneRuntime& rt, std::span<const tracking::TrackedObject> tracks);

enum class Direction { Next, Prev };

/// Moves the scene index, clamped to the scene list (no wraparound).
Presentation advance_scene(Presentation p, Direction direction);

/// Fresh runtime for the presentation's current scene.
SceneRuntime enter_scene(const Presentation& p);

PresenterPanel build_panel(const SceneConfig& scene, const SceneRuntime& rt, int sceneIndex,
                           int sceneCount);

}  // namespace tabletale::scene
