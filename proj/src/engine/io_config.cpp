// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>

#include "engine/io.hpp"

namespace tabletale::io {

namespace {

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

Json load_config_rec(const std::filesystem::path& path, std::vector<std::filesystem::path>& chain) {
  auto canon = std::filesystem::weakly_canonical(path);
  if (std::find(chain.begin(), chain.end(), canon) != chain.end())
    throw Error(ErrorCode::Validation, "extends cycle through " + path.string());
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = line_of(text, e.byte);
    throw Error(ErrorCode::MalformedRecord,
                path.string() + ":" + std::to_string(line) + ": " + e.what(), line);
  }
  if (!j.is_object())
    throw Error(ErrorCode::MalformedRecord, path.string() + ": config must be an object");
  auto ext = j.find("extends");
  if (ext == j.end()) return j;
  if (!ext->is_string())
    throw Error(ErrorCode::MalformedRecord, path.string() + ": extends must be a string");
  chain.push_back(canon);
  Json base = load_config_rec(path.parent_path() / ext->get<std::string>(), chain);
  chain.pop_back();
  j.erase("extends");
  base.merge_patch(j);
  return base;
}

// Single pass over a config document that both collects issues and builds
// the presentation; the presentation is only trusted when no error was found.
class ConfigReader {
 public:
  std::vector<Issue> issues;
  scene::Presentation out;

  void read(const Json& cfg) {
    if (!cfg.is_object()) {
      error("TypeMismatch", "", "config must be an object");
      return;
    }
    known(cfg,
          {"chartParams", "charts", "eventParams", "extends", "layoutWeights", "scenes",
           "schemaVersion", "trackParams"},
          "");
    auto ver = cfg.find("schemaVersion");
    if (ver == cfg.end())
      error("MissingField", "schemaVersion", "schemaVersion is required");
    else if (*ver != kSchemaVersion)
      error("SchemaMismatch", "schemaVersion", "unsupported schemaVersion (expected 1)");

    read_track_params(sub(cfg, "trackParams"));
    read_event_params(sub(cfg, "eventParams"));
    read_layout_weights(sub(cfg, "layoutWeights"));
    read_chart_params(sub(cfg, "chartParams"));
    read_charts(sub(cfg, "charts"));
    read_scenes(cfg);
  }

 private:
  std::map<std::string, ChartSpec> raw_;
  std::map<std::string, std::string> detailOf_;

  void error(std::string code, std::string path, std::string message) {
    issues.push_back({Severity::Error, std::move(code), std::move(path), std::move(message)});
  }
  void warn(std::string code, std::string path, std::string message) {
    issues.push_back({Severity::Warning, std::move(code), std::move(path), std::move(message)});
  }

  static std::string join(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
  }
  static std::string index(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
  }

  const Json* sub(const Json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) return nullptr;
    if (!it->is_object()) {
      error("TypeMismatch", key, std::string(key) + " must be an object");
      return nullptr;
    }
    return &*it;
  }

  void known(const Json& obj, std::initializer_list<std::string_view> keys,
             const std::string& path) {
    for (const auto& [key, value] : obj.items())
      if (std::find(keys.begin(), keys.end(), key) == keys.end())
        error("UnknownField", join(path, key), "unknown field '" + key + "'");
  }

  bool is_object(const Json& j, const std::string& path) {
    if (j.is_object()) return true;
    error("TypeMismatch", path, path + " must be an object");
    return false;
  }

  const Json* array(const Json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) return nullptr;
    if (!it->is_array()) {
      error("TypeMismatch", join(path, key), std::string(key) + " must be an array");
      return nullptr;
    }
    return &*it;
  }

  // Reads an optional number; a wrong type is reported and leaves `v` as is.
  void number(const Json& obj, const char* key, const std::string& path, double& v) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number())
      error("TypeMismatch", join(path, key), std::string(key) + " must be a number");
    else
      v = it->get<double>();
  }

  void integer(const Json& obj, const char* key, const std::string& path, int& v) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number_integer())
      error("TypeMismatch", join(path, key), std::string(key) + " must be an integer");
    else
      v = it->get<int>();
  }

  std::optional<std::string> string(const Json& obj, const char* key, const std::string& path,
                                    bool requiredNonEmpty) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (requiredNonEmpty) error("MissingField", join(path, key), std::string(key) + " is required");
      return std::nullopt;
    }
    if (!it->is_string()) {
      error("TypeMismatch", join(path, key), std::string(key) + " must be a string");
      return std::nullopt;
    }
    auto s = it->get<std::string>();
    if (requiredNonEmpty && s.empty())
      error("EmptyField", join(path, key), std::string(key) + " must be non-empty");
    return s;
  }

  void positive(double v, const std::string& path, const char* name) {
    if (!(v > 0)) error("OutOfRange", path, std::string(name) + " must be > 0");
  }
  void non_negative(double v, const std::string& path, const char* name) {
    if (!(v >= 0)) error("OutOfRange", path, std::string(name) + " must be >= 0");
  }

  void read_track_params(const Json* j) {
    auto& p = out.trackParams;
    const std::string base = "trackParams";
    if (j) {
      known(*j, {"calibrationMinSamples", "gateRadius", "trackLossFrames"}, base);
      number(*j, "gateRadius", base, p.gateRadius);
      integer(*j, "trackLossFrames", base, p.trackLossFrames);
      integer(*j, "calibrationMinSamples", base, p.calibrationMinSamples);
    }
    positive(p.gateRadius, base + ".gateRadius", "gateRadius");
    if (p.trackLossFrames < 0)
      error("OutOfRange", base + ".trackLossFrames", "trackLossFrames must be >= 0");
    if (p.calibrationMinSamples < 1)
      error("OutOfRange", base + ".calibrationMinSamples", "calibrationMinSamples must be >= 1");
  }

  void read_event_params(const Json* j) {
    auto& p = out.eventParams;
    const std::string base = "eventParams";
    if (j) {
      known(*j,
            {"bandHysteresis", "dwellSeconds", "farBand", "joinDistance", "liftOffHeight",
             "liftOnHeight", "nearBand", "orientationCutoffDeg", "pointingHand", "snapRadius",
             "splitDistance", "stationaryEpsilon", "stationaryWindow"},
            base);
      number(*j, "liftOnHeight", base, p.liftOnHeight);
      number(*j, "liftOffHeight", base, p.liftOffHeight);
      number(*j, "joinDistance", base, p.joinDistance);
      number(*j, "splitDistance", base, p.splitDistance);
      number(*j, "orientationCutoffDeg", base, p.orientationCutoffDeg);
      number(*j, "dwellSeconds", base, p.dwellSeconds);
      number(*j, "nearBand", base, p.nearBand);
      number(*j, "farBand", base, p.farBand);
      number(*j, "bandHysteresis", base, p.bandHysteresis);
      number(*j, "stationaryEpsilon", base, p.stationaryEpsilon);
      integer(*j, "stationaryWindow", base, p.stationaryWindow);
      number(*j, "snapRadius", base, p.snapRadius);
      if (auto hand = string(*j, "pointingHand", base, false)) {
        if (auto side = hand_side_from_string(*hand))
          p.pointingHand = *side;
        else
          error("UnknownHand", base + ".pointingHand", "pointingHand must be left or right");
      }
    }
    positive(p.liftOnHeight, base + ".liftOnHeight", "liftOnHeight");
    positive(p.liftOffHeight, base + ".liftOffHeight", "liftOffHeight");
    if (p.liftOffHeight >= p.liftOnHeight)
      error("ThresholdOrder", base + ".liftOffHeight", "liftOffHeight must be < liftOnHeight");
    positive(p.joinDistance, base + ".joinDistance", "joinDistance");
    positive(p.splitDistance, base + ".splitDistance", "splitDistance");
    if (p.joinDistance >= p.splitDistance)
      error("ThresholdOrder", base + ".joinDistance", "joinDistance must be < splitDistance");
    if (!(p.orientationCutoffDeg > 0 && p.orientationCutoffDeg < 90))
      error("OutOfRange", base + ".orientationCutoffDeg", "orientationCutoffDeg must be in (0, 90)");
    positive(p.dwellSeconds, base + ".dwellSeconds", "dwellSeconds");
    positive(p.nearBand, base + ".nearBand", "nearBand");
    positive(p.farBand, base + ".farBand", "farBand");
    if (p.nearBand >= p.farBand)
      error("ThresholdOrder", base + ".nearBand", "nearBand must be < farBand");
    non_negative(p.bandHysteresis, base + ".bandHysteresis", "bandHysteresis");
    if (p.bandHysteresis >= p.nearBand || 2 * p.bandHysteresis >= p.farBand - p.nearBand)
      error("OutOfRange", base + ".bandHysteresis",
            "bandHysteresis must be < nearBand and < (farBand - nearBand) / 2");
    non_negative(p.stationaryEpsilon, base + ".stationaryEpsilon", "stationaryEpsilon");
    if (p.stationaryWindow < 1)
      error("OutOfRange", base + ".stationaryWindow", "stationaryWindow must be >= 1");
    non_negative(p.snapRadius, base + ".snapRadius", "snapRadius");
  }

  void read_layout_weights(const Json* j) {
    auto& w = out.layoutWeights;
    const std::string base = "layoutWeights";
    if (j) {
      known(*j, {"margin", "smoothingAlpha", "wFace", "wObject", "wPrev", "wTop", "wVis"}, base);
      number(*j, "wFace", base, w.wFace);
      number(*j, "wObject", base, w.wObject);
      number(*j, "wVis", base, w.wVis);
      number(*j, "wTop", base, w.wTop);
      number(*j, "wPrev", base, w.wPrev);
      number(*j, "smoothingAlpha", base, w.smoothingAlpha);
      number(*j, "margin", base, w.margin);
    }
    non_negative(w.wFace, base + ".wFace", "wFace");
    non_negative(w.wObject, base + ".wObject", "wObject");
    non_negative(w.wVis, base + ".wVis", "wVis");
    non_negative(w.wTop, base + ".wTop", "wTop");
    non_negative(w.wPrev, base + ".wPrev", "wPrev");
    if (!(w.smoothingAlpha > 0 && w.smoothingAlpha <= 1))
      error("OutOfRange", base + ".smoothingAlpha", "smoothingAlpha must be in (0, 1]");
    non_negative(w.margin, base + ".margin", "margin");
  }

  void read_chart_params(const Json* j) {
    auto& p = out.chartParams;
    const std::string base = "chartParams";
    if (j) {
      known(*j, {"baseHeight", "baseWidth", "refDistance", "scaleMax", "scaleMin"}, base);
      number(*j, "refDistance", base, p.refDistance);
      number(*j, "scaleMin", base, p.scaleMin);
      number(*j, "scaleMax", base, p.scaleMax);
      number(*j, "baseWidth", base, p.baseWidth);
      number(*j, "baseHeight", base, p.baseHeight);
    }
    positive(p.refDistance, base + ".refDistance", "refDistance");
    positive(p.scaleMin, base + ".scaleMin", "scaleMin");
    if (p.scaleMax < p.scaleMin)
      error("ThresholdOrder", base + ".scaleMax", "scaleMax must be >= scaleMin");
    positive(p.baseWidth, base + ".baseWidth", "baseWidth");
    positive(p.baseHeight, base + ".baseHeight", "baseHeight");
  }

  void read_charts(const Json* charts) {
    if (!charts) {
      error("MissingField", "charts", "charts is required");
      return;
    }
    for (const auto& [name, cj] : charts->items()) {
      const std::string path = "charts." + name;
      if (name.empty()) error("EmptyField", path, "chart names must be non-empty");
      if (!is_object(cj, path)) continue;
      known(cj, {"chartType", "detail", "series", "sourceTag", "title"}, path);
      ChartSpec c;
      if (auto t = string(cj, "chartType", path, true)) {
        if (auto type = chart_type_from_string(*t))
          c.chartType = *type;
        else if (!t->empty())
          error("UnknownChartType", path + ".chartType", "unknown chartType '" + *t + "'");
      }
      c.title = string(cj, "title", path, true).value_or("");
      c.sourceTag = string(cj, "sourceTag", path, false).value_or("");
      if (auto d = string(cj, "detail", path, false)) {
        if (d->empty()) error("EmptyField", path + ".detail", "detail must be non-empty");
        detailOf_[name] = *d;
      }
      read_series(cj, path, c);
      raw_[name] = std::move(c);
    }
    for (const auto& [name, detail] : detailOf_) {
      const std::string path = "charts." + name + ".detail";
      auto it = raw_.find(detail);
      if (it == raw_.end()) {
        if (!detail.empty())
          error("DanglingChart", path, "chart '" + name + "' detail references undefined chart '" +
                                           detail + "'");
      } else if (it->second.sourceTag != raw_[name].sourceTag) {
        error("DetailSourceMismatch", path,
              "detail chart '" + detail + "' has a different sourceTag than '" + name + "'");
      }
    }
    for (const auto& [name, spec] : raw_) {
      std::vector<std::string> chain;
      out.charts[name] = resolve(name, chain);
    }
  }

  void read_series(const Json& cj, const std::string& path, ChartSpec& c) {
    const Json* series = array(cj, "series", path);
    if (!series) {
      if (!cj.contains("series")) error("MissingField", path + ".series", "series is required");
      return;
    }
    if (series->empty()) error("EmptySeries", path + ".series", "series must be non-empty");
    std::set<std::string> names;
    for (std::size_t i = 0; i < series->size(); ++i) {
      const Json& sj = (*series)[i];
      const std::string spath = index(path + ".series", i);
      if (!is_object(sj, spath)) continue;
      known(sj, {"name", "points"}, spath);
      DataSeries ds;
      ds.name = string(sj, "name", spath, true).value_or("");
      if (!ds.name.empty() && !names.insert(ds.name).second)
        error("DuplicateSeries", spath + ".name", "duplicate series name '" + ds.name + "'");
      const Json* points = array(sj, "points", spath);
      if (!points && !sj.contains("points"))
        error("MissingField", spath + ".points", "points is required");
      std::set<std::string> cats;
      for (std::size_t k = 0; points && k < points->size(); ++k) {
        const Json& pj = (*points)[k];
        const std::string ppath = index(spath + ".points", k);
        if (!is_object(pj, ppath)) continue;
        known(pj, {"category", "value"}, ppath);
        DataPoint p;
        p.category = string(pj, "category", ppath, true).value_or("");
        if (!p.category.empty() && !cats.insert(p.category).second)
          error("DuplicateCategory", ppath + ".category",
                "duplicate category '" + p.category + "' in series '" + ds.name + "'");
        if (!pj.contains("value"))
          error("MissingField", ppath + ".value", "value is required");
        number(pj, "value", ppath, p.value);
        if (!std::isfinite(p.value))
          error("OutOfRange", ppath + ".value", "value must be finite");
        else if ((c.chartType == ChartType::Pie || c.chartType == ChartType::Donut) && p.value < 0)
          error("OutOfRange", ppath + ".value", "pie and donut values must be >= 0");
        ds.points.push_back(std::move(p));
      }
      c.series.push_back(std::move(ds));
    }
  }

  ChartSpec resolve(const std::string& name, std::vector<std::string>& chain) {
    ChartSpec c = raw_.at(name);
    auto d = detailOf_.find(name);
    if (d == detailOf_.end() || !raw_.count(d->second)) return c;
    if (std::find(chain.begin(), chain.end(), d->second) != chain.end() || d->second == name) {
      if (chain.empty())
        error("DetailCycle", "charts." + name + ".detail",
              "detail chain of '" + name + "' loops back on itself");
      return c;
    }
    chain.push_back(name);
    c.detailVariant = std::make_shared<const ChartSpec>(resolve(d->second, chain));
    chain.pop_back();
    return c;
  }

  const ChartSpec* chart_ref(const std::string& name, const std::string& path,
                             const std::string& context) {
    if (name.empty()) return nullptr;
    auto it = out.charts.find(name);
    if (it != out.charts.end()) return &it->second;
    error("DanglingChart", path, context + " references undefined chart '" + name + "'");
    return nullptr;
  }

  std::optional<Annotation> annotation(const Json& obj, const std::string& path) {
    auto it = obj.find("annotation");
    if (it == obj.end()) return std::nullopt;
    const std::string apath = path + ".annotation";
    if (!is_object(*it, apath)) return std::nullopt;
    known(*it, {"image", "text"}, apath);
    Annotation a;
    a.imageRef = string(*it, "image", apath, false).value_or("");
    a.text = string(*it, "text", apath, false).value_or("");
    if (a.imageRef.empty() && a.text.empty())
      error("EmptyAnnotation", apath, "annotation needs an image or text");
    return a;
  }

  void read_scenes(const Json& cfg) {
    const Json* scenes = array(cfg, "scenes", "");
    if (!scenes) {
      if (!cfg.contains("scenes")) error("MissingField", "scenes", "scenes is required");
      return;
    }
    if (scenes->empty()) error("NoScenes", "scenes", "a presentation needs at least one scene");
    std::set<std::string> names;
    for (std::size_t i = 0; i < scenes->size(); ++i) {
      const std::string path = index("scenes", i);
      const Json& sj = (*scenes)[i];
      if (!is_object(sj, path)) continue;
      known(sj, {"bindings", "compositions", "conditions", "enabledCommands", "name"}, path);
      scene::SceneConfig s;
      s.name = string(sj, "name", path, true).value_or("");
      if (!s.name.empty() && !names.insert(s.name).second)
        error("DuplicateScene", path + ".name", "duplicate scene name '" + s.name + "'");
      if (const Json* cmds = array(sj, "enabledCommands", path)) {
        for (std::size_t k = 0; k < cmds->size(); ++k) {
          const std::string cpath = index(path + ".enabledCommands", k);
          auto cmd = (*cmds)[k].is_string()
                         ? vis_command_from_string((*cmds)[k].get<std::string>())
                         : std::nullopt;
          if (cmd)
            s.enabledCommands.insert(*cmd);
          else
            error("UnknownCommand", cpath, "unknown visualization command");
        }
      }
      read_bindings(sj, path, s);
      read_conditions(sj, path, s);
      read_compositions(sj, path, s);
      out.scenes.push_back(std::move(s));
    }
  }

  void read_bindings(const Json& sj, const std::string& path, scene::SceneConfig& s) {
    const Json* bindings = array(sj, "bindings", path);
    if (!bindings) return;
    for (std::size_t k = 0; k < bindings->size(); ++k) {
      const std::string bpath = index(path + ".bindings", k);
      const Json& bj = (*bindings)[k];
      if (!is_object(bj, bpath)) continue;
      known(bj, {"annotation", "chart", "object", "ordinal", "series"}, bpath);
      scene::Binding b;
      b.classLabel.label = string(bj, "object", bpath, true).value_or("");
      integer(bj, "ordinal", bpath, b.instanceOrdinal);
      if (b.instanceOrdinal < 1) error("OutOfRange", bpath + ".ordinal", "ordinal must be >= 1");
      const std::string context = "scene '" + s.name + "' binding " + b.key().str();
      if (s.find_binding(b.key()))
        error("DuplicateBinding", bpath, context + " is bound more than once");
      b.chartName = string(bj, "chart", bpath, true).value_or("");
      const ChartSpec* chart = chart_ref(b.chartName, bpath + ".chart", context);
      if (chart) b.chart = *chart;
      b.annotation = annotation(bj, bpath);
      b.seriesName = string(bj, "series", bpath, false);
      if (b.seriesName && chart && !chart->find_series(*b.seriesName))
        error("UnknownSeries", bpath + ".series",
              context + " selects series '" + *b.seriesName + "' absent from chart '" +
                  b.chartName + "'");
      s.bindings.push_back(std::move(b));
    }
  }

  void read_conditions(const Json& sj, const std::string& path, scene::SceneConfig& s) {
    const Json* conds = array(sj, "conditions", path);
    if (!conds) return;
    std::set<std::string> ids;
    for (std::size_t k = 0; k < conds->size(); ++k) {
      const std::string cpath = index(path + ".conditions", k);
      const Json& cj = (*conds)[k];
      if (!is_object(cj, cpath)) continue;
      known(cj, {"debounceCount", "id", "latching", "pollIntervalSeconds", "prompt", "swaps"}, cpath);
      condition::ConditionSpec c;
      c.conditionId = string(cj, "id", cpath, true).value_or("");
      if (!c.conditionId.empty() && !ids.insert(c.conditionId).second)
        error("DuplicateCondition", cpath + ".id", "duplicate condition id '" + c.conditionId + "'");
      c.prompt = string(cj, "prompt", cpath, true).value_or("");
      if (condition::is_first_person_prompt(c.prompt))
        warn("FirstPersonPrompt", cpath + ".prompt",
             "prompt '" + c.prompt + "' is phrased in the first person; describe the scene instead");
      number(cj, "pollIntervalSeconds", cpath, c.pollIntervalSeconds);
      positive(c.pollIntervalSeconds, cpath + ".pollIntervalSeconds", "pollIntervalSeconds");
      integer(cj, "debounceCount", cpath, c.debounceCount);
      if (c.debounceCount < 1)
        error("OutOfRange", cpath + ".debounceCount", "debounceCount must be >= 1");
      if (auto it = cj.find("latching"); it != cj.end()) {
        if (it->is_boolean())
          c.latching = it->get<bool>();
        else
          error("TypeMismatch", cpath + ".latching", "latching must be a boolean");
      }
      if (const Json* swaps = array(cj, "swaps", cpath)) {
        for (std::size_t m = 0; m < swaps->size(); ++m) {
          const std::string wpath = index(cpath + ".swaps", m);
          const Json& wj = (*swaps)[m];
          if (!is_object(wj, wpath)) continue;
          known(wj, {"annotation", "chart", "target"}, wpath);
          condition::SwapSpec w;
          w.target = string(wj, "target", wpath, true).value_or("");
          auto key = scene::BindingKey::parse(w.target);
          if (!w.target.empty() && !key)
            error("BadTarget", wpath + ".target", "target must look like class#ordinal");
          else if (key && !s.find_binding(*key))
            error("UnboundTarget", wpath + ".target",
                  "scene '" + s.name + "' has no binding " + w.target);
          w.chartName = string(wj, "chart", wpath, false);
          if (w.chartName) {
            if (const ChartSpec* chart = chart_ref(*w.chartName, wpath + ".chart",
                                                   "condition '" + c.conditionId + "' swap"))
              w.chart = *chart;
            else if (w.chartName->empty())
              error("EmptyField", wpath + ".chart", "chart must be non-empty");
          }
          w.annotation = annotation(wj, wpath);
          if (!w.chartName && !w.annotation)
            error("EmptySwap", wpath, "a swap needs a chart or an annotation");
          c.swaps.push_back(std::move(w));
        }
      }
      s.conditions.push_back(std::move(c));
    }
  }

  void read_compositions(const Json& sj, const std::string& path, scene::SceneConfig& s) {
    auto it = sj.find("compositions");
    if (it == sj.end()) return;
    const std::string cpath = path + ".compositions";
    if (!is_object(*it, cpath)) return;
    for (const auto& [name, tj] : it->items()) {
      const std::string tpath = cpath + "." + name;
      auto kind = charts::composition_kind_from_string(name);
      if (!kind) {
        error("UnknownComposition", tpath, "unknown composition '" + name + "'");
        continue;
      }
      if (!is_object(tj, tpath)) continue;
      known(tj, {"title"}, tpath);
      s.compositionRegistry[*kind] = {string(tj, "title", tpath, false).value_or("")};
    }
  }
};

}  // namespace

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

Json load_config_json(const std::filesystem::path& path) {
  std::vector<std::filesystem::path> chain;
  return load_config_rec(path, chain);
}

std::vector<Issue> validate_config(const Json& cfg) {
  ConfigReader r;
  r.read(cfg);
  return r.issues;
}

std::size_t error_count(const std::vector<Issue>& issues) {
  return static_cast<std::size_t>(std::count_if(issues.begin(), issues.end(), [](const Issue& i) {
    return i.severity == Severity::Error;
  }));
}

scene::Presentation build_presentation(const Json& cfg) {
  ConfigReader r;
  r.read(cfg);
  for (const auto& issue : r.issues)
    if (issue.severity == Severity::Error)
      throw Error(ErrorCode::Validation, issue.path + ": " + issue.message);
  return std::move(r.out);
}

scene::Presentation load_presentation(const std::filesystem::path& path) {
  return build_presentation(load_config_json(path));
}

}  // namespace tabletale::io
