// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>

#include "support.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

Run cli(const std::string& args) {
  static int n = 0;
  const auto dir = std::filesystem::temp_directory_path() / "tabletale-test-cli-io";
  std::filesystem::create_directories(dir);
  const auto out = dir / ("out" + std::to_string(n) + ".txt");
  const auto err = dir / ("err" + std::to_string(n++) + ".txt");
  const std::string cmd = quote(TT_CLI_PATH) + " " + args + " >" + quote(out.string()) + " 2>" + quote(err.string());
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, tt_test::slurp(out), tt_test::slurp(err)};
}

std::string fx(const std::string& name) { return quote(tt_test::fixture(name).string()); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

nlohmann::json bench(const std::string& stream, int repeat) {
  auto r = cli("bench --stream " + fx(stream) + " --config " + fx("desk.json") + " --repeat " +
               std::to_string(repeat));
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("replay summary on the wine fixture") {
    const auto dir = tt_test::scratch("cli-wine");
    auto r = cli("replay --stream " + fx("wine.stream.jsonl") + " --config " + fx("wine.json") +
                 " --out-events " + quote((dir / "e.jsonl").string()) + " --out-render " +
                 quote((dir / "r.jsonl").string()) + " --summary");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("  ProximityJoin 1") != std::string::npos);
    CHECK(r.out.find("  ConditionMet 1") != std::string::npos);
    CHECK(r.out.find("latency_ms median=") != std::string::npos);
    auto logs = tt_test::replay_logs(tabletale::io::load_stream(tt_test::fixture("wine.stream.jsonl")),
                                     tabletale::io::load_presentation(tt_test::fixture("wine.json")));
    CHECK(tt_test::slurp(dir / "e.jsonl") == logs.events);
    CHECK(tt_test::slurp(dir / "r.jsonl") == logs.render);
  }

  TEST_CASE("empty stream writes headers only") {
    const auto dir = tt_test::scratch("cli-empty");
    std::ifstream in(tt_test::fixture("wine.stream.jsonl"));
    std::string header;
    std::getline(in, header);
    std::ofstream(dir / "s.jsonl") << header << "\n";
    auto r = cli("replay --stream " + quote((dir / "s.jsonl").string()) + " --config " + fx("wine.json") +
                 " --out-events " + quote((dir / "e.jsonl").string()) + " --out-render " +
                 quote((dir / "r.jsonl").string()));
    CHECK(r.code == 0);
    auto ev = lines_of(tt_test::slurp(dir / "e.jsonl"));
    auto rn = lines_of(tt_test::slurp(dir / "r.jsonl"));
    REQUIRE(ev.size() == 1);
    REQUIRE(rn.size() == 1);
    CHECK(nlohmann::json::parse(ev[0]).at("type") == "header");
    CHECK(nlohmann::json::parse(rn[0]).at("type") == "header");
  }

  TEST_CASE("corrupt line 7 exits 1 naming the line") {
    const auto dir = tt_test::scratch("cli-corrupt");
    auto lines = lines_of(tt_test::slurp(tt_test::fixture("wine.stream.jsonl")));
    lines[6] = "{\"frameIndex\": 5, \"timestamp\": ";
    std::ofstream out(dir / "s.jsonl");
    for (const auto& l : lines) out << l << "\n";
    out.close();
    auto r = cli("replay --stream " + quote((dir / "s.jsonl").string()) + " --config " + fx("wine.json") +
                 " --out-events " + quote((dir / "e.jsonl").string()) + " --out-render " +
                 quote((dir / "r.jsonl").string()));
    CHECK(r.code == 1);
    CHECK(r.err.find("line 7") != std::string::npos);
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(cli("synth --scenario nope --seed 1 --out /dev/null").code == 2);
    CHECK(cli("").code == 2);
    CHECK(cli("replay --bogus").code == 2);
    CHECK(cli("frobnicate").code == 2);
  }

  TEST_CASE("validate exits 3 exactly when errors are found") {
    for (const char* cfg : {"wine.json", "ev.json", "fruit.json", "desk.json", "property.json"}) {
      CAPTURE(cfg);
      auto r = cli(std::string("validate --config ") + fx(cfg));
      CHECK(r.code == 0);
      CHECK(r.out.find(" 0 error(s)") != std::string::npos);
    }
    const auto dir = tt_test::scratch("cli-validate");
    auto cfg = nlohmann::json::parse(tt_test::slurp(tt_test::fixture("wine.json")));
    cfg["scenes"][0]["bindings"][0]["chart"] = "missing-chart";
    std::ofstream(dir / "c.json") << cfg.dump(2);
    auto r = cli("validate --config " + quote((dir / "c.json").string()));
    CHECK(r.code == 3);
    CHECK(r.err.find("scenes[0].bindings[0].chart") != std::string::npos);
  }

  TEST_CASE("synth twice with one seed gives identical files") {
    const auto dir = tt_test::scratch("cli-synth");
    const auto a = quote((dir / "a.jsonl").string()), b = quote((dir / "b.jsonl").string());
    REQUIRE(cli("synth --scenario wine --seed 1 --out " + a).code == 0);
    REQUIRE(cli("synth --scenario wine --seed 1 --out " + b).code == 0);
    CHECK(tt_test::slurp(dir / "a.jsonl") == tt_test::slurp(dir / "b.jsonl"));
    CHECK(tt_test::slurp(dir / "a.jsonl") == tt_test::slurp(tt_test::fixture("wine.stream.jsonl")));
  }

  TEST_CASE("bench reports per-run statistics and variance") {
    auto j = bench("desk-6.stream.jsonl", 3);
    CHECK(j.at("repeat") == 3);
    CHECK(j.at("runMediansMs").size() == 3);
    CHECK(j.at("runP95sMs").size() == 3);
    CHECK(j.at("varianceMs2").get<double>() >= 0);
    CHECK(j.at("runMedianVarianceMs2").get<double>() >= 0);
    CHECK(j.at("medianMs").get<double>() <= j.at("p95Ms").get<double>());
    CHECK(j.at("p95Ms").get<double>() <= j.at("maxMs").get<double>());
  }

  TEST_CASE("one object benches faster than six") {
    auto one = bench("desk-1.stream.jsonl", 5);
    auto six = bench("desk-6.stream.jsonl", 5);
    CHECK(one.at("medianMs").get<double>() < six.at("medianMs").get<double>());
  }
}
