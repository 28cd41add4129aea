// Copyright 2026 The nullweak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nullweak/scenario_io.hpp"

#include <gtest/gtest.h>

#include "nullweak/setups.hpp"

namespace nullweak::cli {
namespace {

const std::string kData = NULLWEAK_DATA_DIR;

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text, "doc");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(Load, BuiltinFileDelegatesToBuilder) {
  const auto s = load(kData + "/nested_mzi.json");
  const auto ref = setups::build_nested_mzi();
  ASSERT_EQ(s.probes.size(), ref.scenario.probes.size());
  for (std::size_t i = 0; i < s.probes.size(); ++i) {
    EXPECT_EQ(s.probes[i].label, ref.scenario.probes[i].label);
    const auto& p = s.probes[i];
    const auto w = protocol::weak_value(s, p.observable, p.slice);
    const auto wr = protocol::weak_value(ref.scenario, p.observable, p.slice);
    EXPECT_EQ(w, wr);
  }
  EXPECT_LE(std::abs(s.forward_state(3).amplitude({"E'", std::nullopt})), 1e-12);
}

TEST(Load, MalformedAmplitudeNamesTheKey) {
  try {
    load(kData + "/malformed.json");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("preselect[1][1]"), std::string::npos) << e.what();
  }
}

TEST(Load, MissingFile) { EXPECT_THROW(load(kData + "/nope.json"), ParseError); }

TEST(Load, HandWrittenBalancedInterferometer) {
  // Postselecting the bright port projects back onto the preselected state:
  // each arm then has weak value |1/sqrt2|^2 = 1/2.
  const auto s = load(kData + "/balanced_mzi.json");
  ASSERT_EQ(s.probes.size(), 2u);
  for (const auto& p : s.probes) {
    const auto w = protocol::weak_value(s, p.observable, p.slice);
    EXPECT_NEAR(w.real(), 0.5, 1e-12) << p.label;
    EXPECT_NEAR(w.imag(), 0.0, 1e-12) << p.label;
  }
}

TEST(Load, SpinGatesAndObservables) {
  const auto s = load(kData + "/spin_probe.json");
  ASSERT_EQ(s.probes.size(), 3u);
  EXPECT_EQ(s.stages.slice_count(), 4u);
  const auto rows = run(s, RunFlags{.analytic = true});
  for (const auto& r : rows) EXPECT_TRUE(r.error.empty()) << r.error;
  // Localized J_z on the lower rail: only m = 0, -1 live there, with m = 0 postselected.
  EXPECT_NEAR(rows[0].weak_value->real(), 0.0, 1e-12);
}

TEST(Parse, SyntaxErrorReportsLine) {
  const std::string e = error_of("{\n  \"basis\": {\"paths\": [\"a\"]},\n  oops\n}");
  EXPECT_NE(e.find("doc:3"), std::string::npos) << e;
}

TEST(Parse, Diagnostics) {
  const std::string head = R"({"basis": {"paths": ["a", "b"]}, "preselect": {"a": [1, 0]}, )";
  EXPECT_NE(error_of(head + R"("stages": [{"gate": "warp", "paths": ["a"]}], "postselect": {"a": [1, 0]}})")
                .find("unknown gate"),
            std::string::npos);
  EXPECT_NE(error_of(head + R"("stages": [], "postselect": {"a": [1, 0]}, "probes": [{"slice": 4, "region": "a"}]})")
                .find("probes[0].slice"),
            std::string::npos);
  EXPECT_NE(error_of(head + R"("stages": [], "postselect": {"z": [1, 0]}})").find("postselect.z"),
            std::string::npos);
  EXPECT_NE(error_of(head + R"("postselect": {"a": [1, 0]}})").find("'stages': missing"), std::string::npos);
  EXPECT_NE(error_of(head + R"("stages": [{"matrix": [[[1,0],[0,0]],[[0,0],[2,0]]]}], "postselect": {"a": [1, 0]}})")
                .find("U^dagger U"),
            std::string::npos);
  EXPECT_THROW(parse_scenario(R"({"builtin": "four-path"})"), ValidationError);
  EXPECT_THROW(parse_scenario("[1, 2]"), ParseError);
}

TEST(Parse, BuiltinOverrides) {
  const auto s = parse_scenario(R"({"builtin": "three-path", "alpha": 0.7, "gamma": {"D": 0.5}, "g": 0.02})");
  const auto& d = s.probe("Pi_D");
  EXPECT_EQ(d.g, 0.02);
  EXPECT_NEAR(protocol::weak_value(s, d.observable, d.slice).real(), 0.5, 1e-10);
  const auto& o = s.probe("Pi_O");
  EXPECT_NEAR(std::abs(protocol::weak_value(s, o.observable, o.slice)), 0.0, 1e-10);
}

TEST(Run, ThreePathAnalyticTable) {
  const auto rows = run(setups::builtin("three-path"), RunFlags{.analytic = true});
  const std::vector<double> want = {1, -1, 1, 0, 1, -1, 0};
  ASSERT_EQ(rows.size(), want.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_NEAR(rows[i].weak_value->real(), want[i], 1e-9) << rows[i].probe;
    EXPECT_EQ(rows[i].regime, "analytic");
  }
}

TEST(Run, StrongNullRowIsUntouched) {
  RunFlags f;
  f.mode = protocol::Mode::strong;
  f.g = 10.0;
  const auto rows = run(setups::builtin("three-path"), f);
  const auto it = std::find_if(rows.begin(), rows.end(), [](const ResultRow& r) { return r.probe == "Pi_O"; });
  ASSERT_NE(it, rows.end());
  EXPECT_NEAR(*it->shift, 0.0, 1e-12);
  EXPECT_NEAR(*it->fidelity, 1.0, 1e-12);
  EXPECT_EQ(it->regime, "strong");
}

TEST(Run, SweepRowsPerProbe) {
  RunFlags f;
  f.sweep = SweepSpec{0.01, 1.0, 3};
  const auto rows = run(setups::builtin("nested-mzi"), f);
  ASSERT_EQ(rows.size(), 18u);
  EXPECT_EQ(rows[0].probe, "Pi_C@g=0.01");
  EXPECT_EQ(rows[2].probe, "Pi_C@g=1");
  EXPECT_EQ(rows[3].probe, "Pi_E@g=0.01");
}

TEST(Run, EngineErrorsArePerRow) {
  RunFlags f;
  f.mode = protocol::Mode::weak;
  f.g = 1.0;
  const auto rows = run(setups::builtin("nested-mzi"), f);
  for (const auto& r : rows) {
    EXPECT_EQ(r.regime, "error");
    EXPECT_FALSE(r.error.empty());
  }
  EXPECT_NE(format_csv(rows).find("Pi_B,t_2,undefined,undefined,undefined,undefined,error"), std::string::npos);
}

TEST(Format, Numbers) {
  EXPECT_EQ(format_number(std::nullopt), "undefined");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(-1.5e-20), "-1.5e-20");
}

TEST(Format, CsvHeaderAndJsonMirror) {
  const auto rows = run(setups::builtin("nested-mzi"), RunFlags{.analytic = true});
  const std::string csv = format_csv(rows);
  EXPECT_EQ(csv.rfind("probe,slice,wv_re,wv_im,shift,prob,regime\n", 0), 0u);
  EXPECT_NE(csv.find("Pi_B,t_2,-1,0,-0.01,0.111111111111,analytic\n"), std::string::npos);
  const std::string json = format_json(rows);
  EXPECT_NE(json.find("\"rows\""), std::string::npos);
  EXPECT_NE(json.find("\"probe\": \"Pi_B\""), std::string::npos);
}

TEST(Property, EmitReloadIsBitwiseStable) {
  for (const char* name : {"three-path", "nested-mzi"}) {
    const auto s = setups::builtin(name);
    const auto back = parse_scenario(emit_scenario(s), "emitted");
    for (bool analytic : {true, false}) {
      RunFlags f;
      f.analytic = analytic;
      EXPECT_EQ(format_csv(run(s, f)), format_csv(run(back, f))) << name;
    }
    EXPECT_EQ(emit_scenario(back), emit_scenario(s));
  }
  const auto spin = load(kData + "/spin_probe.json");
  EXPECT_EQ(format_csv(run(spin, {})), format_csv(run(parse_scenario(emit_scenario(spin)), {})));
}

TEST(Property, OutputIsDeterministic) {
  const auto s = load(kData + "/balanced_mzi.json");
  RunFlags f;
  f.sweep = SweepSpec{0.001, 5.0, 7};
  const std::string first = format_csv(run(s, f));
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(format_csv(run(load(kData + "/balanced_mzi.json"), f)), first);
    f.parallel = !f.parallel;
  }
}

}  // namespace
}  // namespace nullweak::cli
