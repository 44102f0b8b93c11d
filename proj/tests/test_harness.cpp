// Copyright 2026 The nppt-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <random>
#include <sstream>

#include <json.hpp>

#include "nppt/harness.hpp"
#include "nppt/serialize.hpp"

namespace nppt::cli {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "nppt-lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class HarnessTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nppt_lab_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(cells);
  }
  return rows;
}

std::string without_wall_ms_csv(const std::string& csv) {
  std::string out;
  for (const auto& row : parse_csv(csv)) {
    for (std::size_t c = 0; c + 1 < row.size(); ++c) out += row[c] + ",";
    out += "\n";
  }
  return out;
}

std::string without_wall_ms_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  j.erase("wall_ms");
  return j.dump();
}

TEST(AlphaGridTest, InclusiveStopAndEmptyGrid) {
  EXPECT_EQ(AlphaGrid{}.values().size(), 9u);
  EXPECT_EQ((AlphaGrid{0.0, 1.0, 0.25}).values().size(), 5u);
  EXPECT_TRUE((AlphaGrid{0.5, 0.4, 0.1}).values().empty());
  EXPECT_EQ((AlphaGrid{0, 0, 1, {0.34, 0.45}}).values(), (std::vector<double>{0.34, 0.45}));
  EXPECT_THROW((AlphaGrid{0.1, 0.9, 0.0}).values(), std::invalid_argument);
}

TEST_F(HarnessTest, ClassifyPrintsRegionAndBoundaries) {
  auto r = invoke({"classify", "--d", "3", "--alpha", "0.4"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "NPPT_ONE_COPY_UNDISTILLABLE (1/d=0.3333, 1/2=0.5)\n");
  r = invoke({"classify", "--d", "3", "--alpha", "0.2"});
  EXPECT_EQ(r.out.rfind("PPT_SEPARABLE", 0), 0u);
  r = invoke({"classify", "--d", "3", "--alpha", "0.6"});
  EXPECT_EQ(r.out.rfind("NPPT_ONE_COPY_DISTILLABLE", 0), 0u);
}

TEST_F(HarnessTest, BadArgumentsExitTwo) {
  EXPECT_EQ(invoke({"classify", "--d", "3", "--alpha", "1.5"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({"classify", "--d", "1", "--alpha", "0.1"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({"classify", "--d", "3"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({"bogus"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({}).code, kExitBadArguments);
  EXPECT_EQ(invoke({"werner-scan", "--alpha-step", "0", "--out", path("x.csv")}).code,
            kExitBadArguments);
  EXPECT_EQ(invoke({"compare", "--alpha", "0.4", "--n", "5", "--out", path("x.json")}).code,
            kExitBadArguments);
  EXPECT_EQ(invoke({"family-scan", "--constraints", "valid,weird", "--out", path("x.json")}).code,
            kExitBadArguments);
  EXPECT_EQ(invoke({"compare", "--alpha", "0.4"}).code, kExitBadArguments);
}

TEST_F(HarnessTest, WernerScanSingleCopyMatchesAnalyticReference) {
  const auto r = invoke({"werner-scan", "--d", "3", "--n", "1", "--out", path("scan.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(read_text_file(path("scan.csv")));
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0].size(), 12u);
  std::string header;
  for (const auto& c : rows[0]) header += (header.empty() ? "" : ",") + c;
  EXPECT_EQ(header, kWernerScanHeader);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double alpha = std::stod(rows[k][2]);
    EXPECT_NEAR(alpha, 0.1 * double(k), 1e-12);
    EXPECT_NEAR(std::stod(rows[k][5]), 1 - 2 * alpha, 1e-6);
    EXPECT_EQ(std::stod(rows[k][7]), 1 - 2 * alpha);
    EXPECT_EQ(rows[k][9], "0");
  }
}

TEST_F(HarnessTest, WernerScanEmptyGridIsHeaderOnly) {
  const auto r = invoke({"werner-scan", "--alpha-start", "0.5", "--alpha-stop", "0.4", "--out",
                         path("empty.csv")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(read_text_file(path("empty.csv")), std::string(kWernerScanHeader) + "\n");
}

TEST_F(HarnessTest, WernerScanRowOrderAndUndefinedReference) {
  const auto r = invoke({"werner-scan", "--d", "2", "--n", "1,2", "--alphas", "0.3,0.45",
                         "--restarts", "4", "--out", path("order.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(read_text_file(path("order.csv")));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[1][1], "1");
  EXPECT_EQ(rows[2][1], "2");
  EXPECT_EQ(rows[3][1], "1");
  EXPECT_EQ(std::stod(rows[3][2]), 0.45);
  EXPECT_EQ(rows[2][7], "");
}

TEST_F(HarnessTest, UnwritablePathExitsThree) {
  EXPECT_EQ(invoke({"werner-scan", "--alphas", "0.3", "--out", path("missing/dir/x.csv")}).code,
            kExitIo);
  EXPECT_EQ(invoke({"compare", "--alpha", "0.3", "--out", path("missing/x.json")}).code, kExitIo);
  EXPECT_EQ(invoke({"plot", "--csv", path("nope.csv"), "--x", "a", "--y", "b", "--out",
                    path("p.svg")})
                .code,
            kExitIo);
}

TEST_F(HarnessTest, CompareWritesSchemaVersionedReport) {
  const auto r = invoke({"compare", "--d", "3", "--alpha", "0.5", "--n", "1", "--out",
                         path("c.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(read_text_file(path("c.json")));
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["d"], 3);
  EXPECT_EQ(j["n"], 1);
  EXPECT_NEAR(j["gap"].get<double>(), 0.0, 1e-6);
  EXPECT_FALSE(j["flag"].get<bool>());
  for (const char* key : {"alpha_or_family", "seesaw_min", "extremal_min", "restarts", "seed",
                          "iterations_per_restart"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["iterations_per_restart"].size(), 51u);
}

TEST_F(HarnessTest, CompareReportsDistillableWitness) {
  const auto r = invoke({"compare", "--d", "3", "--alpha", "0.6", "--n", "1", "--out",
                         path("c.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("distillable witness found"), std::string::npos);
  const auto j = nlohmann::json::parse(read_text_file(path("c.json")));
  EXPECT_NEAR(j["seesaw_min"].get<double>(), -0.2, 1e-6);
}

TEST_F(HarnessTest, CompareTwoCopyIsNotFlagged) {
  const auto r = invoke({"compare", "--d", "3", "--alpha", "0.4", "--n", "2", "--restarts", "200",
                         "--out", path("c.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("flag=false"), std::string::npos);
}

TEST_F(HarnessTest, ConfigFileWithFlagOverride) {
  write_text_file(path("cfg.json"),
                  R"({"d": 2, "alpha": 0.7, "n": 1, "restarts": 3, "seed": 9})");
  const auto r = invoke({"compare", "--config", path("cfg.json"), "--alpha", "0.3", "--out",
                         path("c.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(read_text_file(path("c.json")));
  EXPECT_EQ(j["d"], 2);
  EXPECT_EQ(j["restarts"], 3);
  EXPECT_EQ(j["seed"], 9);
  EXPECT_EQ(j["alpha_or_family"].get<double>(), 0.3);
  write_text_file(path("bad.json"), "[1, 2]");
  EXPECT_EQ(invoke({"compare", "--config", path("bad.json"), "--out", path("c.json")}).code,
            kExitBadArguments);
  write_text_file(path("broken.json"), "{");
  EXPECT_EQ(invoke({"compare", "--config", path("broken.json"), "--out", path("c.json")}).code,
            kExitBadArguments);
}

TEST_F(HarnessTest, FamilyScanPredicatesAndSummary) {
  const auto r = invoke({"family-scan", "--d", "3", "--samples", "100", "--constraints",
                         "valid,nppt,two_positive", "--restarts", "5", "--out", path("f.json")});
  ASSERT_TRUE(r.code == kExitOk || r.code == kExitFlagged) << r.err;
  const auto j = nlohmann::json::parse(read_text_file(path("f.json")));
  ASSERT_EQ(j["entries"].size(), 100u);
  double most_negative = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    const auto& e = j["entries"][k];
    EXPECT_TRUE(e["valid"].get<bool>());
    EXPECT_TRUE(e["nppt"].get<bool>());
    EXPECT_TRUE(e["two_positive"].get<bool>());
    const auto fp = family_from_json(e["family"]);
    EXPECT_TRUE(family_is_nppt(fp));
    EXPECT_TRUE(family_two_positive(fp));
    most_negative = k == 0 ? e["gap"].get<double>() : std::min(most_negative, e["gap"].get<double>());
  }
  EXPECT_EQ(j["summary"]["nppt"], 100);
  EXPECT_EQ(j["summary"]["most_negative_gap"].get<double>(), most_negative);
  EXPECT_EQ(r.code == kExitFlagged, j["summary"]["flagged"].get<int>() > 0);
}

TEST_F(HarnessTest, FamilyScanZeroCoherenceIsPpt) {
  const auto r = invoke({"family-scan", "--samples", "20", "--constraints", "valid", "--zero-z",
                         "--restarts", "3", "--out", path("f.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(read_text_file(path("f.json")));
  for (const auto& e : j["entries"]) EXPECT_FALSE(e["nppt"].get<bool>());
}

TEST_F(HarnessTest, FamilyScanExhaustionExitsFour) {
  const auto r = invoke({"family-scan", "--samples", "1", "--constraints", "nppt", "--zero-z",
                         "--out", path("f.json")});
  EXPECT_EQ(r.code, kExitSamplerExhausted);
}

TEST_F(HarnessTest, FamilyScanIsDeterministic) {
  const std::vector<std::string> args{"family-scan", "--samples", "10", "--restarts", "4",
                                      "--seed", "77"};
  auto a = args;
  a.insert(a.end(), {"--out", path("a.json")});
  auto b = args;
  b.insert(b.end(), {"--out", path("b.json")});
  ASSERT_NE(invoke(a).code, kExitBadArguments);
  ASSERT_NE(invoke(b).code, kExitBadArguments);
  EXPECT_EQ(without_wall_ms_json(read_text_file(path("a.json"))),
            without_wall_ms_json(read_text_file(path("b.json"))));
}

TEST_F(HarnessTest, ScanAndCompareDeterministicAcrossThreads) {
  auto run_with = [&](const char* threads, const std::string& tag) {
    ::setenv("NPPT_LAB_THREADS", threads, 1);
    const auto s = invoke({"werner-scan", "--d", "3", "--n", "1,2", "--alphas", "0.4,0.45",
                           "--restarts", "12", "--seed", "5", "--out", path(tag + ".csv")});
    const auto c = invoke({"compare", "--alpha", "0.45", "--n", "2", "--restarts", "12", "--seed",
                           "5", "--out", path(tag + ".json")});
    ::unsetenv("NPPT_LAB_THREADS");
    EXPECT_EQ(s.code, kExitOk) << s.err;
    EXPECT_EQ(c.code, kExitOk) << c.err;
    return std::make_pair(without_wall_ms_csv(read_text_file(path(tag + ".csv"))),
                          without_wall_ms_json(read_text_file(path(tag + ".json"))));
  };
  const auto one = run_with("1", "one");
  const auto again = run_with("1", "again");
  const auto eight = run_with("8", "eight");
  EXPECT_EQ(one, again);
  EXPECT_EQ(one, eight);
}

TEST_F(HarnessTest, InvalidThreadEnvIsBadArgument) {
  ::setenv("NPPT_LAB_THREADS", "many", 1);
  const auto r = invoke({"compare", "--alpha", "0.3", "--out", path("c.json")});
  ::unsetenv("NPPT_LAB_THREADS");
  EXPECT_EQ(r.code, kExitBadArguments);
}

TEST_F(HarnessTest, CsvNumbersRoundTripExactly) {
  ASSERT_EQ(invoke({"werner-scan", "--d", "3", "--n", "1", "--alphas", "0.1,0.37,0.9",
                    "--restarts", "5", "--out", path("rt.csv")})
                .code,
            kExitOk);
  const auto rows = parse_csv(read_text_file(path("rt.csv")));
  for (std::size_t k = 1; k < rows.size(); ++k)
    for (std::size_t c : {2u, 5u, 6u, 7u, 8u}) {
      const double v = std::stod(rows[k][c]);
      EXPECT_EQ(format_double(v), rows[k][c]);
    }
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double x = u(rng) * std::pow(10.0, int(rng() % 40) - 20);
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST_F(HarnessTest, FamilyJsonRoundTripsBitExactly) {
  for (int s = 0; s < 50; ++s) {
    const auto fp = family_sample(s, 3, {.valid = true});
    const auto back = family_from_json(nlohmann::json::parse(to_json(fp).dump()));
    EXPECT_EQ(back.rho(), fp.rho());
    EXPECT_EQ(back.z(), fp.z());
  }
}

TEST_F(HarnessTest, PlotDrawsPolylinesAndLabels) {
  ASSERT_EQ(invoke({"werner-scan", "--d", "3", "--n", "1", "--restarts", "5", "--out",
                    path("scan.csv")})
                .code,
            kExitOk);
  const auto r = invoke({"plot", "--csv", path("scan.csv"), "--x", "alpha", "--y",
                         "seesaw_min,analytic_ref", "--out", path("p.svg")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string svg = read_text_file(path("p.svg"));
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  EXPECT_NE(svg.find("xmlns=\"http://www.w3.org/2000/svg\""), std::string::npos);
  std::size_t polylines = 0;
  for (auto p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1))
    ++polylines;
  EXPECT_EQ(polylines, 2u);
  EXPECT_NE(svg.find(">alpha<"), std::string::npos);
  EXPECT_NE(svg.find("seesaw_min, analytic_ref"), std::string::npos);
  // 1 - 2 alpha changes sign inside the plotted range, so the zero line is drawn
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
}

TEST_F(HarnessTest, AnalyticReferenceIsStraightLine) {
  const std::string csv = "alpha,analytic_ref\n0.1,0.8\n0.3,0.4\n0.5,0\n0.9,-0.8\n";
  const std::string svg = render_svg_plot(csv, "alpha", {"analytic_ref"});
  const auto start = svg.find("points=\"") + 8;
  std::istringstream pts(svg.substr(start, svg.find('"', start) - start));
  std::vector<std::pair<double, double>> xy;
  std::string tok;
  while (pts >> tok) {
    const auto comma = tok.find(',');
    xy.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
  }
  ASSERT_EQ(xy.size(), 4u);
  const double slope = (xy[3].second - xy[0].second) / (xy[3].first - xy[0].first);
  for (const auto& [x, y] : xy) EXPECT_NEAR(y, xy[0].second + slope * (x - xy[0].first), 0.02);
}

TEST_F(HarnessTest, PlotSingleRowGivesMarker) {
  write_text_file(path("one.csv"), "alpha,seesaw_min\n0.4,0.2\n");
  ASSERT_EQ(invoke({"plot", "--csv", path("one.csv"), "--x", "alpha", "--y", "seesaw_min",
                    "--out", path("one.svg")})
                .code,
            kExitOk);
  const std::string svg = read_text_file(path("one.svg"));
  EXPECT_EQ(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
}

TEST_F(HarnessTest, PlotMissingColumnExitsFive) {
  write_text_file(path("one.csv"), "alpha,seesaw_min\n0.4,0.2\n");
  EXPECT_EQ(invoke({"plot", "--csv", path("one.csv"), "--x", "alpha", "--y", "gap", "--out",
                    path("x.svg")})
                .code,
            kExitPlotInput);
  write_text_file(path("hdr.csv"), "alpha,seesaw_min\n");
  EXPECT_EQ(invoke({"plot", "--csv", path("hdr.csv"), "--x", "alpha", "--y", "seesaw_min",
                    "--out", path("x.svg")})
                .code,
            kExitPlotInput);
}

}  // namespace
}  // namespace nppt::cli
