#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "model_io.hpp"
#include "svg.hpp"

using namespace fractarc;
using namespace fractarc::cli;
namespace fs = std::filesystem;

namespace {

class Workdir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fractarc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(FRACTARC_TOOL) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

RunConfig reference_arc(const std::string& out = "") {
  RunConfig config = resolve_config(std::nullopt, {{"depth", "2"}});
  config.out = out;
  return config;
}

}  // namespace

TEST(Config, RealExpressions) {
  EXPECT_DOUBLE_EQ(parse_real_expression("1.5"), 1.5);
  EXPECT_DOUBLE_EQ(parse_real_expression("1+ln(2)/ln(3)"), 1 + std::log(2.0) / std::log(3.0));
  EXPECT_DOUBLE_EQ(parse_real_expression("koch"), std::log(3.0) / std::log(4.0));
  EXPECT_DOUBLE_EQ(parse_real_expression("1/2"), 0.5);
  EXPECT_THROW(parse_real_expression("ln(2"), ConfigError);
}

TEST(Config, SettingsAndScales) {
  RunConfig c;
  apply_setting(c, "depth", "3");
  apply_setting(c, "seed", "99");
  apply_setting(c, "clearance", "1/2,1/3");
  EXPECT_EQ(c.depth, 3);
  EXPECT_EQ(c.seed, 99u);
  ASSERT_EQ(c.clearance.size(), 2u);
  EXPECT_EQ(c.clearance[1], make_rational(1, 3));
  EXPECT_THROW(apply_setting(c, "colour", "red"), ConfigError);
  EXPECT_THROW(apply_setting(c, "depth", "two"), ConfigError);
  EXPECT_THROW(apply_setting(c, "c", "0.5"), ConfigError);
  EXPECT_EQ(parse_scales("2:4"), std::vector<double>({0.25, 0.125, 0.0625}));
  EXPECT_EQ(parse_scales("0.5,0.1"), std::vector<double>({0.5, 0.1}));
}

TEST_F(Workdir, ConfigPrecedence) {
  std::ofstream(path("run.cfg")) << "# reference run\ndepth = 3\nseed=7\ngeneration_budget=12\n";
  ::setenv("FRACTARC_GENERATION_BUDGET", "9", 1);
  const auto env_only = resolve_config(std::nullopt, {});
  EXPECT_EQ(env_only.generation_budget, 9);
  const auto file = resolve_config(path("run.cfg"), {});
  EXPECT_EQ(file.depth, 3);
  EXPECT_EQ(file.seed, 7u);
  EXPECT_EQ(file.generation_budget, 12);
  const auto flags = resolve_config(path("run.cfg"), {{"depth", "1"}});
  EXPECT_EQ(flags.depth, 1);
  EXPECT_EQ(flags.seed, 7u);
  ::unsetenv("FRACTARC_GENERATION_BUDGET");
  EXPECT_THROW(resolve_config(path("missing.cfg"), {}), ConfigError);
}

TEST_F(Workdir, BuildReferenceCounts) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_build(reference_arc(path("m.json")), out, err), kPass) << err.str();
  EXPECT_NE(out.str().find("generation 2: cells 16, connectors 15"), std::string::npos) << out.str();
  const auto j = nlohmann::json::parse(slurp(path("m.json")));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["n"], 1);
  EXPECT_EQ(j["summary"]["cells"], 16);
  EXPECT_EQ(j["summary"]["connectors"], 15);
  EXPECT_EQ(j["y_ratio"], nlohmann::json::array({"1", "3"}));
}

TEST_F(Workdir, BuildDegenerateAndHigherDimension) {
  std::ostringstream out, err;
  auto unit = reference_arc(path("unit.json"));
  unit.c_text = "1";
  unit.c = 1.0;
  ASSERT_EQ(cmd_build(unit, out, err), kPass) << err.str();
  const auto j = nlohmann::json::parse(slurp(path("unit.json")));
  EXPECT_TRUE(j["degenerate"].get<bool>());
  EXPECT_EQ(j["summary"]["connectors"], 0);

  auto two = resolve_config(std::nullopt, {{"c", "2"}, {"depth", "1"}});
  const Model model = build_model(two);
  ASSERT_TRUE(model.arc);
  EXPECT_EQ(model.arc->n(), 2);
  EXPECT_EQ(model.arc->y().ratio(), make_rational(1, 4));
}

TEST_F(Workdir, VerifyFreshAndDegenerate) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_build(reference_arc(path("m.json")), out, err), kPass);
  RunConfig v = reference_arc(path("report.json"));
  v.model = path("m.json");
  v.samples = 200;
  std::ostringstream vout;
  EXPECT_EQ(cmd_verify(v, vout, err), kPass) << vout.str() << err.str();
  for (const char* name : {"uniform_perfectness", "mass_bounds", "injectivity", "containment", "counting"}) {
    EXPECT_NE(vout.str().find(std::string("PASS ") + name), std::string::npos) << name;
  }
  EXPECT_TRUE(nlohmann::json::parse(slurp(path("report.json")))["pass"].get<bool>());

  auto unit = reference_arc(path("unit.json"));
  unit.c_text = "1";
  unit.c = 1.0;
  ASSERT_EQ(cmd_build(unit, out, err), kPass);
  v.model = path("unit.json");
  std::ostringstream uout;
  EXPECT_EQ(cmd_verify(v, uout, err), kPass) << uout.str();
  EXPECT_EQ(occurrences(uout.str(), "FAIL"), 0u);
}

TEST_F(Workdir, CorruptedModelFailsInjectivity) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_build(reference_arc(path("m.json")), out, err), kPass);
  auto j = nlohmann::json::parse(slurp(path("m.json")));
  auto& joins = j["connectors"][2];
  joins[0]["vertices"].insert(joins[0]["vertices"].begin() + 1, joins[1]["vertices"][0]);
  std::ofstream(path("bad.json")) << j.dump();
  RunConfig v = reference_arc();
  v.model = path("bad.json");
  v.samples = 50;
  std::ostringstream vout;
  EXPECT_EQ(cmd_verify(v, vout, err), kVerificationFailed);
  EXPECT_NE(vout.str().find("FAIL injectivity"), std::string::npos) << vout.str();
  EXPECT_EQ(run_tool("verify --model " + path("bad.json") + " --samples 50"), kVerificationFailed);
}

TEST_F(Workdir, ExportFormats) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_build(reference_arc(path("m.json")), out, err), kPass);
  RunConfig e = reference_arc();
  e.model = path("m.json");
  e.format = "svg";
  std::ostringstream svg;
  ASSERT_EQ(cmd_export(e, svg, err), kPass);
  EXPECT_EQ(occurrences(svg.str(), "<rect"), 16u);
  EXPECT_EQ(occurrences(svg.str(), "<polyline"), 15u);
  EXPECT_EQ(svg.str().rfind("<?xml", 0), 0u);

  e.format = "json";
  std::ostringstream json_out;
  ASSERT_EQ(cmd_export(e, json_out, err), kPass);
  EXPECT_EQ(json_out.str(), slurp(path("m.json")));

  e.format = "csv";
  e.scales = "1:4";
  std::ostringstream csv;
  ASSERT_EQ(cmd_export(e, csv, err), kPass);
  EXPECT_EQ(occurrences(csv.str(), "\n"), 5u);
  EXPECT_EQ(csv.str().rfind("scale,count,log_inverse_scale,log_count\n", 0), 0u);
  EXPECT_EQ(csv.str().find('\r'), std::string::npos);
}

TEST_F(Workdir, ExportSvgRejectsHigherDimension) {
  std::ostringstream out, err;
  auto two = resolve_config(std::nullopt, {{"c", "2"}, {"depth", "1"}, {"out", path("n2.json")}});
  ASSERT_EQ(cmd_build(two, out, err), kPass);
  RunConfig e = two;
  e.out.clear();
  e.model = path("n2.json");
  e.format = "svg";
  EXPECT_EQ(cmd_export(e, out, err), kConfigError);
}

TEST_F(Workdir, RoundTripIsIdentical) {
  const Model model = build_model(reference_arc());
  const std::string text = dump_json(model_to_json(model), -1);
  const Model again = model_from_json(nlohmann::json::parse(text));
  EXPECT_EQ(dump_json(model_to_json(again), -1), text);
  EXPECT_EQ(render_svg(*again.arc), render_svg(*model.arc));
}

TEST_F(Workdir, ReproducibleOutputs) {
  for (const char* run : {"a", "b"}) {
    const std::string tag(run);
    ASSERT_EQ(run_tool("build --depth 3 --seed 5 --out " + path(tag + ".json")), kPass);
    ASSERT_EQ(run_tool("estimate --preset cantor --generation 8 --csv " + path(tag + ".csv") + " --out " +
                       path(tag + "_report.json")),
              kPass);
    ASSERT_EQ(run_tool("export --model " + path(tag + ".json") + " --format csv --out " + path(tag + "_arc.csv")),
              kPass);
  }
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(slurp(path("a_report.json")), slurp(path("b_report.json")));
  EXPECT_EQ(slurp(path("a_arc.csv")), slurp(path("b_arc.csv")));
  EXPECT_FALSE(slurp(path("a.json")).empty());
}

TEST_F(Workdir, EstimatePresets) {
  RunConfig c = reference_arc();
  c.preset = "cantor";
  const auto cantor = run_estimate(c);
  EXPECT_NEAR(cantor.estimate.slope, 0.631, 0.05);
  EXPECT_NEAR(cantor.expected, std::log(2.0) / std::log(3.0), 1e-12);
  c.preset = "snowflake";
  const auto flake = run_estimate(c);
  EXPECT_NEAR(flake.estimate.slope, 2.0, 0.1);
  c.preset = "nonsense";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_estimate(c, out, err), kConfigError);
  c.preset = "cantor";
  c.generation = 4;
  EXPECT_EQ(cmd_estimate(c, out, err), kConfigError);
}

TEST_F(Workdir, ExitCodes) {
  EXPECT_EQ(run_tool("build --depth 2 --out " + path("m.json")), kPass);
  EXPECT_EQ(run_tool("build --c 0.5"), kConfigError);
  EXPECT_EQ(run_tool("build --bogus 1"), kConfigError);
  EXPECT_EQ(run_tool("verify"), kConfigError);
  EXPECT_EQ(run_tool("build --depth 5 --generation_budget 8 --out " + path("deep.json")), kConstructionFailed);
  EXPECT_EQ(run_tool("export --model " + path("m.json") + " --format png"), kConfigError);
  EXPECT_EQ(run_tool("build --depth 2 --generation_budget 3"), kConstructionFailed);
}
