#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

#include "commands.hpp"
#include "dshock/error.hpp"
#include "toml.hpp"

namespace dshock::cli {
namespace {

namespace fs = std::filesystem;

std::string parse_error(const std::string& text) {
  try {
    toml::parse(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kParse);
    return e.what();
  }
  ADD_FAILURE() << "parsed without error: " << text;
  return {};
}

TEST(Toml, ScalarsTablesAndArrays) {
  const auto doc = toml::parse(R"(# scenario
title = "basic \"quoted\""
path = 'C:\raw'
n = 1_000
neg = -17
x = 6.25e-2
y = +inf
z = nan
flag = true

[flux]
name = "brio"
f = [[0.5, 2, 0],
     [0.5, 0, 2],   # trailing comma allowed
    ]

[run.nested]
"quoted key" = 3
a.b = { c = 1, d = [1, 2] }

[[arc]]
x0 = 0
[[arc]]
x0 = 1.5
)");
  EXPECT_EQ(toml::get_string(doc, "title", ""), "basic \"quoted\"");
  EXPECT_EQ(toml::get_string(doc, "path", ""), "C:\\raw");
  EXPECT_EQ(toml::get_int(doc, "n", 0), 1000);
  EXPECT_EQ(toml::get_int(doc, "neg", 0), -17);
  EXPECT_EQ(toml::get_double(doc, "x", 0), 0.0625);
  EXPECT_TRUE(std::isinf(toml::get_double(doc, "y", 0)));
  EXPECT_TRUE(std::isnan(toml::get_double(doc, "z", 0)));
  EXPECT_TRUE(toml::get_bool(doc, "flag", false));
  EXPECT_EQ(toml::require(doc, "flux.f").as_array().size(), 2u);
  EXPECT_EQ(toml::get_int(doc, "run.nested.quoted key", 0), 3);
  EXPECT_EQ(toml::get_int(doc, "run.nested.a.b.c", 0), 1);
  EXPECT_EQ(toml::get_doubles(doc, "run.nested.a.b.d", {}), (std::vector<double>{1, 2}));
  const auto& arcs = toml::require(doc, "arc").as_array();
  ASSERT_EQ(arcs.size(), 2u);
  EXPECT_EQ(toml::get_double(arcs[1], "x0", 0), 1.5);
  EXPECT_EQ(toml::get_double(doc, "missing", -1.0), -1.0);
}

TEST(Toml, ErrorsCarryLineAndColumn) {
  EXPECT_NE(parse_error("a = 1\na = 2\n").find("line 2, column 1"), std::string::npos);
  EXPECT_NE(parse_error("a = 1\nb = \"open\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error("[t]\nx = 1 2\n").find("line 2, column 7"), std::string::npos);
  EXPECT_NE(parse_error("x = 1__0\n").find("line 1, column 5"), std::string::npos);
  EXPECT_NE(parse_error("[t]\n[t]\n").find("defined twice"), std::string::npos);
  EXPECT_NE(parse_error("x = [1, 2\n").find("unterminated array"), std::string::npos);
  EXPECT_NE(parse_error("x = 1979-05-27\n").find("dates"), std::string::npos);
  EXPECT_NE(parse_error("x = 01\n").find("leading zero"), std::string::npos);
  EXPECT_NE(parse_error("x = 1.\n").find("decimal point"), std::string::npos);
  EXPECT_NE(parse_error("x = \"\"\"a\"\"\"\n").find("multi-line"), std::string::npos);
  EXPECT_NE(parse_error("= 3\n").find("expected a key"), std::string::npos);
}

TEST(Toml, TypedAccessReportsPosition) {
  const auto doc = toml::parse("[data]\nleft = [1, 2, 3]\nright = \"x\"\n");
  try {
    toml::get_state(doc, "data.left");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2, column 8"), std::string::npos) << e.what();
  }
  try {
    toml::get_state(doc, "data.right");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("expected array, found string"), std::string::npos);
  }
  try {
    toml::require(doc, "data.x0");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("missing key 'data.x0'"), std::string::npos);
  }
}

TEST(Dyadic, AcceptsPowersOfTwoOnly) {
  EXPECT_EQ(parse_dyadic("2^-12"), 12);
  EXPECT_EQ(parse_dyadic("2^(-4)"), 4);
  EXPECT_EQ(parse_dyadic("0.0625"), 4);
  EXPECT_EQ(parse_dyadic("1"), 0);
  for (const char* bad : {"0.1", "2^3", "3", "abc", "2^-x", "-0.25", "0"}) {
    EXPECT_THROW(parse_dyadic(bad), Error) << bad;
  }
}

// Runs the CLI in a fresh directory holding `config`.
class CliRun : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("dshock_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "dshock");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

constexpr const char* kDeltaU = R"([flux]
name = "brio"

[data]
left = [3, 1]
right = [0, -1]

[run]
carrier = "u"
)";

TEST_F(CliRun, DeltaExampleWritesSpecAndVerification) {
  const auto cfg = write_config("d.toml", kDeltaU);
  ASSERT_EQ(run_cli({"delta", "--config", cfg.string(), "--out", (dir_ / "o").string()}), kExitOk)
      << err_.str();
  const std::string csv = read(dir_ / "o" / "delta.csv");
  // speed 1/2 and rate 3 in the 17-digit format
  EXPECT_NE(csv.find(",5.0000000000000000e-01,3.0000000000000000e+00,"), std::string::npos) << csv;
  EXPECT_NE(csv.find(",1\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "o" / "verify.csv"));
  EXPECT_NE(out_.str().find("c = 0.5, alpha' = 3"), std::string::npos);
}

TEST_F(CliRun, RerunIsByteIdentical) {
  const auto cfg = write_config("d.toml", kDeltaU);
  ASSERT_EQ(run_cli({"delta", "--config", cfg.string(), "--out", (dir_ / "a").string()}), kExitOk);
  ASSERT_EQ(run_cli({"delta", "--config", cfg.string(), "--out", (dir_ / "b").string(), "--jobs", "3"}),
            kExitOk);
  for (const char* f : {"delta.csv", "verify.csv", "solution.toml"}) {
    EXPECT_EQ(read(dir_ / "a" / f), read(dir_ / "b" / f)) << f;
  }
}

TEST_F(CliRun, SolutionFileRoundTripsThroughVerify) {
  const auto cfg = write_config("d.toml", kDeltaU);
  ASSERT_EQ(run_cli({"delta", "--config", cfg.string(), "--out", (dir_ / "a").string()}), kExitOk);
  ASSERT_EQ(run_cli({"verify", "--config", (dir_ / "a" / "solution.toml").string(), "--out",
                     (dir_ / "b").string()}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(read(dir_ / "a" / "verify.csv"), read(dir_ / "b" / "verify.csv"));
}

TEST_F(CliRun, VerifyRejectsWrongAmplitude) {
  const auto cfg = write_config("s.toml", R"([flux]
name = "brio"
f = [[0.5, 2, 0], [0.5, 0, 2]]
g = [[1, 1, 1], [-1, 0, 1]]
[solution]
carrier = "u"
[background]
states = [[3, 1], [0, -1]]
speeds = [0.5]
[[arc]]
x0 = 0
speed = 0.5
rate = 2.5
)");
  EXPECT_EQ(run_cli({"verify", "--config", cfg.string(), "--out", dir_.string()}), kExitFailed);
  EXPECT_NE(out_.str().find("(FAIL)"), std::string::npos);
}

TEST_F(CliRun, MissingFluxIsAParseError) {
  const auto cfg = write_config("d.toml", "[data]\nleft = [0, 1]\nright = [1, 1]\n[run]\ncarrier = \"v\"\n");
  EXPECT_EQ(run_cli({"delta", "--config", cfg.string(), "--out", dir_.string()}), kExitUsage);
  EXPECT_NE(err_.str().find("missing key 'flux'"), std::string::npos) << err_.str();
}

TEST_F(CliRun, DegenerateJumpExitsNonzero) {
  const auto cfg = write_config(
      "d.toml", "[flux]\nname = \"brio\"\n[data]\nleft = [1, 1]\nright = [1, -1]\n[run]\ncarrier = \"v\"\n");
  EXPECT_EQ(run_cli({"delta", "--config", cfg.string(), "--out", dir_.string()}), kExitError);
  EXPECT_NE(err_.str().find("DegenerateJump"), std::string::npos) << err_.str();
}

TEST_F(CliRun, UnknownKeysAndBadValuesAreParseErrors) {
  const auto cfg = write_config(
      "d.toml", "[flux]\nname = \"brio\"\n[data]\nleft = [3, 1]\nright = [0, -1]\n[run]\ncarier = \"u\"\n");
  EXPECT_EQ(run_cli({"delta", "--config", cfg.string(), "--out", dir_.string()}), kExitUsage);
  EXPECT_NE(err_.str().find("line 7, column 1"), std::string::npos) << err_.str();
  const auto bad = write_config("b.toml", "[flux]\nname = \"burgers\"\n");
  EXPECT_EQ(run_cli({"delta", "--config", bad.string()}), kExitUsage);
  EXPECT_NE(err_.str().find("unknown flux"), std::string::npos);
  EXPECT_EQ(run_cli({"delta", "--config", (dir_ / "none.toml").string()}), kExitUsage);
  EXPECT_EQ(run_cli({"delta"}), kExitUsage);
  EXPECT_EQ(run_cli({"--help"}), kExitOk);
}

TEST_F(CliRun, PolynomialFluxFromCoefficients) {
  // f = u v, g = v^2 - u: carrier v with c = [f]/[u]
  const auto cfg = write_config("d.toml", R"([flux]
name = "poly"
f = [[1, 1, 1]]
g = [[1, 0, 2], [-1, 1, 0]]
[data]
left = [0, 1]
right = [1, 2]
[run]
carrier = "v"
)");
  ASSERT_EQ(run_cli({"delta", "--config", cfg.string(), "--out", dir_.string()}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("c = 2,"), std::string::npos) << out_.str();
  EXPECT_NE(read(dir_ / "delta.csv").find("poly"), std::string::npos);
}

TEST_F(CliRun, RandomDeltaNeedsSeedAndReproduces) {
  const std::string text = "[flux]\nname = \"brio\"\n[run]\ncarrier = \"v\"\nrandom = 3\n";
  const auto cfg = write_config("r.toml", text);
  EXPECT_EQ(run_cli({"delta", "--config", cfg.string(), "--out", dir_.string()}), kExitUsage);
  ASSERT_EQ(run_cli({"delta", "--config", cfg.string(), "--out", (dir_ / "a").string(), "--seed", "7"}),
            kExitOk)
      << err_.str();
  ASSERT_EQ(run_cli({"delta", "--config", cfg.string(), "--out", (dir_ / "b").string(), "--seed", "7"}),
            kExitOk);
  EXPECT_EQ(read(dir_ / "a" / "delta.csv"), read(dir_ / "b" / "delta.csv"));
  ASSERT_EQ(run_cli({"delta", "--config", cfg.string(), "--out", (dir_ / "c").string(), "--seed", "8"}),
            kExitOk);
  EXPECT_NE(read(dir_ / "a" / "delta.csv"), read(dir_ / "c" / "delta.csv"));
}

std::string riemann_config(const char* left, const char* right) {
  return std::string("[flux]\nname = \"brio\"\n[data]\nleft = ") + left + "\nright = " + right + "\n";
}

TEST_F(CliRun, RiemannCompositeFan) {
  const auto cfg = write_config("r.toml", riemann_config("[0, 1]", "[0.3774, -0.7]"));
  ASSERT_EQ(run_cli({"riemann", "--config", cfg.string(), "--out", dir_.string()}), kExitOk) << err_.str();
  const std::string fan = read(dir_ / "fan.csv");
  EXPECT_NE(fan.find("0,rarefaction,1,-,"), std::string::npos) << fan;
  EXPECT_NE(fan.find("1,delta,0,u,"), std::string::npos);
  EXPECT_NE(fan.find("2,shock,2,-,"), std::string::npos);
  const std::string alt = read(dir_ / "alternatives.csv");
  EXPECT_NE(alt.find("sign_change,1,"), std::string::npos);
  EXPECT_NE(alt.find("direct_delta,0,"), std::string::npos);
  EXPECT_NE(read(dir_ / "curves.csv").find("\nsw2,"), std::string::npos);
}

TEST_F(CliRun, RiemannSameSignIsClassical) {
  const auto cfg = write_config("r.toml", riemann_config("[0, 0.5]", "[0.5, 1.5]"));
  ASSERT_EQ(run_cli({"riemann", "--config", cfg.string(), "--out", dir_.string()}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("construction: classical"), std::string::npos);
  EXPECT_EQ(read(dir_ / "fan.csv").find("delta"), std::string::npos);
}

TEST_F(CliRun, RiemannReversedSignsIsARegimeError) {
  const auto cfg = write_config("r.toml", riemann_config("[0, -1]", "[0, 1]"));
  EXPECT_EQ(run_cli({"riemann", "--config", cfg.string(), "--out", dir_.string()}), kExitError);
  EXPECT_NE(err_.str().find("RegimeError"), std::string::npos) << err_.str();
}

TEST_F(CliRun, AsymptoticRefusesSinglePointGrid) {
  const auto cfg = write_config(
      "a.toml", "[flux]\nname = \"brio\"\n[data]\nleft = [1, 1]\nright = [0, 0]\n[run]\nvariant = \"A\"\n");
  EXPECT_NE(run_cli({"asymptotic", "--config", cfg.string(), "--out", dir_.string(), "--eps-min", "2^-4",
                     "--eps-max", "2^-4"}),
            kExitOk);
  EXPECT_NE(err_.str().find("at least two"), std::string::npos) << err_.str();
}

TEST_F(CliRun, AsymptoticCorollaryWritesOneReportPerSpeed) {
  const auto cfg = write_config("a.toml", R"([flux]
name = "brio"
[data]
left = [0, 1]
right = [0, -1]
[run]
variant = "corollary"
speeds = [-1, 0]
times = 8
weak_limit = false
)");
  ASSERT_EQ(run_cli({"asymptotic", "--config", cfg.string(), "--out", dir_.string(), "--eps-min", "2^-9",
                     "--eps-max", "2^-6"}),
            kExitOk)
      << out_.str() << err_.str();
  for (const char* f : {"decay_corollary_c-1.csv", "decay_corollary_c0.csv"}) {
    const std::string s = read(dir_ / f);
    EXPECT_EQ(s.substr(0, s.find('\n')), "variant,eq,phi_id,eps,sup_t_abs_pairing,slope") << f;
  }
}

TEST_F(CliRun, CurvesPassRankineHugoniotCheck) {
  const auto cfg = write_config("c.toml", "[flux]\nname = \"brio\"\n[run]\nanchor = [0, 1]\nsamples = 101\n");
  ASSERT_EQ(run_cli({"curves", "--config", cfg.string(), "--out", dir_.string()}), kExitOk) << err_.str();
  const std::string s = read(dir_ / "curves.csv");
  for (const char* label : {"\nrw1,", "\nsw1,", "\nrw2,", "\nsw2,"}) {
    EXPECT_NE(s.find(label), std::string::npos) << label;
  }
  EXPECT_TRUE(fs::exists(dir_ / "shock_check.csv"));
}

TEST_F(CliRun, ViscousConcentrationAndClipping) {
  const std::string base =
      "[flux]\nname = \"brio\"\n[data]\nleft = [0, 0]\nright = [0, -1]\n[run]\nhalf_width = 6\ncells = 400\n";
  const auto cfg = write_config("v.toml", base);
  ASSERT_EQ(run_cli({"viscous", "--config", cfg.string(), "--out", dir_.string()}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("slope / alpha'"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "snapshots.csv"));
  const auto clipped = write_config("w.toml", base + "window = 5.5\n");
  EXPECT_EQ(run_cli({"viscous", "--config", clipped.string(), "--out", dir_.string()}), kExitFailed);
  const auto unstable = write_config("u.toml", base + "cfl = 0.9\n");
  EXPECT_EQ(run_cli({"viscous", "--config", unstable.string(), "--out", dir_.string()}), kExitError);
}

}  // namespace
}  // namespace dshock::cli
