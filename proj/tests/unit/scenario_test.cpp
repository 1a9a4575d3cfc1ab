#include <gtest/gtest.h>

#include "sculi/scenario.hpp"

using namespace sculi;
using namespace sculi::bench;

namespace {

std::vector<std::string> problems_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& problems, std::string_view needle) {
  return std::any_of(problems.begin(), problems.end(),
                     [&](const std::string& p) { return p.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Config, SectionsInheritDefaults) {
  const auto cfg = parse_config(R"(
; shared settings
[defaults]
sigma_noise = 6.5
laser_x_um = 900

[reference]

[exp3]
laser = on
laser_power_pct = 100
laser_diameter_um = 14
sigma_noise = 2
)");
  ASSERT_EQ(cfg.scenarios.size(), 2u);
  const auto& ref = cfg.find("reference");
  EXPECT_EQ(ref.params.sigma_noise, 6.5);
  EXPECT_FALSE(ref.laser.enabled);
  const auto& e3 = cfg.find("exp3");
  EXPECT_EQ(e3.params.sigma_noise, 2.0);
  EXPECT_EQ(e3.laser, (leakage::LaserSpec{true, 100, 14, 900, 0}));
  EXPECT_EQ(e3.params.alpha, leakage::PowerParams{}.alpha);
  EXPECT_THROW(cfg.find("exp9"), ConfigError);
}

TEST(Config, GammaShorthandThenPerBlockOverride) {
  const auto cfg = parse_config("[a]\ngamma_multiplier = 0\ngamma = 0.3\n");
  const auto& p = cfg.scenarios[0].params;
  EXPECT_EQ(p.gamma_of(accel::BlockId::FieldMultiplier), 0.0);
  EXPECT_EQ(p.gamma_of(accel::BlockId::Multiplexer), 0.3);
}

TEST(Config, CollectsEveryProblem) {
  const auto problems = problems_of("[a]\nfoo = 1\nlaser_power_pct = x\n[b]\nattack = magic\n");
  EXPECT_EQ(problems.size(), 3u);
  EXPECT_TRUE(mentions(problems, "[a] foo: unknown key"));
  EXPECT_TRUE(mentions(problems, "[a] laser_power_pct: expected a number"));
  EXPECT_TRUE(mentions(problems, "[b] attack:"));
}

TEST(Config, ValidatesRanges) {
  EXPECT_TRUE(mentions(problems_of("[a]\nlaser = on\nlaser_power_pct = 150\n"), "[a] laser:"));
  EXPECT_TRUE(mentions(problems_of("[a]\nrepeat = 0\n"), "repeat"));
  EXPECT_TRUE(mentions(problems_of("[a]\nquiescent_window = 2000\n"), "quiescent_window"));
  EXPECT_TRUE(mentions(problems_of("[a]\nalpha = -1\n"), "alpha"));
  EXPECT_TRUE(mentions(problems_of("[a]\nscalar = 1\n"), "scalar"));
  EXPECT_TRUE(mentions(problems_of("[a]\nbase_point = 1,2\n"), "base_point"));
  EXPECT_TRUE(mentions(problems_of("[a b]\n"), "name"));
  EXPECT_TRUE(mentions(problems_of("stray = 1\n[a]\n"), "stray"));
  EXPECT_TRUE(mentions(problems_of("[defaults]\nseed = 2\n"), "no scenario"));
  EXPECT_TRUE(mentions(problems_of("[a\n"), "line 1"));
}

TEST(Config, DisabledLaserIsNotValidated) {
  EXPECT_NO_THROW(parse_config("[a]\nlaser = off\nlaser_power_pct = 150\n"));
}

TEST(Scenario, ResolvesScalarsAndBasePoints) {
  Scenario s;
  s.scalar = "random:7";
  EXPECT_EQ(s.resolve_scalar(), Scalar::random_with_length(233, 7));
  s.scalar = "0x1d";
  EXPECT_EQ(s.resolve_scalar(), Scalar::from_uint(0x1d));
  EXPECT_EQ(s.resolve_base_point(), curve::b233().base_point);
  const auto g = curve::b233().base_point;
  s.base_point = g.x.to_hex() + "," + g.y.to_hex();
  EXPECT_EQ(s.resolve_base_point(), g);
  EXPECT_EQ(s.seed_for(3), s.seed + 3);
}

TEST(Canonical, RoundTripsToAnEqualScenario) {
  const auto cfg = parse_config(R"(
[exp5]
scalar = random:4
laser = on
laser_power_pct = 59
laser_diameter_um = 58
sigma_noise = 6.5625
gamma = 0.1
gate_mux = 3
attack = static-only
quiescent_window = 50
allow_inversion = off
seed = 12
repeat = 3
)");
  const auto& s = cfg.scenarios[0];
  const auto text = canonical_text(s);
  EXPECT_EQ(text.rfind("[exp5]\n", 0), 0u);
  EXPECT_EQ(text.find("gamma ="), std::string::npos);
  const auto back = parse_config(text);
  ASSERT_EQ(back.scenarios.size(), 1u);
  EXPECT_EQ(back.scenarios[0], s);
  EXPECT_EQ(canonical_text(back.scenarios[0]), text);
}

TEST(Canonical, HashIsStableAndSensitive) {
  Scenario a;
  const auto h = config_hash(a);
  EXPECT_EQ(h.size(), 64u);
  EXPECT_EQ(h, config_hash(Scenario{}));
  Scenario b;
  b.params.sigma_noise = 1e-9;
  EXPECT_NE(config_hash(b), h);
  EXPECT_EQ(h.find_first_not_of("0123456789abcdef"), std::string::npos);
}

TEST(Canonical, ShortestNumberForm) {
  Scenario s;
  s.params.sigma_noise = 0.1;
  s.laser.power_pct = 100;
  const auto text = canonical_text(s);
  EXPECT_NE(text.find("sigma_noise = 0.1\n"), std::string::npos);
  EXPECT_NE(text.find("laser_power_pct = 100\n"), std::string::npos);
}
