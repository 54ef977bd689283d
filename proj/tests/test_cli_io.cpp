#include "dynspec/io.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace dynspec;

TEST(Config, KeyValueParsing) {
  std::istringstream in("# defaults\ntol = 1/1000\n\nlevel=5   # inline\nseed = 42\nformat = csv\nexact = yes\n");
  RunConfig cfg;
  apply_config(cfg, parse_key_values(in));
  EXPECT_EQ(cfg.tol, Rational(1, 1000));
  EXPECT_EQ(cfg.level, 5u);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.format, OutputFormat::csv);
  EXPECT_TRUE(cfg.exact);
  EXPECT_EQ(config_line(cfg), "tol=1/1000 level=5 budget=1000000 pair_budget=10000000 seed=42 format=csv exact=true");
}

TEST(Config, Errors) {
  RunConfig cfg;
  std::istringstream no_eq("tol 1\n");
  EXPECT_THROW(parse_key_values(no_eq), std::invalid_argument);
  EXPECT_THROW(apply_config(cfg, {{"tol", "0"}}), std::invalid_argument);
  EXPECT_THROW(apply_config(cfg, {{"budget", "0"}}), std::invalid_argument);
  EXPECT_THROW(apply_config(cfg, {{"colour", "red"}}), std::invalid_argument);
  EXPECT_THROW(apply_config(cfg, {{"format", "xml"}}), std::invalid_argument);
  EXPECT_THROW(apply_config(cfg, {{"level", "-3"}}), std::invalid_argument);
  EXPECT_THROW(read_key_value_file("/nonexistent/run.cfg"), std::invalid_argument);
}

TEST(Parsing, Words) {
  EXPECT_EQ(parse_word("1,2,3"), (Word{1, 2, 3}));
  EXPECT_EQ(parse_word("1 2  3"), (Word{1, 2, 3}));
  EXPECT_THROW(parse_word(""), std::invalid_argument);
  EXPECT_THROW(parse_word("1,x"), std::invalid_argument);
  EXPECT_EQ(word_string({4, 5}), "4 5");
}

TEST(Parsing, Shifts) {
  EXPECT_EQ(parse_sft("full:1..4"), Sft::full_range(1, 4));
  EXPECT_EQ(parse_sft("full:1,3"), Sft::full({1, 3}));
  EXPECT_EQ(parse_sft("golden"), Sft::from_forbidden({0, 1}, {{1, 1}}));
  EXPECT_EQ(parse_sft("forbid:1..2/2>2"), Sft::from_forbidden({1, 2}, {{2, 2}}));
  EXPECT_EQ(parse_sft("allow:1,2/1>2,2>1,2>2"), Sft::from_pairs({1, 2}, {{1, 2}, {2, 1}, {2, 2}}));
  EXPECT_THROW(parse_sft("cyclic:3"), std::invalid_argument);
  EXPECT_THROW(parse_sft("allow:1,2/1-2"), std::invalid_argument);
}

TEST(Parsing, Families) {
  EXPECT_EQ(parse_family("middle_third").name(), "middle_third");
  EXPECT_EQ(parse_family("gauss:3").sft().size(), 3u);
  EXPECT_EQ(parse_family("affine:1/2,1/4").sft().size(), 2u);
  EXPECT_THROW(parse_family("gauss:0"), std::invalid_argument);
  EXPECT_THROW(parse_family("sierpinski"), std::invalid_argument);
}

TEST(Parsing, Potentials) {
  const Rational tol(1, 1000);
  EXPECT_EQ(parse_potential("const:3/2")({1}, tol), Enclosure::exact(Rational(3, 2)));
  EXPECT_EQ(parse_potential("symbol")({4}, tol), Enclosure::exact(4));
  EXPECT_EQ(parse_potential("cf_sum:5").locality, 5u);
  EXPECT_EQ(parse_potential("indicator:2").locality, 0u);
  EXPECT_THROW(parse_potential("gaussian"), std::invalid_argument);
}

TEST(HorseshoeConfig, SymbolOrderFollowsListing) {
  const MarkovHorseshoe h = horseshoe_from_config(
      {{"symbols", "2,1"}, {"unstable", "1/4,1/3"}, {"stable", "1/5,1/6"}, {"name", "swapped"}});
  EXPECT_EQ(h.name, "swapped");
  EXPECT_EQ(h.unstable_ratio, (std::vector<Rational>{Rational(1, 3), Rational(1, 4)}));
  EXPECT_EQ(h.stable_ratio, (std::vector<Rational>{Rational(1, 6), Rational(1, 5)}));
  EXPECT_THROW(horseshoe_from_config({{"symbols", "1,2"}, {"unstable", "1/3"}, {"stable", "1/3,1/3"}}),
               std::invalid_argument);
  EXPECT_THROW(horseshoe_from_config({{"symbols", "1,2"}}), std::invalid_argument);
  EXPECT_THROW(horseshoe_from_config({{"symbols", "1"}, {"unstable", "1/3"}, {"stable", "1/3"}, {"shape", "x"}}),
               std::invalid_argument);
}

TEST(Output, EnclosureJson) {
  const Enclosure e(Rational(1, 3), Rational(1, 2));
  const Json plain = enclosure_json(e, false);
  EXPECT_FALSE(plain.contains("lo"));
  EXPECT_EQ(plain["midpoint"].get<std::string>().rfind("0.41", 0), 0u);
  const Json exact = enclosure_json(e, true);
  EXPECT_EQ(exact["lo"], "1/3");
  EXPECT_EQ(exact["hi"], "1/2");
}

TEST(Output, IntervalsCsv) {
  const std::string csv = intervals_csv({{Rational(0), Rational(1, 3)}});
  EXPECT_EQ(csv, "lo,hi\n0.000000000000,0.333333333334\n");
}
