#pragma once

#include "dynspec/cantor.hpp"
#include "dynspec/cf_arith.hpp"
#include "dynspec/horseshoe.hpp"
#include "dynspec/symbolic.hpp"

#include <json.hpp>

#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dynspec {

using Json = nlohmann::ordered_json;

enum class OutputFormat { csv, json };

struct RunConfig {
  Rational tol{1, 1000000000};
  unsigned level = 6;
  Budget budget;
  std::uint64_t seed = 20240607;
  OutputFormat format = OutputFormat::json;
  bool exact = false;
};

/// key=value lines; '#' starts a comment.
std::map<std::string, std::string> parse_key_values(std::istream& in);
std::map<std::string, std::string> read_key_value_file(const std::string& path);

/// Overrides fields named tol, level, seed, format, budget, pair_budget, exact.
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv);

Json config_json(const RunConfig& cfg);
std::string config_line(const RunConfig& cfg);

std::vector<std::string> split(std::string_view s, char sep);
std::string trim_copy(std::string_view s);
std::uint64_t parse_uint(std::string_view s);
/// "1,2,3" or "1 2 3".
Word parse_word(std::string_view s);
std::string word_string(const Word& w, char sep = ' ');
std::vector<Integer> to_digits(const Word& w);

/// middle_third | gauss:N | affine:r1,r2,...
RegularCantorSet parse_family(std::string_view name);

/// full:1..4 | full:1,2,5 | golden | forbid:0,1/1>1,0>0 | allow:1,2/1>2,2>1,2>2
Sft parse_sft(std::string_view text);

/// cf_sum:m | symbol | const:c | indicator:a
Potential parse_potential(std::string_view text);

/// Horseshoe description: symbols, transitions (optional, a>b list),
/// unstable, stable, conservative, name.
MarkovHorseshoe horseshoe_from_config(const std::map<std::string, std::string>& kv);

Json enclosure_json(const Enclosure& e, bool exact);
std::string sample_csv(const SpectrumSample& s);
Json sample_json(const SpectrumSample& s, bool exact);
std::string intervals_csv(const std::vector<Enclosure>& v);

}  // namespace dynspec
