#include "dynspec/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dynspec {

std::string trim_copy(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim_copy(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_uint(std::string_view s) {
  const std::string t = trim_copy(s);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw std::invalid_argument("expected a nonnegative integer, got '" + t + "'");
  return std::stoull(t);
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim_copy(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key=value");
    out[trim_copy(std::string_view(t).substr(0, eq))] = trim_copy(std::string_view(t).substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  return parse_key_values(in);
}

namespace {

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("expected a boolean, got '" + v + "'");
}

}  // namespace

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "tol") {
      const Rational t = parse_rational(value);
      if (t <= 0) throw std::invalid_argument("tol must be positive");
      cfg.tol = t;
    } else if (key == "level") {
      cfg.level = static_cast<unsigned>(parse_uint(value));
    } else if (key == "seed") {
      cfg.seed = parse_uint(value);
    } else if (key == "format") {
      if (value == "csv") {
        cfg.format = OutputFormat::csv;
      } else if (value == "json") {
        cfg.format = OutputFormat::json;
      } else {
        throw std::invalid_argument("format must be csv or json");
      }
    } else if (key == "budget") {
      cfg.budget.cylinders = parse_uint(value);
    } else if (key == "pair_budget") {
      cfg.budget.pairs = parse_uint(value);
    } else if (key == "exact") {
      cfg.exact = parse_bool(value);
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  if (cfg.budget.cylinders == 0 || cfg.budget.pairs == 0) throw std::invalid_argument("budgets must be >= 1");
}

Json config_json(const RunConfig& cfg) {
  return Json{{"tol", cfg.tol.str()},
              {"level", cfg.level},
              {"budget", cfg.budget.cylinders},
              {"pair_budget", cfg.budget.pairs},
              {"seed", cfg.seed},
              {"format", cfg.format == OutputFormat::csv ? "csv" : "json"},
              {"exact", cfg.exact}};
}

std::string config_line(const RunConfig& cfg) {
  std::ostringstream out;
  out << "tol=" << cfg.tol.str() << " level=" << cfg.level << " budget=" << cfg.budget.cylinders
      << " pair_budget=" << cfg.budget.pairs << " seed=" << cfg.seed
      << " format=" << (cfg.format == OutputFormat::csv ? "csv" : "json") << " exact=" << (cfg.exact ? "true" : "false");
  return out.str();
}

Word parse_word(std::string_view s) {
  std::string t(s);
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  Word w;
  std::string item;
  while (in >> item) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument("");
      w.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed word entry '" + item + "'");
    }
  }
  if (w.empty()) throw std::invalid_argument("empty word");
  return w;
}

std::string word_string(const Word& w, char sep) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(w[i]);
  }
  return out;
}

std::vector<Integer> to_digits(const Word& w) {
  std::vector<Integer> out;
  out.reserve(w.size());
  for (int a : w) out.emplace_back(a);
  return out;
}

RegularCantorSet parse_family(std::string_view name) {
  const std::string s = trim_copy(name);
  if (s == "middle_third") return middle_third();
  if (s.rfind("gauss:", 0) == 0) {
    const std::uint64_t n = parse_uint(s.substr(6));
    if (n == 0 || n > 1000) throw std::invalid_argument("gauss:N needs 1 <= N <= 1000");
    return gauss_cantor(static_cast<unsigned>(n));
  }
  if (s.rfind("affine:", 0) == 0) {
    std::vector<Rational> ratios;
    for (const std::string& r : split(std::string_view(s).substr(7), ',')) ratios.push_back(parse_rational(r));
    return affine_cantor(ratios);
  }
  throw std::invalid_argument("unknown family '" + s + "' (middle_third, gauss:N, affine:r1,r2,...)");
}

namespace {

std::vector<int> parse_labels(std::string_view text) {
  const std::string t = trim_copy(text);
  if (auto dots = t.find(".."); dots != std::string::npos) {
    const int lo = std::stoi(t.substr(0, dots)), hi = std::stoi(t.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty label range '" + t + "'");
    std::vector<int> out;
    for (int a = lo; a <= hi; ++a) out.push_back(a);
    return out;
  }
  return parse_word(t);
}

std::vector<std::pair<int, int>> parse_pairs(std::string_view text) {
  std::vector<std::pair<int, int>> out;
  for (const std::string& item : split(text, ',')) {
    if (item.empty()) continue;
    const auto gt = item.find('>');
    if (gt == std::string::npos) throw std::invalid_argument("transition '" + item + "' must look like a>b");
    out.emplace_back(std::stoi(item.substr(0, gt)), std::stoi(item.substr(gt + 1)));
  }
  return out;
}

}  // namespace

Sft parse_sft(std::string_view text) {
  const std::string s = trim_copy(text);
  if (s == "golden") return Sft::from_forbidden({0, 1}, {{1, 1}});
  if (s.rfind("full:", 0) == 0) return Sft::full(parse_labels(s.substr(5)));
  const bool forbid = s.rfind("forbid:", 0) == 0;
  const bool allow = s.rfind("allow:", 0) == 0;
  if (forbid || allow) {
    const std::string body = s.substr(forbid ? 7 : 6);
    const auto slash = body.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("expected labels/transitions in '" + s + "'");
    const std::vector<int> labels = parse_labels(body.substr(0, slash));
    const auto pairs = parse_pairs(body.substr(slash + 1));
    return forbid ? Sft::from_forbidden(labels, pairs) : Sft::from_pairs(labels, pairs);
  }
  throw std::invalid_argument("unknown shift '" + s + "' (full:..., golden, forbid:.../..., allow:.../...)");
}

Potential parse_potential(std::string_view text) {
  const std::string s = trim_copy(text);
  if (s == "symbol") return symbol_potential();
  if (s.rfind("cf_sum:", 0) == 0) return cf_sum_potential(static_cast<unsigned>(parse_uint(s.substr(7))));
  if (s.rfind("const:", 0) == 0) return constant_potential(parse_rational(s.substr(6)));
  if (s.rfind("indicator:", 0) == 0) return indicator_potential(std::stoi(s.substr(10)));
  throw std::invalid_argument("unknown potential '" + s + "' (cf_sum:m, symbol, const:c, indicator:a)");
}

MarkovHorseshoe horseshoe_from_config(const std::map<std::string, std::string>& kv) {
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("horseshoe config is missing '" + key + "'");
    return it->second;
  };
  for (const auto& entry : kv) {
    const std::string& key = entry.first;
    if (key != "symbols" && key != "transitions" && key != "unstable" && key != "stable" && key != "conservative" &&
        key != "name")
      throw std::invalid_argument("unknown horseshoe key '" + key + "'");
  }
  std::vector<int> labels = parse_labels(get("symbols"));
  const Sft sft = kv.count("transitions") ? Sft::from_pairs(labels, parse_pairs(kv.at("transitions"))) : Sft::full(labels);
  // ratios are given in the order symbols were listed
  auto ratios = [&](const std::string& key) {
    std::vector<Rational> listed;
    for (const std::string& r : split(get(key), ',')) listed.push_back(parse_rational(r));
    if (listed.size() != labels.size()) throw std::invalid_argument("'" + key + "' needs one ratio per symbol");
    std::vector<Rational> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) out[sft.index_of(labels[i])] = listed[i];
    return out;
  };
  const bool conservative = kv.count("conservative") ? parse_bool(kv.at("conservative")) : false;
  const std::string name = kv.count("name") ? kv.at("name") : "horseshoe";
  return affine_horseshoe(sft, ratios("unstable"), ratios("stable"), conservative, name);
}

Json enclosure_json(const Enclosure& e, bool exact) {
  const int digits = resolving_digits(e.width());
  Json j{{"value", format_enclosure(e)},
         {"midpoint", to_decimal(e.midpoint(), digits)},
         {"halfwidth", to_decimal(e.width() / 2, digits, true)}};
  if (exact) {
    j["lo"] = e.lo.str();
    j["hi"] = e.hi.str();
  }
  return j;
}

std::string sample_csv(const SpectrumSample& s) {
  std::ostringstream out;
  out << "value_lo,value_hi,witness_word\n";
  for (const SpectrumPoint& p : s.values) {
    const int digits = resolving_digits(p.value.width());
    out << to_decimal(p.value.lo, digits) << ',' << to_decimal(p.value.hi, digits, true) << ','
        << word_string(p.witness) << '\n';
  }
  return out.str();
}

Json sample_json(const SpectrumSample& s, bool exact) {
  Json values = Json::array();
  for (const SpectrumPoint& p : s.values) {
    Json v = enclosure_json(p.value, exact);
    v["witness"] = word_string(p.witness);
    values.push_back(std::move(v));
  }
  return Json{{"max_period", s.max_period}, {"tol", s.tol.str()}, {"values", std::move(values)}};
}

std::string intervals_csv(const std::vector<Enclosure>& v) {
  std::ostringstream out;
  out << "lo,hi\n";
  for (const Enclosure& e : v) {
    const int digits = std::max(resolving_digits(e.width()), 12);
    out << to_decimal(e.lo, digits) << ',' << to_decimal(e.hi, digits, true) << '\n';
  }
  return out.str();
}

}  // namespace dynspec
