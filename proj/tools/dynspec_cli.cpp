#include "dynspec/acceptance.hpp"
#include "dynspec/cantor.hpp"
#include "dynspec/cf_arith.hpp"
#include "dynspec/combinat.hpp"
#include "dynspec/horseshoe.hpp"
#include "dynspec/io.hpp"
#include "dynspec/symbolic.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

using namespace dynspec;

namespace {

struct Flags {
  std::optional<std::string> tol, config;
  std::optional<unsigned> level;
  std::optional<std::uint64_t> seed, budget, pair_budget;
  std::optional<std::string> format;
  bool exact = false;
  bool timing = false;
};

struct Output {
  Json result = Json::object();
  std::optional<std::string> csv;
  int exit_code = 0;
};

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (f.config) apply_config(cfg, read_key_value_file(*f.config));
  std::map<std::string, std::string> kv;
  if (f.tol) kv["tol"] = *f.tol;
  if (f.level) kv["level"] = std::to_string(*f.level);
  if (f.seed) kv["seed"] = std::to_string(*f.seed);
  if (f.budget) kv["budget"] = std::to_string(*f.budget);
  if (f.pair_budget) kv["pair_budget"] = std::to_string(*f.pair_budget);
  if (f.format) kv["format"] = *f.format;
  if (f.exact) kv["exact"] = "true";
  apply_config(cfg, kv);
  return cfg;
}

Json bounds_json(const DimBounds& b, bool exact) { return enclosure_json(Enclosure(b.lower, b.upper), exact); }

// key,value rows for results without a natural table
void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

std::pair<Rational, Rational> parse_range(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw std::invalid_argument("expected lo,hi");
  return {parse_rational(parts[0]), parse_rational(parts[1])};
}

Rational parse_positive(const std::string& text, const char* what) {
  const Rational r = parse_rational(text);
  if (r <= 0) throw std::invalid_argument(std::string(what) + " must be positive");
  return r;
}

int error_exit(const std::string& kind, const std::string& message, int code) {
  std::cerr << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markov and Lagrange spectra, Cantor set dimensions and sums"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--tol", flags.tol, "tolerance (rational or decimal)");
  app.add_option("--level", flags.level, "construction level");
  app.add_option("--seed", flags.seed, "random seed");
  app.add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--budget", flags.budget, "cylinder budget");
  app.add_option("--pair-budget", flags.pair_budget, "pair budget for sums");
  app.add_option("--config", flags.config, "key=value config file");
  app.add_flag("--exact", flags.exact, "also print exact rational endpoints");
  app.add_flag("--timing", flags.timing, "report wall time on stderr");

  RunConfig cfg;
  Output out;
  std::function<void()> action;

  std::string cf_text, word_text, form_text, family_a, family_b, sft_text, potential_text, config_path, hs_mode;
  unsigned radius = 100, max_period = 6, hs_period = 5;
  std::string check_text, slack_text = "1/100", detect_text, hs_potential = "cf_sum:12";

  auto* lagrange = app.add_subcommand("lagrange", "Lagrange value of an eventually periodic continued fraction");
  lagrange->add_option("cf", cf_text, "e.g. [1;(1)] or [0;3,(1,2)]")->required();
  lagrange->callback([&] {
    action = [&] {
      const ContinuedFraction cf = ContinuedFraction::parse(cf_text);
      out.result = Json{{"cf", cf.str()}, {"lagrange", enclosure_json(lagrange_value(cf, cfg.tol), cfg.exact)}};
    };
  });

  auto* markov = app.add_subcommand("markov-word", "Markov value of a bi-infinite periodic word");
  markov->add_option("word", word_text, "digits, e.g. 1,2 or \"1 2\"")->required();
  markov->callback([&] {
    action = [&] {
      const Word w = parse_word(word_text);
      for (int a : w)
        if (a < 1) throw std::invalid_argument("word digits must be positive");
      out.result =
          Json{{"word", word_string(w)}, {"markov", enclosure_json(markov_value_word(to_digits(w), cfg.tol), cfg.exact)}};
    };
  });

  auto* form = app.add_subcommand("form", "normalized inverse minimum of a binary quadratic form");
  form->add_option("coefficients", form_text, "a,b,c for a x^2 + b x y + c y^2")->required();
  form->add_option("--radius", radius, "search box radius");
  form->callback([&] {
    action = [&] {
      const auto parts = split(form_text, ',');
      if (parts.size() != 3) throw std::invalid_argument("form needs a,b,c");
      const QuadraticForm q{parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2])};
      if (radius == 0) throw std::invalid_argument("radius must be >= 1");
      out.result = Json{{"form", form_text},
                        {"radius", radius},
                        {"value", enclosure_json(form_markov_value(q, radius, cfg.tol), cfg.exact)}};
    };
  });

  auto* constants = app.add_subcommand("constants", "Freiman constant and its height");
  constants->callback([&] {
    action = [&] {
      const Enclosure f = freiman_constant(cfg.tol);
      out.result = Json{{"freiman", enclosure_json(f, cfg.exact)}, {"mu", enclosure_json(height_map(f), cfg.exact)}};
    };
  });

  auto* dim = app.add_subcommand("dim", "Hausdorff dimension bounds of a Cantor set");
  dim->add_option("family", family_a, "middle_third | gauss:N | affine:r1,r2,...")->required();
  dim->callback([&] {
    action = [&] {
      const RegularCantorSet k = parse_family(family_a);
      const DimBounds b = dim_bounds(k, cfg.level, cfg.tol, cfg.budget);
      out.result = Json{{"family", family_a}, {"level", cfg.level}, {"dimension", bounds_json(b, cfg.exact)}};
    };
  });

  auto* sum = app.add_subcommand("sum", "cover of the arithmetic sum of two Cantor sets");
  sum->add_option("first", family_a)->required();
  sum->add_option("second", family_b)->required();
  sum->add_option("--check", check_text, "target interval lo,hi");
  sum->add_option("--slack", slack_text, "allowed slack at the target ends");
  sum->callback([&] {
    action = [&] {
      const RegularCantorSet k1 = parse_family(family_a), k2 = parse_family(family_b);
      const std::vector<Enclosure> cover = cantor_sum_cover(k1, k2, cfg.level, cfg.budget);
      Json intervals = Json::array();
      for (const Enclosure& e : cover) intervals.push_back(Json::array({to_decimal(e.lo, 12), to_decimal(e.hi, 12, true)}));
      out.result = Json{{"first", family_a}, {"second", family_b}, {"level", cfg.level}, {"components", cover.size()},
                        {"intervals", intervals}};
      if (!check_text.empty()) {
        const auto [lo, hi] = parse_range(check_text);
        const Rational slack = parse_rational(slack_text);
        if (slack < 0) throw std::invalid_argument("slack must be nonnegative");
        const SumCheck c = sum_interval_check(cover, lo, hi, slack);
        Json check{{"target", Json::array({to_decimal(c.target.lo, 12), to_decimal(c.target.hi, 12, true)})},
                   {"slack", slack.str()},
                   {"contained", c.contained}};
        if (c.largest_gap)
          check["largest_gap"] = Json::array({to_decimal(c.largest_gap->lo, 12), to_decimal(c.largest_gap->hi, 12, true)});
        out.result["check"] = check;
        if (!c.contained) out.exit_code = 1;
      }
      out.csv = intervals_csv(cover);
    };
  });

  auto* spectrum = app.add_subcommand("spectrum", "dynamical Markov spectrum sample over a shift");
  spectrum->add_option("sft", sft_text, "full:1..4 | full:1,2 | golden | forbid:L/a>b,... | allow:L/a>b,...")->required();
  spectrum->add_option("potential", potential_text, "cf_sum:m | symbol | const:c | indicator:a")->required();
  spectrum->add_option("--max-period", max_period, "longest period sampled");
  spectrum->add_option("--detect", detect_text, "gap threshold for candidate intervals");
  spectrum->callback([&] {
    action = [&] {
      const Sft s = parse_sft(sft_text);
      const Potential f = parse_potential(potential_text);
      const SpectrumSample sample = spectrum_sample(s, f, max_period, cfg.tol);
      out.result = Json{{"sft", sft_text}, {"potential", f.name}, {"sample", sample_json(sample, cfg.exact)}};
      if (!detect_text.empty()) {
        Json cands = Json::array();
        for (const CandidateInterval& c : interval_detect(sample, parse_positive(detect_text, "gap threshold")))
          cands.push_back(Json{{"lo", to_decimal(c.lo, 12)}, {"hi", to_decimal(c.hi, 12, true)}, {"run_length", c.run_length}});
        out.result["candidates"] = cands;
      }
      out.csv = sample_csv(sample);
    };
  });

  auto* horseshoe = app.add_subcommand("horseshoe", "dimension or spectrum of a horseshoe described in a file");
  horseshoe->add_option("config", config_path, "key=value horseshoe description")->required()->check(CLI::ExistingFile);
  horseshoe->add_option("mode", hs_mode, "dim or spectrum")->required()->check(CLI::IsMember({"dim", "spectrum"}));
  horseshoe->add_option("--potential", hs_potential, "orbit functional for spectrum");
  horseshoe->add_option("--max-period", hs_period, "longest period for spectrum");
  horseshoe->callback([&] {
    action = [&] {
      const MarkovHorseshoe h = horseshoe_from_config(read_key_value_file(config_path));
      out.result = Json{{"horseshoe", h.name}, {"symbols", h.sft.labels().size()}, {"conservative", h.conservative}};
      if (hs_mode == "dim") {
        const DimBounds s = dim_bounds(stable_cantor(h), cfg.level, cfg.tol, cfg.budget);
        const DimBounds u = dim_bounds(unstable_cantor(h), cfg.level, cfg.tol, cfg.budget);
        out.result["level"] = cfg.level;
        out.result["stable"] = bounds_json(s, cfg.exact);
        out.result["unstable"] = bounds_json(u, cfg.exact);
        out.result["dimension"] = bounds_json({s.lower + u.lower, s.upper + u.upper}, cfg.exact);
      } else {
        const Potential f = parse_potential(hs_potential);
        const SpectrumSample sample = horseshoe_spectrum(h, f, hs_period, cfg.tol);
        out.result["potential"] = f.name;
        out.result["sample"] = sample_json(sample, cfg.exact);
        out.csv = sample_csv(sample);
      }
    };
  });

  auto* lemma = app.add_subcommand("lemma", "randomized checks of the combinatorial lemmas");
  lemma->require_subcommand(1);
  std::size_t lm_n = 100, lm_zeros = 100, lm_disturb = 3;
  unsigned lm_k = 5;
  std::uint64_t lm_trials = 1000, lm_samples = 100000;
  std::string lm_alpha = "2/5";
  double lm_c = 1;

  auto* trace = lemma->add_subcommand("trace", "tr(A^k) >= (n/2)^k on a random dense matrix");
  trace->add_option("--n", lm_n);
  trace->add_option("--zeros", lm_zeros);
  trace->add_option("--k", lm_k, "largest power");
  trace->callback([&] {
    action = [&] {
      std::mt19937_64 rng(cfg.seed);
      const DenseMatrix a = random_dense_matrix(lm_n, lm_zeros, rng);
      Json checks = Json::array();
      bool ok = true;
      unsigned k = 2;
      for (const TraceCheck& c : trace_bound_checks(a, lm_k)) {
        checks.push_back(Json{{"k", k++}, {"trace", c.trace.str()}, {"bound", to_decimal(c.bound, 3)}, {"holds", c.holds}});
        ok = ok && c.holds;
      }
      out.result = Json{{"n", lm_n}, {"density", a.density().str()}, {"checks", checks}, {"passed", ok}};
      if (!ok) out.exit_code = 1;
    };
  });

  auto* core = lemma->add_subcommand("core", "dense core of a random dense matrix");
  core->add_option("--n", lm_n);
  core->add_option("--zeros", lm_zeros);
  core->add_option("--k", lm_k, "largest power checked on the core");
  core->callback([&] {
    action = [&] {
      std::mt19937_64 rng(cfg.seed);
      const DenseMatrix a = random_dense_matrix(lm_n, lm_zeros, rng);
      const CoreReport r = dense_core(a, lm_k);
      Json powers = Json::array();
      for (bool b : r.power_ok) powers.push_back(b);
      out.result = Json{{"n", r.n},          {"density", r.density.str()}, {"core_size", r.core.size()},
                        {"size_ok", r.size_ok}, {"square_ok", r.square_ok},   {"power_ok", powers},
                        {"passed", r.passed()}};
      if (!r.passed()) out.exit_code = 1;
    };
  });

  auto* inject = lemma->add_subcommand("inject", "injectivity rate of random maps from floor(N^alpha) points");
  inject->add_option("--n", lm_n);
  inject->add_option("--alpha", lm_alpha);
  inject->add_option("--trials", lm_trials);
  inject->callback([&] {
    action = [&] {
      const InjectionEstimate e = injection_trials(lm_n, parse_rational(lm_alpha), lm_trials, cfg.seed);
      out.result = Json{{"n", e.n},
                        {"alpha", e.alpha.str()},
                        {"domain", e.domain},
                        {"trials", e.trials},
                        {"injective", e.injective},
                        {"rate", e.rate},
                        {"sigma", e.sigma},
                        {"bound", e.bound},
                        {"exact_probability", e.exact_probability},
                        {"passed", e.passed}};
      if (!e.passed) out.exit_code = 1;
    };
  });

  auto* census = lemma->add_subcommand("census", "sampled frequency of prohibited transitions");
  census->add_option("--n", lm_n, "number of words");
  census->add_option("--disturb", lm_disturb, "disturb set size");
  census->add_option("--samples", lm_samples);
  census->add_option("--c", lm_c, "constant in front of log N / sqrt N");
  census->callback([&] {
    action = [&] {
      if (lm_n < 2) throw std::invalid_argument("census needs n >= 2");
      unsigned len = 1;
      while ((std::size_t{1} << len) < lm_n) ++len;
      ProhibitionInstance inst;
      inst.words = enumerate_words(middle_third().sft(), len);
      inst.words.resize(lm_n);
      inst.disturb = random_disturb_sets(lm_n, lm_disturb, cfg.seed);
      const CensusReport r = prohibited_transition_census(inst, lm_samples, splitmix64(cfg.seed), lm_c);
      out.result = Json{{"n", r.n},
                        {"word_length", len},
                        {"samples", r.samples},
                        {"prohibited", r.prohibited},
                        {"estimate", r.estimate},
                        {"comparator", r.comparator},
                        {"c", r.c},
                        {"below", r.below}};
    };
  });

  auto* accept = app.add_subcommand("accept", "run the acceptance suite");
  accept->callback([&] {
    action = [&] {
      Json rows = Json::array();
      std::ostringstream csv;
      csv << "id,name,passed,detail\n";
      bool all = true;
      for (const CriterionResult& r : run_acceptance()) {
        Json row{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
        if (flags.timing) row["seconds"] = r.seconds;
        row["limit_seconds"] = r.limit_seconds;
        rows.push_back(row);
        csv << r.id << ',' << r.name << ',' << (r.passed ? "PASS" : "FAIL") << ",\"" << r.detail << "\"\n";
        all = all && r.passed;
      }
      out.result = Json{{"criteria", rows}, {"all_passed", all}};
      out.csv = csv.str();
      if (!all) out.exit_code = 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return error_exit("usage", e.what(), 2);
  }

  std::string command;
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    command += (command.empty() ? "" : " ") + sub->get_name();
  }
  const auto start = std::chrono::steady_clock::now();
  try {
    cfg = resolve(flags);
    action();
  } catch (const BudgetError& e) {
    return error_exit("budget", e.what(), 1);
  } catch (const PreconditionError& e) {
    return error_exit("precondition", e.what(), 1);
  } catch (const std::invalid_argument& e) {
    return error_exit("usage", e.what(), 2);
  } catch (const std::exception& e) {
    return error_exit("computation", e.what(), 1);
  }
  if (flags.timing)
    std::cerr << "elapsed " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
              << " s\n";

  if (cfg.format == OutputFormat::json) {
    std::cout << Json{{"command", command}, {"config", config_json(cfg)}, {"result", out.result}}.dump(2) << '\n';
  } else {
    std::cout << "# command=" << command << ' ' << config_line(cfg) << '\n';
    if (out.csv) {
      std::cout << *out.csv;
    } else {
      std::cout << "key,value\n";
      flatten(out.result, "", std::cout);
    }
  }
  return out.exit_code;
}
