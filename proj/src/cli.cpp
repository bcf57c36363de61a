#include "bjcomp/cli.hpp"

#include <charconv>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bjcomp/combinatorics.hpp"
#include "bjcomp/counting.hpp"
#include "bjcomp/oracle.hpp"
#include "bjcomp/probability.hpp"
#include "bjcomp/rules.hpp"

namespace bjcomp {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_fixed4(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 4);
  return std::string(buf, res.ptr);
}

std::string plus_string(const Composition& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) out.push_back('+');
    out += std::to_string(c[i]);
  }
  return out;
}

json rules_json(const RuleSet& r) {
  return json{{"stand", r.stand}, {"bust", r.bust}, {"max_card", r.max_card}};
}

void check_cli_upcard(int upcard, const RuleSet& rules) {
  if (upcard < 2 || upcard > rules.max_card) {
    throw std::invalid_argument("upcard must be in [2, " +
                                std::to_string(rules.max_card) +
                                "] (11 = ace), got " + std::to_string(upcard));
  }
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto sep = text.find("..");
  if (sep == std::string::npos) {
    throw std::invalid_argument("range must look like LO..HI, got '" + text +
                                "'");
  }
  const std::string lo = text.substr(0, sep);
  const std::string hi = text.substr(sep + 2);
  try {
    std::size_t used_lo = 0, used_hi = 0;
    const int a = std::stoi(lo, &used_lo);
    const int b = std::stoi(hi, &used_hi);
    if (used_lo != lo.size() || used_hi != hi.size()) throw std::exception();
    return {a, b};
  } catch (...) {
    throw std::invalid_argument("range must look like LO..HI, got '" + text +
                                "'");
  }
}

std::vector<int> parse_parts(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::exception();
    } catch (...) {
      throw std::invalid_argument("parts must be a comma-separated integer "
                                  "list, got '" + text + "'");
    }
  }
  if (parts.empty()) {
    throw std::invalid_argument("at least one part is required");
  }
  return parts;
}

enum class Format { table, csv, json_fmt };

struct CommonOptions {
  RuleSet rules;
  std::string format = "table";

  Format fmt() const {
    if (format == "table") return Format::table;
    if (format == "csv") return Format::csv;
    if (format == "json") return Format::json_fmt;
    throw std::invalid_argument("format must be table, csv or json");
  }
};

void add_common(CLI::App* sub, CommonOptions& opts) {
  sub->add_option("--stand", opts.rules.stand, "Dealer stand value")
      ->capture_default_str();
  sub->add_option("--bust", opts.rules.bust, "Largest non-busting total")
      ->capture_default_str();
  sub->add_option("--max-card", opts.rules.max_card, "Highest card value")
      ->capture_default_str();
  sub->add_option("--format", opts.format, "Output format: table|csv|json")
      ->capture_default_str()
      ->check(CLI::IsMember({"table", "csv", "json"}));
}

int run_count(const CommonOptions& opts, const Query& q, bool breakdown,
              bool with_oracle, std::ostream& out) {
  check_cli_upcard(q.upcard, opts.rules);
  const CountBreakdown b = count(q, opts.rules);
  std::int64_t oracle = 0;
  bool match = false;
  if (with_oracle) {
    oracle = oracle_count(q, opts.rules);
    match = (oracle == b.net);
  }
  switch (opts.fmt()) {
    case Format::table: {
      if (breakdown) {
        out << "unrestricted " << b.unrestricted << "\n"
            << "r1           " << b.r1 << "\n"
            << "r2           " << b.r2 << "\n"
            << "r3           " << b.r3 << "\n"
            << "r4           " << b.r4 << "\n"
            << "r_star       " << b.r_star << "\n"
            << "r2_star      " << b.r2_star << "\n"
            << "net          " << b.net << "\n";
      } else {
        out << b.net << "\n";
      }
      if (with_oracle) {
        out << "oracle       " << oracle << "\n"
            << (match ? "MATCH" : "MISMATCH") << "\n";
      }
      break;
    }
    case Format::csv: {
      std::string header = breakdown
          ? "unrestricted,r1,r2,r3,r4,r_star,r2_star,net"
          : "net";
      std::string row = breakdown
          ? std::to_string(b.unrestricted) + ',' + std::to_string(b.r1) + ',' +
                std::to_string(b.r2) + ',' + std::to_string(b.r3) + ',' +
                std::to_string(b.r4) + ',' + std::to_string(b.r_star) + ',' +
                std::to_string(b.r2_star) + ',' + std::to_string(b.net)
          : std::to_string(b.net);
      if (with_oracle) {
        header += ",oracle,match";
        row += ',' + std::to_string(oracle) + ',' +
               (match ? std::string("MATCH") : std::string("MISMATCH"));
      }
      out << header << "\n" << row << "\n";
      break;
    }
    case Format::json_fmt: {
      json j{{"cards", q.cards},
             {"upcard", q.upcard},
             {"target", q.target},
             {"rules", rules_json(opts.rules)},
             {"net", b.net}};
      if (breakdown) j["breakdown"] = to_json(b);
      if (with_oracle) {
        j["oracle"] = oracle;
        j["match"] = match;
      }
      out << j.dump(2) << "\n";
      break;
    }
  }
  return 0;
}

int run_enumerate(const CommonOptions& opts, const Query& q,
                  std::ostream& out) {
  check_cli_upcard(q.upcard, opts.rules);
  const std::vector<Composition> legal = enumerate_legal(q, opts.rules);
  switch (opts.fmt()) {
    case Format::table:
      for (const auto& c : legal) out << plus_string(c) << "\n";
      break;
    case Format::csv:
      out << "composition\n";
      for (const auto& c : legal) out << plus_string(c) << "\n";
      break;
    case Format::json_fmt: {
      json comps = json::array();
      for (const auto& c : legal) comps.push_back(c.parts());
      json j{{"cards", q.cards},
             {"upcard", q.upcard},
             {"target", q.target},
             {"rules", rules_json(opts.rules)},
             {"compositions", std::move(comps)}};
      out << j.dump(2) << "\n";
      break;
    }
  }
  return 0;
}

int run_prob(const CommonOptions& opts, int upcard, int target, bool force_exact,
             std::ostream& out) {
  check_cli_upcard(upcard, opts.rules);
  const bool exact = force_exact || (target - upcard > 9);
  const double p =
      exact ? exact_probability(target, upcard, opts.rules,
                                CardDistribution::infinite_deck())
            : closed_form_probability(target, upcard, opts.rules);
  switch (opts.fmt()) {
    case Format::table:
      out << fmt_fixed4(p) << "\n";
      break;
    case Format::csv:
      out << "probability\n" << fmt_double(p) << "\n";
      break;
    case Format::json_fmt: {
      json j{{"upcard", upcard},
             {"target", target},
             {"rules", rules_json(opts.rules)},
             {"method", exact ? "exact" : "closed_form"},
             {"probability", p}};
      out << j.dump(2) << "\n";
      break;
    }
  }
  return 0;
}

int run_dist(const CommonOptions& opts, int upcard, std::uint64_t mc_trials,
             std::uint64_t seed, std::ostream& out) {
  check_cli_upcard(upcard, opts.rules);
  const auto cards = CardDistribution::infinite_deck();
  const OutcomeDistribution dist =
      outcome_distribution(upcard, opts.rules, cards);
  const bool with_mc = mc_trials > 0;
  MonteCarloDistribution mc;
  if (with_mc) mc = monte_carlo(upcard, opts.rules, cards, mc_trials, seed);
  switch (opts.fmt()) {
    case Format::table: {
      out << (with_mc ? "total  probability  mc_estimate  mc_stderr\n"
                      : "total  probability\n");
      auto row = [&](const std::string& label, double p, double est,
                     double se) {
        out << std::left << std::setw(5) << label << "  " << fmt_fixed4(p);
        if (with_mc) {
          out << "       " << fmt_fixed4(est) << "       " << fmt_double(se);
        }
        out << "\n";
      };
      for (const auto& [total, mass] : dist.final_totals) {
        row(std::to_string(total), mass,
            with_mc ? mc.estimate.final_totals.at(total) : 0.0,
            with_mc ? mc.stderr_totals.at(total) : 0.0);
      }
      row("bust", dist.bust_mass, with_mc ? mc.estimate.bust_mass : 0.0,
          with_mc ? mc.stderr_bust : 0.0);
      break;
    }
    case Format::csv: {
      if (!with_mc) {
        write_csv(dist, out);
      } else {
        out << "total,probability,stderr,mc_probability,mc_stderr\n";
        for (const auto& [total, mass] : dist.final_totals) {
          out << total << ',' << fmt_double(mass) << ",0,"
              << fmt_double(mc.estimate.final_totals.at(total)) << ','
              << fmt_double(mc.stderr_totals.at(total)) << "\n";
        }
        out << "bust," << fmt_double(dist.bust_mass) << ",0,"
            << fmt_double(mc.estimate.bust_mass) << ','
            << fmt_double(mc.stderr_bust) << "\n";
      }
      break;
    }
    case Format::json_fmt: {
      json j = to_json(dist);
      j["upcard"] = upcard;
      j["rules"] = rules_json(opts.rules);
      if (with_mc) j["monte_carlo"] = to_json(mc);
      out << j.dump(2) << "\n";
      break;
    }
  }
  return 0;
}

int run_verify(const CommonOptions& opts, const std::string& upcard_range,
               const std::string& target_range, int cards_max, bool strict,
               std::ostream& out) {
  SweepSpec spec;
  if (!upcard_range.empty()) {
    std::tie(spec.upcard_first, spec.upcard_last) = parse_range(upcard_range);
  } else {
    spec.upcard_first = 2;
    spec.upcard_last = opts.rules.max_card;
  }
  if (!target_range.empty()) {
    std::tie(spec.target_first, spec.target_last) = parse_range(target_range);
  } else {
    spec.target_first = opts.rules.stand;
    spec.target_last = opts.rules.bust;
  }
  spec.max_cards = cards_max;
  const DiscrepancyReport report = verify_sweep(spec, opts.rules);
  switch (opts.fmt()) {
    case Format::csv:
      write_csv(report, out);
      break;
    case Format::table:
      write_csv(report, out);
      out << "\n"
          << "closed regime:  " << report.closed.agreements << " agree, "
          << report.closed.disagreements << " disagree\n"
          << "general regime: " << report.general.agreements << " agree, "
          << report.general.disagreements << " disagree\n";
      break;
    case Format::json_fmt: {
      json records = json::array();
      for (const auto& r : report.records) {
        records.push_back(json{{"m", r.cards},
                               {"w", r.target},
                               {"s", r.stand},
                               {"d", r.upcard},
                               {"b", r.bust},
                               {"max_card", r.max_card},
                               {"regime", r.closed_regime ? "closed" : "general"},
                               {"formula_net", r.formula_net},
                               {"oracle_count", r.oracle},
                               {"delta", r.delta()}});
      }
      json j{{"records", std::move(records)},
             {"summary",
              json{{"closed",
                    json{{"agreements", report.closed.agreements},
                         {"disagreements", report.closed.disagreements}}},
                   {"general",
                    json{{"agreements", report.general.agreements},
                         {"disagreements", report.general.disagreements}}}}}};
      out << j.dump(2) << "\n";
      break;
    }
  }
  return (strict && !report.all_agree()) ? 2 : 0;
}

int run_tableau(const CommonOptions& opts, const std::string& parts_text,
                const std::string& glyph, std::ostream& out) {
  const Composition c(parse_parts(parts_text));
  const std::string rendered = render_tableau(c, glyph);
  switch (opts.fmt()) {
    case Format::table:
      out << rendered << "\n";
      break;
    case Format::csv: {
      out << "row\n";
      std::stringstream ss(rendered);
      std::string line;
      while (std::getline(ss, line)) out << line << "\n";
      break;
    }
    case Format::json_fmt: {
      json rows = json::array();
      std::stringstream ss(rendered);
      std::string line;
      while (std::getline(ss, line)) rows.push_back(line);
      json j{{"parts", c.parts()}, {"rows", std::move(rows)}};
      out << j.dump(2) << "\n";
      break;
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Blackjack dealer composition counts and probabilities"};
  app.require_subcommand(1);

  CommonOptions count_opts;
  Query count_query;
  bool count_breakdown = false;
  bool count_oracle = false;
  auto* sub_count =
      app.add_subcommand("count", "Count the dealer's legal compositions");
  sub_count->add_option("--cards", count_query.cards, "Cards beyond the upcard")
      ->required();
  sub_count->add_option("--upcard", count_query.upcard, "Face-up card value")
      ->required();
  sub_count->add_option("--target", count_query.target, "Desired final total")
      ->required();
  sub_count->add_flag("--breakdown", count_breakdown,
                      "Show every correction term");
  sub_count->add_flag("--oracle", count_oracle,
                      "Compare against the simulation oracle");
  add_common(sub_count, count_opts);

  CommonOptions enum_opts;
  Query enum_query;
  auto* sub_enum =
      app.add_subcommand("enumerate", "List the dealer's legal compositions");
  sub_enum->add_option("--cards", enum_query.cards, "Cards beyond the upcard")
      ->required();
  sub_enum->add_option("--upcard", enum_query.upcard, "Face-up card value")
      ->required();
  sub_enum->add_option("--target", enum_query.target, "Desired final total")
      ->required();
  add_common(sub_enum, enum_opts);

  CommonOptions prob_opts;
  int prob_upcard = 0;
  int prob_target = 0;
  bool prob_exact = false;
  auto* sub_prob = app.add_subcommand(
      "prob", "Probability that the dealer finishes on a total");
  sub_prob->add_option("--upcard", prob_upcard, "Face-up card value")
      ->required();
  sub_prob->add_option("--target", prob_target, "Desired final total")
      ->required();
  sub_prob->add_flag("--exact", prob_exact,
                     "Force the enumeration-weighted computation");
  add_common(sub_prob, prob_opts);

  CommonOptions dist_opts;
  int dist_upcard = 0;
  std::uint64_t dist_mc = 0;
  std::uint64_t dist_seed = 0;
  auto* sub_dist =
      app.add_subcommand("dist", "Exact dealer outcome distribution");
  sub_dist->add_option("--upcard", dist_upcard, "Face-up card value")
      ->required();
  sub_dist->add_option("--mc", dist_mc, "Add a Monte Carlo estimate over this "
                                        "many trials");
  sub_dist->add_option("--seed", dist_seed, "Monte Carlo seed")
      ->capture_default_str();
  add_common(sub_dist, dist_opts);

  CommonOptions verify_opts;
  std::string verify_upcards, verify_targets;
  int verify_cards_max = 0;
  bool verify_strict = false;
  auto* sub_verify = app.add_subcommand(
      "verify", "Audit the counting formulas against the simulation oracle");
  sub_verify->add_option("--upcard-range", verify_upcards,
                         "Upcards to sweep, as LO..HI");
  sub_verify->add_option("--target-range", verify_targets,
                         "Targets to sweep, as LO..HI");
  sub_verify->add_option("--cards-max", verify_cards_max,
                         "Cap on the hand length (0 = all feasible)");
  sub_verify->add_flag("--strict", verify_strict,
                       "Exit 2 if any query disagrees");
  add_common(sub_verify, verify_opts);

  CommonOptions tab_opts;
  std::string tab_parts;
  std::string tab_glyph{kDefaultTableauGlyph};
  auto* sub_tab =
      app.add_subcommand("tableau", "Render a composition as a Young tableau");
  sub_tab->add_option("parts", tab_parts, "Comma-separated parts, e.g. 3,2,4,1")
      ->required();
  sub_tab->add_option("--glyph", tab_glyph, "Box glyph");
  add_common(sub_tab, tab_opts);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("bjcomp");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(sub_count)) {
      return run_count(count_opts, count_query, count_breakdown, count_oracle,
                       out);
    }
    if (app.got_subcommand(sub_enum)) {
      return run_enumerate(enum_opts, enum_query, out);
    }
    if (app.got_subcommand(sub_prob)) {
      return run_prob(prob_opts, prob_upcard, prob_target, prob_exact, out);
    }
    if (app.got_subcommand(sub_dist)) {
      return run_dist(dist_opts, dist_upcard, dist_mc, dist_seed, out);
    }
    if (app.got_subcommand(sub_verify)) {
      return run_verify(verify_opts, verify_upcards, verify_targets,
                        verify_cards_max, verify_strict, out);
    }
    if (app.got_subcommand(sub_tab)) {
      return run_tableau(tab_opts, tab_parts, tab_glyph, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand given\n";
  return 1;
}

}  // namespace bjcomp
