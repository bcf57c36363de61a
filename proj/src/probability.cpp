#include "bjcomp/probability.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <random>
#include <string>
#include <utility>

#include "bjcomp/oracle.hpp"

namespace bjcomp {

namespace {

constexpr double kMassTolerance = 1e-12;

std::string double_to_string(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 53-bit uniform in [0, 1).
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_upcard(int upcard, const RuleSet& rules) {
  if (upcard < 2 || upcard > rules.max_card) {
    throw std::invalid_argument("upcard must be a card value in [2, " +
                                std::to_string(rules.max_card) + "], got " +
                                std::to_string(upcard));
  }
}

void check_target(int target, const RuleSet& rules) {
  if (target < rules.stand || target > rules.bust) {
    throw std::invalid_argument(
        "target must be in [" + std::to_string(rules.stand) + ", " +
        std::to_string(rules.bust) + "], got " + std::to_string(target));
  }
}

}  // namespace

CardDistribution::CardDistribution(const std::array<double, 10>& mass_by_value,
                                   Unchecked)
    : mass_(mass_by_value) {}

CardDistribution::CardDistribution(const std::array<double, 10>& mass_by_value)
    : mass_(mass_by_value) {
  double sum = 0.0;
  for (double m : mass_) {
    if (m < 0.0) {
      throw std::invalid_argument("card masses must be non-negative");
    }
    sum += m;
  }
  if (std::abs(sum - 1.0) > kMassTolerance) {
    throw std::invalid_argument("card masses must sum to 1, got " +
                                double_to_string(sum));
  }
}

CardDistribution CardDistribution::infinite_deck() {
  std::array<double, 10> mass{};
  for (int v = 1; v <= 9; ++v) mass[v - 1] = 4.0 / 52.0;
  mass[9] = 16.0 / 52.0;
  return CardDistribution(mass, Unchecked{});
}

CardDistribution CardDistribution::uniform() {
  std::array<double, 10> mass{};
  mass.fill(1.0 / 13.0);
  return CardDistribution(mass, Unchecked{});
}

double CardDistribution::card_mass(int card) const {
  if (card < 1 || card > 10) {
    throw std::invalid_argument("card values are 1..10, got " +
                                std::to_string(card));
  }
  return mass_[static_cast<std::size_t>(card - 1)];
}

double CardDistribution::part_mass(int part) const {
  if (part == 11) return mass_[0];
  return card_mass(part);
}

double CardDistribution::total_mass() const {
  double sum = 0.0;
  for (double m : mass_) sum += m;
  return sum;
}

double closed_form_probability(int target, int upcard, const RuleSet& rules) {
  rules.validate();
  check_target(target, rules);
  if (upcard < 1 || upcard > rules.stand - 2) {
    throw std::invalid_argument("closed-form upcard must be in [1, stand - 2] "
                                "= [1, " +
                                std::to_string(rules.stand - 2) + "], got " +
                                std::to_string(upcard));
  }
  if (target - upcard > 9) {
    throw WrongRegimeError(
        "closed_form_probability requires target - upcard <= 9 (got " +
        std::to_string(target - upcard) + "); use exact_probability");
  }
  const int exponent = rules.stand - upcard - 2;
  return (1.0 / 13.0) * std::pow(14.0 / 13.0, exponent);
}

double exact_probability(int target, int upcard, const RuleSet& rules,
                         const CardDistribution& cards) {
  rules.validate();
  check_target(target, rules);
  check_upcard(upcard, rules);
  if (target <= upcard) {
    throw std::invalid_argument("target must exceed the upcard");
  }
  double prob = 0.0;
  for (int m = 1; m <= target - upcard; ++m) {
    for (const Composition& c : enumerate_legal(Query{upcard, target, m}, rules)) {
      double mass = 1.0;
      for (int part : c.parts()) mass *= cards.part_mass(part);
      prob += mass;
    }
  }
  return prob;
}

double OutcomeDistribution::total_mass() const {
  double sum = bust_mass;
  for (const auto& [total, mass] : final_totals) sum += mass;
  return sum;
}

nlohmann::json to_json(const OutcomeDistribution& dist) {
  nlohmann::json totals = nlohmann::json::object();
  for (const auto& [total, mass] : dist.final_totals) {
    totals[std::to_string(total)] = mass;
  }
  return nlohmann::json{{"totals", std::move(totals)},
                        {"bust", dist.bust_mass}};
}

void write_csv(const OutcomeDistribution& dist, std::ostream& os) {
  os << "total,probability,stderr\n";
  for (const auto& [total, mass] : dist.final_totals) {
    os << total << ',' << double_to_string(mass) << ",0\n";
  }
  os << "bust," << double_to_string(dist.bust_mass) << ",0\n";
}

OutcomeDistribution outcome_distribution(int upcard, const RuleSet& rules,
                                         const CardDistribution& cards) {
  rules.validate();
  check_upcard(upcard, rules);
  OutcomeDistribution out;
  for (int t = rules.stand; t <= rules.bust; ++t) out.final_totals[t] = 0.0;

  // States keyed by (hard total, high aces); every draw strictly increases
  // the hard total, so the smallest key is never fed again.
  std::map<std::pair<int, int>, double> pending;
  if (upcard >= rules.stand) {
    if (upcard > rules.bust) {
      out.bust_mass = 1.0;
    } else {
      out.final_totals[upcard] = 1.0;
    }
    return out;
  }
  pending[{upcard, 0}] = 1.0;
  while (!pending.empty()) {
    const auto [state, mass] = *pending.begin();
    pending.erase(pending.begin());
    const auto [hard, soft] = state;
    const int total = hard + 10 * soft;
    for (int card = 1; card <= 10; ++card) {
      const double p = cards.card_mass(card);
      if (p == 0.0) continue;
      int h = hard;
      int s = soft;
      if (card == 1) {
        h += 1;
        if (total + 11 <= rules.bust) s += 1;
      } else {
        h += card;
      }
      int t = h + 10 * s;
      while (t > rules.bust && s > 0) {
        --s;
        t -= 10;
      }
      const double flow = mass * p;
      if (t > rules.bust) {
        out.bust_mass += flow;
      } else if (t >= rules.stand) {
        out.final_totals[t] += flow;
      } else {
        pending[{h, s}] += flow;
      }
    }
  }
  return out;
}

MonteCarloDistribution monte_carlo(int upcard, const RuleSet& rules,
                                   const CardDistribution& cards,
                                   std::uint64_t trials, std::uint64_t seed) {
  rules.validate();
  check_upcard(upcard, rules);
  if (trials < 1) {
    throw std::invalid_argument("monte_carlo needs at least one trial");
  }
  if (std::abs(cards.total_mass() - 1.0) > kMassTolerance) {
    throw std::invalid_argument(
        "monte_carlo requires a proper card distribution (masses sum to 1)");
  }

  std::array<double, 10> cumulative{};
  double acc = 0.0;
  for (int v = 1; v <= 10; ++v) {
    acc += cards.card_mass(v);
    cumulative[v - 1] = acc;
  }
  cumulative[9] = 1.0;

  std::map<int, std::uint64_t> hits;
  for (int t = rules.stand; t <= rules.bust; ++t) hits[t] = 0;
  std::uint64_t bust_hits = 0;

  constexpr std::uint64_t kChunk = 1 << 16;
  std::uint64_t remaining = trials;
  for (std::uint64_t chunk = 0; remaining > 0; ++chunk) {
    std::mt19937_64 rng(splitmix64(seed ^ (chunk * 0x9e3779b97f4a7c15ULL)));
    const std::uint64_t n = std::min(remaining, kChunk);
    for (std::uint64_t i = 0; i < n; ++i) {
      if (upcard >= rules.stand) {
        ++hits[upcard];
        continue;
      }
      DealerHand hand(upcard, rules);
      while (!hand.done()) {
        const double u = next_uniform(rng);
        int card = 10;
        for (int v = 1; v <= 9; ++v) {
          if (u < cumulative[v - 1]) {
            card = v;
            break;
          }
        }
        hand.draw(card);
      }
      if (hand.busted()) {
        ++bust_hits;
      } else {
        ++hits[hand.total()];
      }
    }
    remaining -= n;
  }

  MonteCarloDistribution mc;
  mc.trials = trials;
  mc.seed = seed;
  const double n = static_cast<double>(trials);
  auto stderr_of = [n](double p) { return std::sqrt(p * (1.0 - p) / n); };
  for (const auto& [total, count] : hits) {
    const double p = static_cast<double>(count) / n;
    mc.estimate.final_totals[total] = p;
    mc.stderr_totals[total] = stderr_of(p);
  }
  mc.estimate.bust_mass = static_cast<double>(bust_hits) / n;
  mc.stderr_bust = stderr_of(mc.estimate.bust_mass);
  return mc;
}

nlohmann::json to_json(const MonteCarloDistribution& mc) {
  nlohmann::json stderr_totals = nlohmann::json::object();
  for (const auto& [total, err] : mc.stderr_totals) {
    stderr_totals[std::to_string(total)] = err;
  }
  nlohmann::json j = to_json(mc.estimate);
  j["stderr_totals"] = std::move(stderr_totals);
  j["stderr_bust"] = mc.stderr_bust;
  j["trials"] = mc.trials;
  j["seed"] = mc.seed;
  return j;
}

double beat_probability(int dealer_total, int target_low, int target_high,
                        const RuleSet& rules) {
  rules.validate();
  if (target_low < rules.stand || target_high > rules.bust ||
      target_low > target_high) {
    throw std::invalid_argument("targets must satisfy stand <= low <= high <= bust");
  }
  double prob = 0.0;
  for (int target = target_low; target <= target_high; ++target) {
    if (target - dealer_total <= 9) {
      prob += closed_form_probability(target, dealer_total, rules);
    } else {
      prob += exact_probability(target, dealer_total, rules,
                                CardDistribution::infinite_deck());
    }
  }
  return prob;
}

}  // namespace bjcomp
