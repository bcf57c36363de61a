#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>

#include <json.hpp>

#include "bjcomp/rules.hpp"

namespace bjcomp {

/// Per-draw weight of each card value 1..10 (1 = ace). The public
/// constructor and infinite_deck() are proper distributions (masses sum to
/// 1 within 1e-12); uniform() is the diagnostic weighting that gives every
/// value 1/13 and deliberately sums to 10/13.
class CardDistribution {
 public:
  /// mass_by_value[v - 1] is the weight of card value v.
  explicit CardDistribution(const std::array<double, 10>& mass_by_value);

  /// 16/52 for tens, 4/52 for every other value.
  static CardDistribution infinite_deck();

  /// Every value weighted 1/13. Sub-stochastic; for closed-form comparisons.
  static CardDistribution uniform();

  double card_mass(int card) const;
  /// Weight of a composition part: 1 and 11 both draw the ace mass.
  double part_mass(int part) const;
  double total_mass() const;

 private:
  struct Unchecked {};
  CardDistribution(const std::array<double, 10>& mass_by_value, Unchecked);

  std::array<double, 10> mass_{};
};

/// (1/13) * (14/13)^(stand - upcard - 2), valid when target - upcard <= 9.
/// Requires stand <= target <= bust and 1 <= upcard <= stand - 2 (so the
/// exponent is non-negative); throws WrongRegimeError past the regime.
double closed_form_probability(int target, int upcard, const RuleSet& rules);

/// Probability that the dealer finishes on exactly `target`: the sum over
/// every legal composition (all hand lengths) of the product of its parts'
/// masses.
double exact_probability(int target, int upcard, const RuleSet& rules,
                         const CardDistribution& cards);

/// Probability mass over final dealer totals in [stand, bust] plus the
/// mass of busting.
struct OutcomeDistribution {
  std::map<int, double> final_totals;
  double bust_mass = 0.0;

  double total_mass() const;
};

nlohmann::json to_json(const OutcomeDistribution& dist);

/// CSV with header total,probability,stderr; the bust row uses total
/// "bust". Exact distributions carry stderr 0.
void write_csv(const OutcomeDistribution& dist, std::ostream& os);

/// Exact dealer outcome distribution by forward recursion over
/// (hard total, high-ace count) states, absorbing at stand or bust.
/// Requires 2 <= upcard <= max_card.
OutcomeDistribution outcome_distribution(int upcard, const RuleSet& rules,
                                         const CardDistribution& cards);

/// Seeded empirical estimate of outcome_distribution with per-cell binomial
/// standard errors. Identical inputs reproduce identical output bit for
/// bit: trials run in fixed-size chunks, chunk k drawing from
/// mt19937_64(splitmix64(seed xor k * 0x9e3779b97f4a7c15)) with 53-bit
/// uniforms mapped through the cumulative card masses.
struct MonteCarloDistribution {
  OutcomeDistribution estimate;
  std::map<int, double> stderr_totals;
  double stderr_bust = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

MonteCarloDistribution monte_carlo(int upcard, const RuleSet& rules,
                                   const CardDistribution& cards,
                                   std::uint64_t trials, std::uint64_t seed);

nlohmann::json to_json(const MonteCarloDistribution& mc);

/// Probability that the dealer, sitting on `dealer_total` points, finishes
/// anywhere in [target_low, target_high]: the closed form summed per
/// target, treating the running total as the face-up value. High aces in
/// the dealer's current hand are ignored. Targets more than 9 above the
/// running total fall back to exact_probability under the infinite deck.
double beat_probability(int dealer_total, int target_low, int target_high,
                        const RuleSet& rules);

}  // namespace bjcomp
