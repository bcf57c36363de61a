#include "bjcomp/counting.hpp"

#include <stdexcept>
#include <string>

namespace bjcomp {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("count term sum overflows int64");
  }
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("count term product overflows int64");
  }
  return out;
}

// Removals for oversized parts: any part above max_card, in any of the
// `cards` positions.
std::int64_t oversized_part_removals(const Query& q, const RuleSet& r) {
  const int n = q.target - q.upcard;
  std::int64_t sum = 0;
  for (int i = r.max_card + 1; i <= n; ++i) {
    sum = checked_add(sum, binomial(n - i - 1, q.cards - 2));
  }
  return checked_mul(q.cards, sum);
}

// Removals for interior aces that would be forced to count high: summed
// over the prefix sum j and the prefix length index i.
std::int64_t forced_ace_removals(const Query& q, const RuleSet& r) {
  const int s = r.stand, d = q.upcard, m = q.cards;
  std::int64_t sum = 0;
  for (int j = 2; j <= 10 - d; ++j) {
    for (int i = 0; i <= m + 3; ++i) {
      sum = checked_add(
          sum, checked_mul(binomial(j - i - 2, i), binomial(s - d - j, m - 3 - i)));
    }
  }
  return sum;
}

// Add-backs for a face-down ace that legitimately counts as 1: the high
// count must cross the bust line before the hand could stand.
std::int64_t face_down_ace_addbacks(const Query& q, const RuleSet& r) {
  const int s = r.stand, b = r.bust, d = q.upcard, w = q.target, m = q.cards;
  std::int64_t sum = 0;
  for (int k = b - d - 10; k <= s - d - 2; ++k) {
    for (int i = 1; i <= m - 2; ++i) {
      sum = checked_add(sum, checked_mul(binomial(k - b + s - 2, i - 1),
                                         binomial(w - d - k - 2, m - i - 2)));
    }
  }
  return sum;
}

std::int64_t short_last_card_removals(const Query& q, const RuleSet& r) {
  const int n = q.target - q.upcard;
  std::int64_t sum = 0;
  for (int i = 1; i <= q.target - r.stand; ++i) {
    sum = checked_add(sum, binomial(n - i - 1, q.cards - 2));
  }
  return sum;
}

std::int64_t doubly_removed_addbacks(const Query& q, const RuleSet& r) {
  const int n = q.target - q.upcard;
  std::int64_t sum = 0;
  for (int i = 1; i <= q.target - r.stand; ++i) {
    sum = checked_add(sum, binomial(n - i - 2, q.cards - 3));
  }
  return sum;
}

// Diagnostic terms shared by both regimes.
void fill_diagnostics(const Query& q, const RuleSet& r, CountBreakdown& b) {
  const int n = q.target - q.upcard;
  b.unrestricted = binomial(n - 1, q.cards - 1);
  b.r2 = binomial(n - 2, q.cards - 2);
  b.r3 = short_last_card_removals(q, r);
  b.r_star = doubly_removed_addbacks(q, r);
}

}  // namespace

nlohmann::json to_json(const CountBreakdown& b) {
  return nlohmann::json{{"unrestricted", b.unrestricted},
                        {"r1", b.r1},
                        {"r2", b.r2},
                        {"r3", b.r3},
                        {"r4", b.r4},
                        {"r_star", b.r_star},
                        {"r2_star", b.r2_star},
                        {"net", b.net}};
}

std::int64_t closed_form_count(const Query& q, const RuleSet& rules) {
  q.validate(rules);
  if (q.target - q.upcard > 11) {
    throw WrongRegimeError(
        "closed_form_count requires target - upcard <= 11 (got " +
        std::to_string(q.target - q.upcard) + "); use general_count");
  }
  return binomial(rules.stand - q.upcard - 2, q.cards - 1);
}

std::vector<Composition> i_ace_set(int length, int upcard,
                                   const RuleSet& rules) {
  rules.validate();
  if (length < 1) {
    throw std::invalid_argument("i_ace_set length must be at least 1");
  }
  if (upcard < 1 || upcard > 10) {
    throw std::invalid_argument("i_ace_set upcard must be in [1, 10], got " +
                                std::to_string(upcard));
  }
  std::vector<Composition> out;
  for (int sum = 2 * length; sum <= 10 - upcard; ++sum) {
    CompositionEnumerator en(sum, length, 2, sum);
    while (auto c = en.next()) out.push_back(std::move(*c));
  }
  return out;
}

CountBreakdown general_count(const Query& q, const RuleSet& rules) {
  q.validate(rules);
  CountBreakdown b;
  fill_diagnostics(q, rules, b);
  const std::int64_t base =
      binomial(rules.stand - q.upcard - 2, q.cards - 1);
  b.r1 = oversized_part_removals(q, rules);
  b.r4 = forced_ace_removals(q, rules);
  b.r2_star = face_down_ace_addbacks(q, rules);
  b.net = base - b.r1 - b.r4 + b.r2_star;
  return b;
}

CountBreakdown count(const Query& q, const RuleSet& rules) {
  q.validate(rules);
  if (q.target - q.upcard > 11) return general_count(q, rules);
  CountBreakdown b;
  fill_diagnostics(q, rules, b);
  b.net = binomial(rules.stand - q.upcard - 2, q.cards - 1);
  return b;
}

}  // namespace bjcomp
