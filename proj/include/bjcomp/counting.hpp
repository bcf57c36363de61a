#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "bjcomp/combinatorics.hpp"
#include "bjcomp/rules.hpp"

namespace bjcomp {

/// A legal-composition count with every correction term exposed.
///
/// `unrestricted` is the raw composition count c(cards, target - upcard);
/// r1..r4 are the removals demanded by the four table rules (oversized
/// parts, leading ace, short last card, forced-high interior ace); r_star
/// adds back compositions doubly removed by r2 and r3; r2_star adds back
/// face-down aces that legitimately count as 1. `net` is the count the
/// governing formula actually produces; it is recorded verbatim, never
/// clamped, so a defective parameter regime shows up as-is.
struct CountBreakdown {
  std::int64_t unrestricted = 0;
  std::int64_t r1 = 0;
  std::int64_t r2 = 0;
  std::int64_t r3 = 0;
  std::int64_t r4 = 0;
  std::int64_t r_star = 0;
  std::int64_t r2_star = 0;
  std::int64_t net = 0;
};

nlohmann::json to_json(const CountBreakdown& b);

/// Closed-form count C(stand - upcard - 2, cards - 1), valid when
/// target - upcard <= 11; the value does not depend on target. Throws
/// WrongRegimeError outside that regime.
std::int64_t closed_form_count(const Query& q, const RuleSet& rules);

/// All compositions of the given length whose parts are each >= 2 and whose
/// sum is at most 10 - upcard: the prefixes after which a drawn ace would be
/// forced to count as 11. Ordered by sum, then lexicographically.
/// Requires length >= 1 and 1 <= upcard <= 10.
std::vector<Composition> i_ace_set(int length, int upcard,
                                   const RuleSet& rules);

/// The general-case count, computed term by term exactly as stated: the
/// closed-form base minus r1 and r4 plus r2_star. The r2/r3/r_star fields
/// are populated from the closed-form derivation for diagnostic display.
CountBreakdown general_count(const Query& q, const RuleSet& rules);

/// Regime dispatcher: the closed form when target - upcard <= 11 (r1, r4
/// and r2_star reported as zero), the general count otherwise.
CountBreakdown count(const Query& q, const RuleSet& rules);

}  // namespace bjcomp
