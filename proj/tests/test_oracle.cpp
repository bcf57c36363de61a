#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bjcomp/counting.hpp"
#include "bjcomp/oracle.hpp"

using bjcomp::Composition;
using bjcomp::DealerTrajectory;
using bjcomp::Query;
using bjcomp::RuleSet;

namespace {

const RuleSet kDefault{};

std::vector<std::vector<int>> part_lists(const std::vector<Composition>& cs) {
  std::vector<std::vector<int>> out;
  for (const auto& c : cs) out.push_back(c.parts());
  return out;
}

// Independent per-composition checks, recomputed from the raw parts rather
// than trusting the simulator that produced them.
bool parts_in_range(const Composition& c, const RuleSet& r) {
  return std::all_of(c.parts().begin(), c.parts().end(),
                     [&](int p) { return p >= 1 && p <= r.max_card; });
}

bool leading_ace_justified(const Composition& c, const Query& q,
                           const RuleSet& r) {
  if (c[0] != 1) return true;
  // The hole ace may count 1 only if the high count busts immediately, or
  // crosses the bust line somewhere before the hand could ever stand.
  if (q.upcard + 11 > r.bust) return true;
  int high_total = q.upcard + 11;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (high_total >= r.stand) return false;
    high_total += c[i];
    if (high_total > r.bust) return true;
  }
  return false;
}

bool last_card_big_enough(const Composition& c, const Query& q,
                          const RuleSet& r) {
  return c[c.size() - 1] > q.target - r.stand;
}

bool no_early_stand(const Composition& c, const Query& q, const RuleSet& r) {
  int total = q.upcard;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    total += c[i];
    if (total >= r.stand) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("simulate, ace demoted by a later ten") {
  const std::array<int, 4> cards = {1, 3, 10, 3};
  const auto t = bjcomp::simulate(2, cards, kDefault);
  CHECK(t.counted_values == std::vector<int>{1, 3, 10, 3});
  CHECK(t.running_totals == std::vector<int>{13, 16, 16, 19});
  CHECK(t.stood());
  CHECK(t.final_total == 19);
}

TEST_CASE("simulate, plain stand and ace counted high") {
  const std::array<int, 1> seven = {7};
  const auto stand17 = bjcomp::simulate(10, seven, kDefault);
  CHECK(stand17.stood());
  CHECK(stand17.final_total == 17);

  const std::array<int, 1> ace = {1};
  const auto stand21 = bjcomp::simulate(10, ace, kDefault);
  CHECK(stand21.stood());
  CHECK(stand21.final_total == 21);
  CHECK(stand21.counted_values == std::vector<int>{11});
}

TEST_CASE("simulate, incomplete and busted hands") {
  const std::array<int, 1> three = {3};
  const auto open = bjcomp::simulate(2, three, kDefault);
  CHECK(open.status == DealerTrajectory::Status::incomplete);
  CHECK(open.final_total == 5);

  const std::array<int, 2> heavy = {4, 10};
  const auto bust = bjcomp::simulate(10, heavy, kDefault);
  CHECK(bust.busted());
  CHECK(bust.final_total == 24);
}

TEST_CASE("simulate, multiple aces valued independently") {
  const std::array<int, 3> cards = {1, 1, 10};
  const auto t = bjcomp::simulate(2, cards, kDefault);
  // First ace enters high, the second must be low, the ten demotes the
  // first: 13, 14, 14.
  CHECK(t.counted_values == std::vector<int>{1, 1, 10});
  CHECK(t.running_totals == std::vector<int>{13, 14, 14});
  CHECK(t.status == DealerTrajectory::Status::incomplete);
}

TEST_CASE("simulate argument errors") {
  const std::array<int, 2> overlong = {7, 2};
  CHECK_THROWS_AS(bjcomp::simulate(10, overlong, kDefault),
                  bjcomp::OverlongSequenceError);

  const std::array<int, 1> bad_card = {11};
  CHECK_THROWS_AS(bjcomp::simulate(10, bad_card, kDefault),
                  std::invalid_argument);
  const std::array<int, 1> zero_card = {0};
  CHECK_THROWS_AS(bjcomp::simulate(10, zero_card, kDefault),
                  std::invalid_argument);
  CHECK_THROWS_AS(bjcomp::simulate(10, std::span<const int>{}, kDefault),
                  std::invalid_argument);
  const std::array<int, 1> seven = {7};
  CHECK_THROWS_AS(bjcomp::simulate(1, seven, kDefault), std::invalid_argument);
  CHECK_THROWS_AS(bjcomp::simulate(12, seven, kDefault),
                  std::invalid_argument);
}

TEST_CASE("enumerate_legal lists the two-card seventeens for a ten upcard") {
  const auto legal = bjcomp::enumerate_legal(Query{10, 17, 2}, kDefault);
  CHECK(part_lists(legal) == std::vector<std::vector<int>>{
                                 {2, 5}, {3, 4}, {4, 3}, {5, 2}, {6, 1}});
}

TEST_CASE("enumerate_legal drops hands that stand early") {
  const auto legal = bjcomp::enumerate_legal(Query{9, 19, 2}, kDefault);
  CHECK(part_lists(legal) == std::vector<std::vector<int>>{{2, 8},
                                                           {3, 7},
                                                           {4, 6},
                                                           {5, 5},
                                                           {6, 4},
                                                           {7, 3}});
  // (8,2) and (9,1) would stand on 17 and 18.
  CHECK(bjcomp::oracle_count(Query{9, 19, 3}, kDefault) == 15);
}

TEST_CASE("enumerate_legal rejects interior aces that must count high") {
  const auto legal = bjcomp::enumerate_legal(Query{2, 17, 3}, kDefault);
  const auto lists = part_lists(legal);
  const std::set<std::vector<int>> yielded(lists.begin(), lists.end());
  for (int first = 2; first <= 8; ++first) {
    const std::vector<int> forced = {first, 1, 14 - first};
    CHECK(yielded.count(forced) == 0);
  }
  // An ace that fits as 11 without forcing anything stays legal.
  CHECK(yielded.count({3, 11, 1}) == 1);
}

TEST_CASE("a demoted interior ace is legal in the deep regime") {
  const auto legal = bjcomp::enumerate_legal(Query{2, 19, 4}, kDefault);
  const auto lists = part_lists(legal);
  CHECK(std::count(lists.begin(), lists.end(),
                   std::vector<int>{3, 1, 10, 3}) == 1);
  CHECK(std::count(lists.begin(), lists.end(),
                   std::vector<int>{1, 3, 10, 3}) == 1);
}

TEST_CASE("ace-upcard rows diverge from the closed form") {
  const std::vector<std::int64_t> truth = {1, 5, 10, 10, 5, 1};
  for (int m = 1; m <= 6; ++m) {
    CHECK(bjcomp::oracle_count(Query{11, 17, m}, kDefault) == truth[m - 1]);
  }
  // A hole ace is forced low on a soft start, so the leading-ace removal
  // overshoots from two cards on.
  CHECK(bjcomp::closed_form_count(Query{11, 17, 2}, kDefault) == 4);
  const auto legal = bjcomp::enumerate_legal(Query{11, 17, 2}, kDefault);
  CHECK(part_lists(legal)[0] == std::vector<int>{1, 5});
}

TEST_CASE("oracle_count examples and validation") {
  CHECK(bjcomp::oracle_count(Query{10, 17, 2}, kDefault) == 5);
  CHECK(bjcomp::oracle_count(Query{2, 18, 3}, kDefault) == 68);
  CHECK_THROWS_AS((bjcomp::oracle_count(Query{16, 17, 1}, kDefault)),
                  std::invalid_argument);
}

TEST_CASE("enumeration never exceeds the unrestricted count") {
  for (int d = 2; d <= 11; ++d) {
    for (int w = 17; w <= 21; ++w) {
      for (int m = 1; m <= w - d; ++m) {
        CHECK(bjcomp::oracle_count(Query{d, w, m}, kDefault) <=
              bjcomp::composition_count(m, w - d));
      }
    }
  }
}

TEST_CASE("every yielded composition satisfies the four restrictions") {
  for (int d = 2; d <= 11; ++d) {
    for (int w = 17; w <= 21; ++w) {
      for (int m = 1; m <= w - d; ++m) {
        const Query q{d, w, m};
        for (const auto& c : bjcomp::enumerate_legal(q, kDefault)) {
          CHECK(parts_in_range(c, kDefault));
          CHECK(leading_ace_justified(c, q, kDefault));
          CHECK(last_card_big_enough(c, q, kDefault));
          CHECK(no_early_stand(c, q, kDefault));
        }
      }
    }
  }
}

TEST_CASE("i-ace prefixes followed by an ace are never yielded in the "
          "closed regime") {
  for (int d = 2; d <= 10; ++d) {
    for (int i = 1; i <= 3; ++i) {
      const auto tau = bjcomp::i_ace_set(i, d, kDefault);
      if (tau.empty()) continue;
      for (int w = 17; w <= 21; ++w) {
        if (w - d > 11) continue;
        for (int m = i + 2; m <= w - d; ++m) {
          for (const auto& c :
               bjcomp::enumerate_legal(Query{d, w, m}, kDefault)) {
            for (const auto& prefix : tau) {
              const auto& p = prefix.parts();
              const auto& full = c.parts();
              const bool starts_with_tau =
                  std::equal(p.begin(), p.end(), full.begin()) &&
                  full[p.size()] == 1;
              CHECK_FALSE(starts_with_tau);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("closed form matches the oracle for upcards nine and ten") {
  for (int d = 9; d <= 10; ++d) {
    for (int w = 17; w <= 21; ++w) {
      if (w - d > 11) continue;
      for (int m = 1; m <= w - d; ++m) {
        CHECK(bjcomp::closed_form_count(Query{d, w, m}, kDefault) ==
              bjcomp::oracle_count(Query{d, w, m}, kDefault));
      }
    }
  }
}

TEST_CASE("the closed-regime divergence is exactly the known cell set") {
  // Forced-high interior aces break upcards 6..8 from three cards on;
  // legal hole aces break the ace upcard from two cards on. Everything
  // else in the closed regime agrees.
  std::set<std::vector<int>> expected;
  for (int m = 3; m <= 10; ++m) expected.insert({6, 17, m});
  for (int w = 17; w <= 18; ++w)
    for (int m = 3; m <= 9; ++m) expected.insert({7, w, m});
  for (int w = 17; w <= 19; ++w)
    for (int m = 3; m <= 8; ++m) expected.insert({8, w, m});
  for (int w = 17; w <= 21; ++w)
    for (int m = 2; m <= 6; ++m) expected.insert({11, w, m});

  std::set<std::vector<int>> actual;
  for (int d = 2; d <= 11; ++d) {
    for (int w = 17; w <= 21; ++w) {
      if (w - d < 1 || w - d > 11) continue;
      for (int m = 1; m <= w - d; ++m) {
        const Query q{d, w, m};
        if (bjcomp::count(q, kDefault).net !=
            bjcomp::oracle_count(q, kDefault)) {
          actual.insert({d, w, m});
        }
      }
    }
  }
  CHECK(actual == expected);
}

TEST_CASE("verify_sweep tallies and the deuce-upcard record") {
  bjcomp::SweepSpec spec;
  spec.upcard_first = 2;
  spec.upcard_last = 2;
  spec.target_first = 18;
  spec.target_last = 18;
  spec.max_cards = 3;
  const auto report = bjcomp::verify_sweep(spec, kDefault);
  REQUIRE(report.records.size() == 3);
  const auto& rec = report.records[2];
  CHECK(rec.cards == 3);
  CHECK(rec.target == 18);
  CHECK(rec.upcard == 2);
  CHECK_FALSE(rec.closed_regime);
  CHECK(rec.formula_net == 58);
  CHECK(rec.oracle == 68);
  CHECK(rec.delta() == -10);
  CHECK(report.general.disagreements >= 1);
}

TEST_CASE("verify_sweep over an empty range is empty") {
  bjcomp::SweepSpec spec;
  spec.upcard_first = 5;
  spec.upcard_last = 4;
  const auto report = bjcomp::verify_sweep(spec, kDefault);
  CHECK(report.records.empty());
  CHECK(report.all_agree());
}

TEST_CASE("discrepancy csv header is exact") {
  bjcomp::SweepSpec spec;
  spec.upcard_first = 10;
  spec.upcard_last = 10;
  spec.target_first = 17;
  spec.target_last = 17;
  spec.max_cards = 1;
  std::ostringstream os;
  bjcomp::write_csv(bjcomp::verify_sweep(spec, kDefault), os);
  CHECK(os.str() ==
        "m,w,s,d,b,max_card,regime,formula_net,oracle_count,delta\n"
        "1,17,17,10,21,11,closed,1,1,0\n");
}

TEST_CASE("simulation is a pure function of its arguments") {
  const std::array<int, 3> cards = {5, 1, 4};
  const auto a = bjcomp::simulate(6, cards, kDefault);
  const auto b = bjcomp::simulate(6, cards, kDefault);
  CHECK(a.counted_values == b.counted_values);
  CHECK(a.running_totals == b.running_totals);
  CHECK(a.status == b.status);
}
