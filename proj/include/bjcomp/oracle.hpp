#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "bjcomp/combinatorics.hpp"
#include "bjcomp/rules.hpp"

namespace bjcomp {

/// Raised when a card sequence keeps going after the dealer has already
/// stood or busted.
class OverlongSequenceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Incremental dealer hand. The face-up card contributes its point value
/// as a fixed constant; drawn cards are values 1..10 where 1 is an ace.
/// A drawn ace counts 11 while that keeps the total at or under the bust
/// line, and is demoted to 1 (earliest high ace first) whenever the total
/// would otherwise bust. The hand is done once the total reaches the stand
/// value; totals above the bust line with no high ace left are busts.
class DealerHand {
 public:
  DealerHand(int upcard, const RuleSet& rules);

  /// Draws one card (1..10); returns the value it counts as right now.
  /// Throws OverlongSequenceError if the hand is already done and
  /// std::invalid_argument for an illegal card value.
  int draw(int card);

  int total() const noexcept { return total_; }
  bool busted() const noexcept { return total_ > rules_.bust; }
  bool standing() const noexcept {
    return total_ >= rules_.stand && !busted();
  }
  bool done() const noexcept { return total_ >= rules_.stand; }

  /// Current counted value of each drawn card; earlier entries flip from
  /// 11 to 1 when a demotion happens.
  const std::vector<int>& counted_values() const noexcept { return counted_; }

 private:
  RuleSet rules_;
  std::vector<int> counted_;
  int total_ = 0;
  int soft_aces_ = 0;
};

/// What happened to a simulated dealer hand, card by card.
struct DealerTrajectory {
  enum class Status { stood, busted, incomplete };

  std::vector<int> counted_values;
  std::vector<int> running_totals;
  Status status = Status::incomplete;
  int final_total = 0;

  bool stood() const noexcept { return status == Status::stood; }
  bool busted() const noexcept { return status == Status::busted; }
};

/// Runs the dealer over a full card sequence. The upcard is given as its
/// counted point value (2..max_card; an ace upcard enters as 11). Cards are
/// values in 1..10 with 1 denoting an ace. Throws OverlongSequenceError if
/// the sequence continues past a stood or busted state.
DealerTrajectory simulate(int upcard, std::span<const int> cards,
                          const RuleSet& rules);

/// Ground truth for a counting query: every composition of
/// target - upcard with exactly `cards` parts that a real dealer sequence
/// certifies, in lexicographic order. A candidate is certified when mapping
/// its parts to cards (1 and 11 both mean the ace), the simulated hand
/// consumes exactly all of them, stands on exactly `target`, and counts
/// every card at the candidate's value.
std::vector<Composition> enumerate_legal(const Query& q, const RuleSet& rules);

/// Number of compositions enumerate_legal yields.
std::int64_t oracle_count(const Query& q, const RuleSet& rules);

/// Inclusive parameter ranges for a formula-vs-oracle audit. Upcards are
/// clamped to [2, max_card] and targets to [stand, bust]; max_cards == 0
/// means every feasible hand length.
struct SweepSpec {
  int upcard_first = 2;
  int upcard_last = 11;
  int target_first = 17;
  int target_last = 21;
  int max_cards = 0;
};

struct DiscrepancyRecord {
  int cards = 0;
  int target = 0;
  int stand = 0;
  int upcard = 0;
  int bust = 0;
  int max_card = 0;
  bool closed_regime = false;
  std::int64_t formula_net = 0;
  std::int64_t oracle = 0;

  std::int64_t delta() const noexcept { return formula_net - oracle; }
};

struct DiscrepancyReport {
  struct Tally {
    std::int64_t agreements = 0;
    std::int64_t disagreements = 0;
  };

  std::vector<DiscrepancyRecord> records;
  Tally closed;
  Tally general;

  bool all_agree() const noexcept {
    return closed.disagreements == 0 && general.disagreements == 0;
  }
};

/// Compares count(q).net against oracle_count(q) for every query in the
/// sweep. Disagreements are data, not errors.
DiscrepancyReport verify_sweep(const SweepSpec& spec, const RuleSet& rules);

/// CSV with header m,w,s,d,b,max_card,regime,formula_net,oracle_count,delta.
void write_csv(const DiscrepancyReport& report, std::ostream& os);

}  // namespace bjcomp
