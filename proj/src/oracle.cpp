#include "bjcomp/oracle.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "bjcomp/counting.hpp"

namespace bjcomp {

DealerHand::DealerHand(int upcard, const RuleSet& rules) : rules_(rules) {
  rules_.validate();
  if (upcard < 2 || upcard > rules_.max_card) {
    throw std::invalid_argument("upcard must be a card value in [2, " +
                                std::to_string(rules_.max_card) + "], got " +
                                std::to_string(upcard));
  }
  total_ = upcard;
}

int DealerHand::draw(int card) {
  if (done()) {
    throw OverlongSequenceError(
        "card drawn after the dealer already " +
        std::string(busted() ? "busted" : "stood") + " on " +
        std::to_string(total_));
  }
  if (card < 1 || card > 10) {
    throw std::invalid_argument("card values are 1..10 (1 = ace), got " +
                                std::to_string(card));
  }
  int counted = card;
  if (card == 1) {
    if (total_ + 11 <= rules_.bust) {
      counted = 11;
      ++soft_aces_;
    }
  }
  counted_.push_back(counted);
  total_ += counted;
  while (total_ > rules_.bust && soft_aces_ > 0) {
    auto high = std::find(counted_.begin(), counted_.end(), 11);
    *high = 1;
    total_ -= 10;
    --soft_aces_;
  }
  return counted_.back();
}

DealerTrajectory simulate(int upcard, std::span<const int> cards,
                          const RuleSet& rules) {
  if (cards.empty()) {
    throw std::invalid_argument("card sequence must be non-empty");
  }
  DealerHand hand(upcard, rules);
  DealerTrajectory t;
  for (int card : cards) {
    hand.draw(card);
    t.running_totals.push_back(hand.total());
  }
  t.counted_values = hand.counted_values();
  t.final_total = hand.total();
  t.status = hand.busted()     ? DealerTrajectory::Status::busted
             : hand.standing() ? DealerTrajectory::Status::stood
                               : DealerTrajectory::Status::incomplete;
  return t;
}

std::vector<Composition> enumerate_legal(const Query& q, const RuleSet& rules) {
  q.validate(rules);
  std::vector<Composition> out;
  const int max_part = std::min(rules.max_card, 11);
  CompositionEnumerator candidates(q.target - q.upcard, q.cards, 1, max_part);
  while (auto c = candidates.next()) {
    DealerHand hand(q.upcard, rules);
    bool alive = true;
    for (int part : c->parts()) {
      if (hand.done()) {
        alive = false;
        break;
      }
      hand.draw(part == 11 ? 1 : part);
    }
    if (alive && hand.standing() && hand.total() == q.target &&
        hand.counted_values() == c->parts()) {
      out.push_back(std::move(*c));
    }
  }
  return out;
}

std::int64_t oracle_count(const Query& q, const RuleSet& rules) {
  return static_cast<std::int64_t>(enumerate_legal(q, rules).size());
}

DiscrepancyReport verify_sweep(const SweepSpec& spec, const RuleSet& rules) {
  rules.validate();
  DiscrepancyReport report;
  const int d_lo = std::max(spec.upcard_first, 2);
  const int d_hi = std::min(spec.upcard_last, rules.max_card);
  const int w_lo = std::max(spec.target_first, rules.stand);
  const int w_hi = std::min(spec.target_last, rules.bust);
  for (int d = d_lo; d <= d_hi; ++d) {
    for (int w = w_lo; w <= w_hi; ++w) {
      if (w - d < 1) continue;
      int m_hi = w - d;
      if (spec.max_cards > 0) m_hi = std::min(m_hi, spec.max_cards);
      for (int m = 1; m <= m_hi; ++m) {
        const Query q{d, w, m};
        DiscrepancyRecord rec;
        rec.cards = m;
        rec.target = w;
        rec.stand = rules.stand;
        rec.upcard = d;
        rec.bust = rules.bust;
        rec.max_card = rules.max_card;
        rec.closed_regime = (w - d <= 11);
        rec.formula_net = count(q, rules).net;
        rec.oracle = oracle_count(q, rules);
        auto& tally = rec.closed_regime ? report.closed : report.general;
        if (rec.delta() == 0) {
          ++tally.agreements;
        } else {
          ++tally.disagreements;
        }
        report.records.push_back(rec);
      }
    }
  }
  return report;
}

void write_csv(const DiscrepancyReport& report, std::ostream& os) {
  os << "m,w,s,d,b,max_card,regime,formula_net,oracle_count,delta\n";
  for (const auto& r : report.records) {
    os << r.cards << ',' << r.target << ',' << r.stand << ',' << r.upcard
       << ',' << r.bust << ',' << r.max_card << ','
       << (r.closed_regime ? "closed" : "general") << ',' << r.formula_net
       << ',' << r.oracle << ',' << r.delta() << '\n';
  }
}

}  // namespace bjcomp
