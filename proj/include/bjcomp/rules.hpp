#pragma once

#include <stdexcept>

namespace bjcomp {

/// Raised when a closed-form operation is asked about parameters outside
/// the regime it is valid for; the message names the general-case routine
/// to use instead.
class WrongRegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Game parameters: the total at or above which the dealer must stand, the
/// largest total that is not a bust, and the highest card point value.
struct RuleSet {
  int stand = 17;
  int bust = 21;
  int max_card = 11;

  /// Throws std::invalid_argument unless 2 <= stand <= bust and max_card >= 2.
  void validate() const;
};

/// One counting question: with face-up value `upcard`, in how many ways can
/// the dealer finish on exactly `target` using exactly `cards` further cards?
/// The face-down card counts as one of `cards`.
struct Query {
  int upcard = 0;
  int target = 0;
  int cards = 0;

  /// Throws std::invalid_argument unless 1 <= upcard <= max_card,
  /// stand <= target <= bust, and 1 <= cards <= target - upcard.
  void validate(const RuleSet& rules) const;
};

}  // namespace bjcomp
