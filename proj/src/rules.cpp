#include "bjcomp/rules.hpp"

#include <string>

namespace bjcomp {

void RuleSet::validate() const {
  if (stand < 2 || stand > bust) {
    throw std::invalid_argument("rules require 2 <= stand <= bust, got stand=" +
                                std::to_string(stand) +
                                " bust=" + std::to_string(bust));
  }
  if (max_card < 2) {
    throw std::invalid_argument("rules require max_card >= 2, got " +
                                std::to_string(max_card));
  }
}

void Query::validate(const RuleSet& rules) const {
  rules.validate();
  if (upcard < 1 || upcard > rules.max_card) {
    throw std::invalid_argument("upcard must be in [1, " +
                                std::to_string(rules.max_card) + "], got " +
                                std::to_string(upcard));
  }
  if (target < rules.stand || target > rules.bust) {
    throw std::invalid_argument(
        "target must be in [" + std::to_string(rules.stand) + ", " +
        std::to_string(rules.bust) + "], got " + std::to_string(target));
  }
  if (cards < 1 || cards > target - upcard) {
    throw std::invalid_argument("cards must be in [1, target - upcard] = [1, " +
                                std::to_string(target - upcard) + "], got " +
                                std::to_string(cards));
  }
}

}  // namespace bjcomp
