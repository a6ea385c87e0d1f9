#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "satstream/clause.hpp"

namespace satstream {

// Billing rule: one machine word per counter or index, 2 + size words per
// stored clause (header, size, literal codes).
inline std::size_t words_for_clause(const Clause& c) { return 2 + c.size(); }

inline std::size_t words_for_clauses(const std::vector<Clause>& cs) {
  std::size_t w = 0;
  for (const Clause& c : cs) w += words_for_clause(c);
  return w;
}

struct SpaceReport {
  std::size_t words_stored_peak = 0;
  std::size_t samples_achieved = 0;
  long large_clauses_dropped = 0;
  std::vector<std::pair<std::string, std::size_t>> breakdown;

  void note(const std::string& component, std::size_t words) {
    for (auto& [name, w] : breakdown) {
      if (name == component) {
        if (words > w) w = words;
        return;
      }
    }
    breakdown.emplace_back(component, words);
  }

  void track_peak(std::size_t current_words) {
    if (current_words > words_stored_peak) words_stored_peak = current_words;
  }
};

}  // namespace satstream
