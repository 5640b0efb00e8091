#pragma once

// Shared test fixtures: tiny paragraph builders and the random-grid
// generators used by oracle-equivalence checks.

#include <string>
#include <vector>

#include "statetrack/grid.hpp"
#include "statetrack/rng.hpp"

namespace statetrack::testing {

inline Paragraph toy_paragraph(int steps, const std::string& id = "p") {
  std::vector<Sentence> sentences;
  for (int i = 1; i <= steps; ++i) {
    sentences.push_back(Sentence::make(i, "Step " + std::to_string(i) + " happens."));
  }
  return Paragraph::make(id, "How does the toy process work?", std::move(sentences));
}

inline std::vector<Participant> toy_participants(int n) {
  std::vector<Participant> out;
  for (int j = 0; j < n; ++j) out.push_back(Participant{"entity" + std::to_string(j), j});
  return out;
}

/// Uniform draw from {-, ?, A, B} (always filled).
inline StateValue random_state(SplitMix64& rng) {
  switch (rng.below(4)) {
    case 0: return StateValue::not_exists();
    case 1: return StateValue::unknown();
    case 2: return StateValue::known("A");
    default: return StateValue::known("B");
  }
}

/// Uniform draw from {-, ?, A, B, Unfilled}.
inline StateValue random_partial_state(SplitMix64& rng) {
  if (rng.below(5) == 4) return StateValue::unfilled();
  return random_state(rng);
}

/// Complete grid with uniform random cells; every such grid is valid.
inline Grid random_grid(SplitMix64& rng, int max_steps = 4, int max_cols = 3) {
  int m = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(max_steps)));
  int n = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(max_cols)));
  Grid g = Grid::unfilled(toy_paragraph(m), toy_participants(n));
  for (auto& cell : g.cells) cell = random_state(rng);
  return g;
}

inline Grid random_partial_grid(SplitMix64& rng, int max_steps = 4, int max_cols = 3) {
  int m = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(max_steps)));
  int n = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(max_cols)));
  Grid g = Grid::unfilled(toy_paragraph(m), toy_participants(n));
  for (auto& cell : g.cells) cell = random_partial_state(rng);
  return g;
}

}  // namespace statetrack::testing
