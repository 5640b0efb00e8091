#pragma once

#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "statetrack/grid.hpp"

namespace statetrack {

// What one sentence says about one participant. `before` applies to the row
// above the step, `after` to the step's own row; nullopt asserts nothing.
// Create/Destroy pin their non-existing side; a None carrying a location
// asserts it on both sides.
struct LocalPrediction {
  int step = 0;
  int column = -1;  // filled in by whoever addresses the prediction
  ChangeKind kind = ChangeKind::None;
  std::optional<StateValue> before;
  std::optional<StateValue> after;

  bool asserts_anything() const { return before.has_value() || after.has_value(); }

  static LocalPrediction none(int step) { return LocalPrediction{step, -1, ChangeKind::None, {}, {}}; }

  static LocalPrediction none_at(int step, std::string location) {
    StateValue v = StateValue::known(std::move(location));
    return LocalPrediction{step, -1, ChangeKind::None, v, v};
  }

  static LocalPrediction create(int step, StateValue after) {
    if (!after.exists()) throw DataError("create prediction needs an existing after state");
    return LocalPrediction{step, -1, ChangeKind::Create, StateValue::not_exists(), std::move(after)};
  }

  static LocalPrediction destroy(int step, StateValue before) {
    if (!before.exists()) throw DataError("destroy prediction needs an existing before state");
    return LocalPrediction{step, -1, ChangeKind::Destroy, std::move(before), StateValue::not_exists()};
  }

  static LocalPrediction move(int step, StateValue before, StateValue after) {
    if (!before.exists() || !after.exists()) {
      throw DataError("move prediction endpoints must exist");
    }
    return LocalPrediction{step, -1, ChangeKind::Move, std::move(before), std::move(after)};
  }
};

// Two assertions on the same cell: agreement keeps the first, an existence
// assertion beats a location, and location-vs-location clashes collapse to
// unknown.
inline StateValue merge_assertions(const StateValue& a, const StateValue& b) {
  if (same_state(a, b)) return a;
  if (a.kind() == StateValue::Kind::NotExists || b.kind() == StateValue::Kind::NotExists) {
    return StateValue::not_exists();
  }
  return StateValue::unknown();
}

/// Writes each prediction's endpoints into an all-unfilled grid; duplicate
/// (step, participant) predictions are an error.
inline PartialGrid apply_local_predictions(const Paragraph& paragraph,
                                           const std::vector<Participant>& participants,
                                           const std::vector<LocalPrediction>& predictions) {
  PartialGrid grid = Grid::unfilled(paragraph, participants);
  std::set<std::pair<int, int>> seen;
  for (const LocalPrediction& p : predictions) {
    if (p.step < 1 || p.step > paragraph.step_count()) {
      throw DataError("prediction step " + std::to_string(p.step) + " out of range");
    }
    if (p.column < 0 || p.column >= grid.columns()) {
      throw DataError("prediction column " + std::to_string(p.column) + " out of range");
    }
    if (!seen.insert({p.step, p.column}).second) {
      throw DataError("duplicate prediction for step " + std::to_string(p.step) + ", column " +
                      std::to_string(p.column));
    }
    auto assert_cell = [&](int row, const std::optional<StateValue>& v) {
      if (!v.has_value()) return;
      StateValue& cell = grid.cell(row, p.column);
      cell = cell.is_unfilled() ? *v : merge_assertions(cell, *v);
    };
    assert_cell(p.step - 1, p.before);
    assert_cell(p.step, p.after);
  }
  return grid;
}

// Rule of inertia: unfilled cells copy the nearest filled cell above
// (forward pass) and below (backward pass), both passes reading the original
// grid. Where the passes disagree the cell becomes unknown; where only one
// reaches, its value wins; columns no pass reaches become unknown
// everywhere. Filled cells are never overwritten, so completing a complete
// grid is the identity.
inline Grid complete_grid(const PartialGrid& partial) {
  Grid grid = partial;
  int rows = grid.rows();
  for (int j = 0; j < grid.columns(); ++j) {
    std::vector<std::optional<StateValue>> forward(static_cast<std::size_t>(rows));
    std::vector<std::optional<StateValue>> backward(static_cast<std::size_t>(rows));
    std::optional<StateValue> carry;
    for (int i = 0; i < rows; ++i) {
      if (!partial.cell(i, j).is_unfilled()) carry = partial.cell(i, j);
      forward[static_cast<std::size_t>(i)] = carry;
    }
    carry.reset();
    for (int i = rows - 1; i >= 0; --i) {
      if (!partial.cell(i, j).is_unfilled()) carry = partial.cell(i, j);
      backward[static_cast<std::size_t>(i)] = carry;
    }
    for (int i = 0; i < rows; ++i) {
      if (!partial.cell(i, j).is_unfilled()) continue;
      const auto& f = forward[static_cast<std::size_t>(i)];
      const auto& b = backward[static_cast<std::size_t>(i)];
      StateValue value;
      if (f && b) {
        value = same_state(*f, *b) ? *f : StateValue::unknown();
      } else if (f || b) {
        value = f ? *f : *b;
      } else {
        value = StateValue::unknown();
      }
      grid.cell(i, j) = value;
    }
  }
  return grid;
}

/// Per-sentence local predictor: what does this sentence say about this
/// participant? Implementations must be pure.
using LocalPredictorFn = std::function<LocalPrediction(const Sentence&, const Participant&)>;

/// Local prediction followed by persistence completion.
inline Grid run_pipeline(const Paragraph& paragraph, const std::vector<Participant>& participants,
                         const LocalPredictorFn& predictor) {
  std::vector<LocalPrediction> predictions;
  for (const Sentence& sentence : paragraph.sentences) {
    for (const Participant& participant : participants) {
      LocalPrediction p = predictor(sentence, participant);
      p.step = sentence.index;
      p.column = participant.column_index;
      if (p.asserts_anything()) predictions.push_back(std::move(p));
    }
  }
  return complete_grid(apply_local_predictions(paragraph, participants, predictions));
}

/// Predictor that replays a gold grid's own transitions; the pipeline built
/// from it reproduces the gold grid's events exactly.
inline LocalPredictorFn oracle_predictor(const Grid& gold) {
  std::vector<StateChangeEvent> events = derive_transitions(gold);
  return [events](const Sentence& sentence, const Participant& participant) {
    for (const StateChangeEvent& ev : events) {
      if (ev.step == sentence.index && ev.column == participant.column_index) {
        return LocalPrediction{ev.step, ev.column, ev.kind, ev.before, ev.after};
      }
    }
    return LocalPrediction::none(sentence.index);
  };
}

}  // namespace statetrack
