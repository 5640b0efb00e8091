#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "statetrack/text.hpp"

namespace statetrack {

/// Data errors (malformed files, inconsistent structures). The CLI maps these
/// to exit code 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One sentence of a paragraph, treated as a process step (1-based index).
struct Sentence {
  int index = 0;
  std::string text;
  std::vector<Token> tokens;

  static Sentence make(int index, std::string text) {
    Sentence s;
    s.index = index;
    s.tokens = tokenize(text);
    s.text = std::move(text);
    if (s.tokens.empty()) {
      throw DataError("sentence " + std::to_string(index) + " has no tokens");
    }
    return s;
  }

  bool operator==(const Sentence&) const = default;
};

struct Paragraph {
  std::string id;
  std::string prompt;
  std::vector<Sentence> sentences;  // indices 1..m, contiguous

  int step_count() const { return static_cast<int>(sentences.size()); }

  const Sentence& sentence(int step) const { return sentences.at(static_cast<std::size_t>(step - 1)); }

  static Paragraph make(std::string id, std::string prompt, std::vector<Sentence> sentences) {
    if (sentences.empty()) throw DataError("paragraph " + id + " has no sentences");
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (sentences[i].index != static_cast<int>(i) + 1) {
        throw DataError("paragraph " + id + ": sentence indices must be contiguous from 1");
      }
    }
    return Paragraph{std::move(id), std::move(prompt), std::move(sentences)};
  }

  bool operator==(const Paragraph&) const = default;
};

/// A tracked entity; one grid column.
struct Participant {
  std::string surface;
  int column_index = 0;

  bool operator==(const Participant&) const = default;
};

/// Token range of a location mention: sentence step plus [first, last] token
/// indices (inclusive) within that sentence.
struct TokenSpan {
  int sentence_index = 0;
  int first_token = 0;
  int last_token = 0;

  bool operator==(const TokenSpan&) const = default;
};

// Cell value of the state grid. Unfilled marks cells a partial grid has not
// committed to yet; completed grids never contain it.
class StateValue {
 public:
  enum class Kind { NotExists, Unknown, Known, Unfilled };

  StateValue() : kind_(Kind::Unfilled) {}

  static StateValue not_exists() { return StateValue(Kind::NotExists); }
  static StateValue unknown() { return StateValue(Kind::Unknown); }
  static StateValue unfilled() { return StateValue(Kind::Unfilled); }
  static StateValue known(std::string location, std::optional<TokenSpan> span = std::nullopt) {
    if (location.empty()) throw DataError("known location must be non-empty");
    StateValue v(Kind::Known);
    v.location_ = std::move(location);
    v.span_ = span;
    return v;
  }

  Kind kind() const { return kind_; }
  bool is_known() const { return kind_ == Kind::Known; }
  bool is_unfilled() const { return kind_ == Kind::Unfilled; }
  /// Exists = occupies some location (known or not).
  bool exists() const { return kind_ == Kind::Known || kind_ == Kind::Unknown; }

  const std::string& location() const {
    if (!is_known()) throw std::logic_error("location() on non-Known state");
    return location_;
  }
  const std::optional<TokenSpan>& span() const { return span_; }

  /// Structural equality (exact strings and spans).
  bool operator==(const StateValue&) const = default;

  /// Equality under location normalization; "the leaf" and "leaf" agree.
  friend bool same_state(const StateValue& a, const StateValue& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ != Kind::Known) return true;
    return location_equal(a.location_, b.location_);
  }

 private:
  explicit StateValue(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::string location_;
  std::optional<TokenSpan> span_;
};

enum class ChangeKind { None, Create, Destroy, Move };

inline const char* to_string(ChangeKind k) {
  switch (k) {
    case ChangeKind::None: return "NONE";
    case ChangeKind::Create: return "CREATE";
    case ChangeKind::Destroy: return "DESTROY";
    case ChangeKind::Move: return "MOVE";
  }
  return "?";
}

/// A state change read off two consecutive grid rows.
struct StateChangeEvent {
  int column = 0;
  int step = 0;  // 1..m
  ChangeKind kind = ChangeKind::None;
  StateValue before;
  StateValue after;

  static StateChangeEvent make(int column, int step, ChangeKind kind, StateValue before,
                               StateValue after) {
    switch (kind) {
      case ChangeKind::Create:
        if (before.kind() != StateValue::Kind::NotExists || !after.exists()) {
          throw DataError("create event must go from not-exists to a location");
        }
        break;
      case ChangeKind::Destroy:
        if (!before.exists() || after.kind() != StateValue::Kind::NotExists) {
          throw DataError("destroy event must go from a location to not-exists");
        }
        break;
      case ChangeKind::Move:
        if (!before.exists() || !after.exists() || same_state(before, after)) {
          throw DataError("move event needs two distinct locations");
        }
        break;
      case ChangeKind::None:
        throw DataError("none is not a state change event");
    }
    return StateChangeEvent{column, step, kind, std::move(before), std::move(after)};
  }
};

// The (m+1) x n state grid: row 0 is the state before the process, row i the
// state after step i. The same type doubles as the partial grid produced by
// local predictions; complete() distinguishes the two.
struct Grid {
  Paragraph paragraph;
  std::vector<Participant> participants;
  std::vector<StateValue> cells;  // row-major, (m+1) * n

  int rows() const { return paragraph.step_count() + 1; }
  int columns() const { return static_cast<int>(participants.size()); }

  StateValue& cell(int row, int col) {
    return cells.at(static_cast<std::size_t>(row) * static_cast<std::size_t>(columns()) +
                    static_cast<std::size_t>(col));
  }
  const StateValue& cell(int row, int col) const {
    return cells.at(static_cast<std::size_t>(row) * static_cast<std::size_t>(columns()) +
                    static_cast<std::size_t>(col));
  }

  bool complete() const {
    for (const auto& c : cells) {
      if (c.is_unfilled()) return false;
    }
    return true;
  }

  static Grid make(Paragraph paragraph, std::vector<Participant> participants,
                   std::vector<StateValue> cells) {
    std::size_t expect = static_cast<std::size_t>(paragraph.step_count() + 1) * participants.size();
    if (participants.empty()) throw DataError("grid " + paragraph.id + " has no participants");
    if (cells.size() != expect) {
      throw DataError("grid " + paragraph.id + " has wrong cell count");
    }
    for (std::size_t j = 0; j < participants.size(); ++j) {
      if (participants[j].surface.empty()) throw DataError("participant surface must be non-empty");
      if (participants[j].column_index != static_cast<int>(j)) {
        throw DataError("participant column indices must be 0..n-1 in order");
      }
    }
    return Grid{std::move(paragraph), std::move(participants), std::move(cells)};
  }

  /// All-unfilled grid over the given paragraph and participants.
  static Grid unfilled(Paragraph paragraph, std::vector<Participant> participants) {
    std::size_t n = static_cast<std::size_t>(paragraph.step_count() + 1) * participants.size();
    return make(std::move(paragraph), std::move(participants),
                std::vector<StateValue>(n, StateValue::unfilled()));
  }
};

using PartialGrid = Grid;

// Classifies the pair of states around one step. NotExists->NotExists,
// ?->? and Known(x)->Known(x) under normalized equality are no event;
// existence appearing is Create, vanishing is Destroy, everything else that
// changes the location value is a Move (including ?->Known and Known->?).
inline std::optional<StateChangeEvent> classify_transition(int column, int step,
                                                           const StateValue& before,
                                                           const StateValue& after) {
  if (before.is_unfilled() || after.is_unfilled()) return std::nullopt;
  if (same_state(before, after)) return std::nullopt;
  if (!before.exists() && after.exists()) {
    return StateChangeEvent::make(column, step, ChangeKind::Create, before, after);
  }
  if (before.exists() && !after.exists()) {
    return StateChangeEvent::make(column, step, ChangeKind::Destroy, before, after);
  }
  return StateChangeEvent::make(column, step, ChangeKind::Move, before, after);
}

/// Events derived from consecutive row pairs, ordered by (step, column).
/// At most one event per participant per step. Pure.
inline std::vector<StateChangeEvent> derive_transitions(const Grid& grid) {
  std::vector<StateChangeEvent> events;
  for (int step = 1; step <= grid.paragraph.step_count(); ++step) {
    for (int col = 0; col < grid.columns(); ++col) {
      if (auto ev = classify_transition(col, step, grid.cell(step - 1, col), grid.cell(step, col))) {
        events.push_back(std::move(*ev));
      }
    }
  }
  return events;
}

struct Violation {
  std::string where;
  std::string rule;
  std::string message;
};

// Structural validation usable on complete and partial grids alike. Unfilled
// cells are skipped, not flagged. Checks: declared dimensions, non-empty
// participant surfaces, span bounds, and the event semantics of every filled
// adjacent cell pair (no create of an existing entity, no destroy of a
// non-existent one).
inline std::vector<Violation> validate_grid(const Grid& grid) {
  std::vector<Violation> out;
  auto add = [&](std::string where, std::string rule, std::string message) {
    out.push_back(Violation{std::move(where), std::move(rule), std::move(message)});
  };
  const std::string gid = grid.paragraph.id;

  std::size_t expect =
      static_cast<std::size_t>(grid.paragraph.step_count() + 1) * grid.participants.size();
  if (grid.cells.size() != expect || grid.participants.empty()) {
    add(gid, "dimensions", "grid is not (m+1) x n for m=" +
                               std::to_string(grid.paragraph.step_count()) +
                               ", n=" + std::to_string(grid.participants.size()));
    return out;  // cell indexing is unsafe past this point
  }
  for (int j = 0; j < grid.columns(); ++j) {
    if (grid.participants[static_cast<std::size_t>(j)].column_index != j) {
      add(gid, "columns", "participant column indices must be 0..n-1 in order");
    }
  }

  for (int i = 0; i < grid.rows(); ++i) {
    for (int j = 0; j < grid.columns(); ++j) {
      const StateValue& v = grid.cell(i, j);
      std::string where = gid + " cell(" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (v.is_known() && v.span().has_value()) {
        const TokenSpan& sp = *v.span();
        bool sentence_ok = sp.sentence_index >= 1 && sp.sentence_index <= grid.paragraph.step_count();
        if (!sentence_ok) {
          add(where, "span", "span sentence index out of range");
        } else {
          int token_count =
              static_cast<int>(grid.paragraph.sentence(sp.sentence_index).tokens.size());
          if (sp.first_token < 0 || sp.last_token < sp.first_token || sp.last_token >= token_count) {
            add(where, "span", "span token range out of range");
          }
        }
      }
    }
  }

  // Event semantics over filled adjacent pairs. classify_transition already
  // produces only legal events; surface anything it rejects as a violation.
  for (int step = 1; step <= grid.paragraph.step_count(); ++step) {
    for (int j = 0; j < grid.columns(); ++j) {
      try {
        classify_transition(j, step, grid.cell(step - 1, j), grid.cell(step, j));
      } catch (const DataError& e) {
        add(gid + " step " + std::to_string(step) + ", column " + std::to_string(j), "transition",
            e.what());
      }
    }
  }
  return out;
}

}  // namespace statetrack
