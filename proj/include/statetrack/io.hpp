#pragma once

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "statetrack/grid.hpp"
#include "statetrack/persistence.hpp"
#include "statetrack/rng.hpp"

namespace statetrack {

struct Corpus {
  std::vector<Grid> records;  // each grid carries its paragraph

  const Grid* find(const std::string& paragraph_id) const {
    for (const auto& g : records) {
      if (g.paragraph.id == paragraph_id) return &g;
    }
    return nullptr;
  }

  std::vector<std::string> prompts() const {
    std::set<std::string> seen;
    std::vector<std::string> out;
    for (const auto& g : records) {
      if (seen.insert(g.paragraph.prompt).second) out.push_back(g.paragraph.prompt);
    }
    return out;
  }
};

namespace detail {

inline std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

[[noreturn]] inline void parse_fail(std::size_t line_no, const std::string& why) {
  throw DataError("line " + std::to_string(line_no) + ": " + why);
}

inline int parse_int(const std::string& s, std::size_t line_no, const std::string& what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) parse_fail(line_no, what + " is not an integer: '" + s + "'");
    return v;
  } catch (const DataError&) {
    throw;
  } catch (...) {
    parse_fail(line_no, what + " is not an integer: '" + s + "'");
  }
}

}  // namespace detail

// Cell syntax: `-` not-exists, `?` unknown, anything else a location.
// Leading backslash escapes literal cells: `\-`, `\?`, `\\x`. Tabs cannot
// appear (they are the field separator).
inline std::string encode_cell(const StateValue& v) {
  switch (v.kind()) {
    case StateValue::Kind::NotExists: return "-";
    case StateValue::Kind::Unknown: return "?";
    case StateValue::Kind::Unfilled:
      throw DataError("unfilled cells cannot be serialized");
    case StateValue::Kind::Known: break;
  }
  const std::string& loc = v.location();
  if (loc.find('\t') != std::string::npos) {
    throw DataError("tab characters are forbidden in location cells: '" + loc + "'");
  }
  if (loc == "-" || loc == "?" || loc[0] == '\\') return "\\" + loc;
  return loc;
}

inline StateValue decode_cell(const std::string& raw, std::size_t line_no) {
  if (raw.empty()) detail::parse_fail(line_no, "empty grid cell");
  if (raw == "-") return StateValue::not_exists();
  if (raw == "?") return StateValue::unknown();
  if (raw[0] == '\\') {
    if (raw == "\\-") return StateValue::known("-");
    if (raw == "\\?") return StateValue::known("?");
    if (raw.size() >= 2 && raw[1] == '\\') return StateValue::known(raw.substr(1));
    detail::parse_fail(line_no, "bad cell escape: '" + raw + "'");
  }
  return StateValue::known(raw);
}

// Grid-TSV reader. Strict: any malformed line aborts with its line number.
// Record layout: one P line, S lines 1..m in order, E lines in column order,
// G rows 0..m in order with exactly n cells; records separated by blank lines.
inline Corpus parse_corpus(std::istream& in) {
  Corpus corpus;
  std::set<std::string> ids;

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, std::string>> record;  // (line number, line)

  auto flush_record = [&]() {
    if (record.empty()) return;
    std::size_t k = 0;
    auto fields_at = [&](std::size_t i) { return detail::split_tabs(record[i].second); };

    auto head = fields_at(0);
    if (head.size() != 3 || head[0] != "P") detail::parse_fail(record[0].first, "expected P line");
    std::string id = head[1];
    if (id.empty()) detail::parse_fail(record[0].first, "empty paragraph id");
    if (!ids.insert(id).second) detail::parse_fail(record[0].first, "duplicate paragraph id " + id);
    ++k;

    std::vector<Sentence> sentences;
    while (k < record.size()) {
      auto f = fields_at(k);
      if (f[0] != "S") break;
      if (f.size() != 3) detail::parse_fail(record[k].first, "S line needs index and text");
      int idx = detail::parse_int(f[1], record[k].first, "sentence index");
      if (idx != static_cast<int>(sentences.size()) + 1) {
        detail::parse_fail(record[k].first, "sentence indices must be contiguous from 1");
      }
      try {
        sentences.push_back(Sentence::make(idx, f[2]));
      } catch (const DataError& e) {
        detail::parse_fail(record[k].first, e.what());
      }
      ++k;
    }
    if (sentences.empty()) detail::parse_fail(record[0].first, "record has no S lines");

    std::vector<Participant> participants;
    while (k < record.size()) {
      auto f = fields_at(k);
      if (f[0] != "E") break;
      if (f.size() != 2 || f[1].empty()) detail::parse_fail(record[k].first, "E line needs a surface");
      participants.push_back(Participant{f[1], static_cast<int>(participants.size())});
      ++k;
    }
    if (participants.empty()) detail::parse_fail(record[0].first, "record has no E lines");

    int m = static_cast<int>(sentences.size());
    std::size_t n = participants.size();
    std::vector<StateValue> cells;
    int row = 0;
    while (k < record.size()) {
      auto f = fields_at(k);
      if (f[0] != "G") detail::parse_fail(record[k].first, "unexpected line kind '" + f[0] + "'");
      if (f.size() != n + 2) {
        detail::parse_fail(record[k].first,
                           "G row needs " + std::to_string(n) + " cells, got " +
                               std::to_string(f.size() - 2));
      }
      if (detail::parse_int(f[1], record[k].first, "row index") != row) {
        detail::parse_fail(record[k].first, "G rows must be 0..m in order");
      }
      for (std::size_t c = 0; c < n; ++c) cells.push_back(decode_cell(f[2 + c], record[k].first));
      ++row;
      ++k;
    }
    if (row != m + 1) {
      detail::parse_fail(record.back().first,
                         "expected " + std::to_string(m + 1) + " G rows, got " + std::to_string(row));
    }
    corpus.records.push_back(Grid::make(Paragraph::make(id, head[2], std::move(sentences)),
                                        std::move(participants), std::move(cells)));
    record.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush_record();
    } else {
      record.emplace_back(line_no, line);
    }
  }
  flush_record();
  return corpus;
}

inline void write_corpus(const Corpus& corpus, std::ostream& out) {
  bool first = true;
  for (const Grid& g : corpus.records) {
    if (!first) out << '\n';
    first = false;
    out << "P\t" << g.paragraph.id << '\t' << g.paragraph.prompt << '\n';
    for (const Sentence& s : g.paragraph.sentences) {
      out << "S\t" << s.index << '\t' << s.text << '\n';
    }
    for (const Participant& p : g.participants) out << "E\t" << p.surface << '\n';
    for (int i = 0; i < g.rows(); ++i) {
      out << "G\t" << i;
      for (int j = 0; j < g.columns(); ++j) out << '\t' << encode_cell(g.cell(i, j));
      out << '\n';
    }
  }
}

inline std::string write_corpus_string(const Corpus& corpus) {
  std::ostringstream out;
  write_corpus(corpus, out);
  return out.str();
}

inline Corpus parse_corpus_string(const std::string& text) {
  std::istringstream in(text);
  return parse_corpus(in);
}

struct SplitSpec {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
  std::uint64_t seed = 13;

  void check() const {
    if (train < 0 || dev < 0 || test < 0 || std::abs(train + dev + test - 1.0) > 1e-9) {
      throw DataError("split fractions must be non-negative and sum to 1");
    }
  }
};

struct CorpusSplit {
  Corpus train, dev, test;
};

// Partition by process prompt so test processes are unseen in train. The
// distinct prompt list is sorted, shuffled with the seeded generator, then
// cut; dev and test counts round down and train takes the remainder.
inline CorpusSplit split_corpus(const Corpus& corpus, const SplitSpec& spec) {
  spec.check();
  std::set<std::string> prompt_set;
  for (const auto& g : corpus.records) prompt_set.insert(g.paragraph.prompt);
  if (prompt_set.size() < 3) {
    throw DataError("need at least 3 distinct prompts to split, got " +
                    std::to_string(prompt_set.size()));
  }
  std::vector<std::string> prompts(prompt_set.begin(), prompt_set.end());
  SplitMix64 rng(spec.seed);
  rng.shuffle(prompts);

  std::size_t n = prompts.size();
  std::size_t n_dev = static_cast<std::size_t>(std::floor(spec.dev * static_cast<double>(n)));
  std::size_t n_test = static_cast<std::size_t>(std::floor(spec.test * static_cast<double>(n)));
  std::size_t n_train = n - n_dev - n_test;

  std::map<std::string, int> bucket;  // 0 train, 1 dev, 2 test
  for (std::size_t i = 0; i < n; ++i) {
    bucket[prompts[i]] = i < n_train ? 0 : (i < n_train + n_dev ? 1 : 2);
  }
  CorpusSplit split;
  for (const auto& g : corpus.records) {
    switch (bucket[g.paragraph.prompt]) {
      case 0: split.train.records.push_back(g); break;
      case 1: split.dev.records.push_back(g); break;
      default: split.test.records.push_back(g); break;
    }
  }
  return split;
}

// ---------------------------------------------------------------------------
// bAbI-style cascaded QA export.
//
// Three files over the same stories: Q1 asks existence after every step for
// every participant; Q2 asks whether the location is known, only where Q1's
// answer is yes; Q3 asks for the location, only where Q2's answer is yes.
// Line numbers restart at 1 for each paragraph; question lines carry the
// answer and an empty supporting-facts field.
// ---------------------------------------------------------------------------

struct BabiExport {
  std::string q1, q2, q3;
};

inline BabiExport export_babi(const Corpus& corpus) {
  std::ostringstream q1, q2, q3;
  for (const Grid& g : corpus.records) {
    int k1 = 0, k2 = 0, k3 = 0;
    for (const Sentence& s : g.paragraph.sentences) {
      q1 << ++k1 << ' ' << s.text << '\n';
      q2 << ++k2 << ' ' << s.text << '\n';
      q3 << ++k3 << ' ' << s.text << '\n';
      for (const Participant& p : g.participants) {
        const StateValue& v = g.cell(s.index, p.column_index);
        if (v.is_unfilled()) {
          throw DataError("cannot export partial grid " + g.paragraph.id);
        }
        q1 << ++k1 << " Does " << p.surface << " exist?\t" << (v.exists() ? "yes" : "no") << "\t\n";
        if (!v.exists()) continue;
        q2 << ++k2 << " Is the location of " << p.surface << " known?\t"
           << (v.is_known() ? "yes" : "no") << "\t\n";
        if (!v.is_known()) continue;
        q3 << ++k3 << " Where is " << p.surface << "?\t" << v.location() << "\t\n";
      }
    }
  }
  return BabiExport{q1.str(), q2.str(), q3.str()};
}

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

// Word vector table in GloVe text convention. Lookup is total: out-of-
// vocabulary words get a vector hashed from the word bytes, uniform in
// [-0.05, 0.05] per component, the same on every run.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(int dimension) : dimension_(dimension) {
    if (dimension <= 0) throw DataError("embedding dimension must be positive");
  }

  int dimension() const { return dimension_; }
  std::size_t size() const { return table_.size(); }

  void insert(const std::string& word, std::vector<double> vec) {
    if (static_cast<int>(vec.size()) != dimension_) {
      throw DataError("embedding for '" + word + "' has wrong dimension");
    }
    table_.emplace(word, std::move(vec));  // first occurrence wins
  }

  std::vector<double> lookup(const std::string& word) const {
    auto it = table_.find(word);
    if (it != table_.end()) return it->second;
    SplitMix64 rng(hash_bytes(word));
    std::vector<double> v(static_cast<std::size_t>(dimension_));
    for (auto& x : v) x = rng.uniform(-0.05, 0.05);
    return v;
  }

 private:
  int dimension_;
  std::unordered_map<std::string, std::vector<double>> table_;
};

inline EmbeddingTable load_embeddings(std::istream& in, int expected_dim) {
  EmbeddingTable table(expected_dim);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string word;
    fields >> word;
    std::vector<double> vec;
    double x;
    while (fields >> x) vec.push_back(x);
    if (static_cast<int>(vec.size()) != expected_dim) {
      detail::parse_fail(line_no, "expected " + std::to_string(expected_dim) + " components, got " +
                                      std::to_string(vec.size()));
    }
    table.insert(word, std::move(vec));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Local-prediction TSV
//
// `L<TAB>paragraph_id<TAB>step<TAB>participant<TAB>type<TAB>before<TAB>after`.
// None predictions that assert nothing are omitted on write and implied on
// read; a None row always carries the same location in both endpoint fields.
// ---------------------------------------------------------------------------

struct PredictionRecord {
  std::string paragraph_id;
  std::string participant;
  LocalPrediction prediction;
};

inline void write_predictions(const std::vector<PredictionRecord>& records, std::ostream& out) {
  auto endpoint = [](const std::optional<StateValue>& v) {
    return v.has_value() ? encode_cell(*v) : std::string("?");
  };
  for (const auto& r : records) {
    const LocalPrediction& p = r.prediction;
    if (p.kind == ChangeKind::None && !p.before.has_value()) continue;
    out << "L\t" << r.paragraph_id << '\t' << p.step << '\t' << r.participant << '\t'
        << to_string(p.kind) << '\t' << endpoint(p.before) << '\t' << endpoint(p.after) << '\n';
  }
}

inline std::vector<PredictionRecord> parse_predictions(std::istream& in) {
  std::vector<PredictionRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = detail::split_tabs(line);
    if (f.size() != 7 || f[0] != "L") detail::parse_fail(line_no, "expected 7-field L line");
    int step = detail::parse_int(f[2], line_no, "step");
    StateValue before = decode_cell(f[5], line_no);
    StateValue after = decode_cell(f[6], line_no);
    LocalPrediction pred;
    try {
      if (f[4] == "NONE") {
        if (!same_state(before, after)) {
          detail::parse_fail(line_no, "NONE rows need matching before/after");
        }
        pred = before.is_known() ? LocalPrediction::none_at(step, before.location())
                                 : LocalPrediction::none(step);
      } else if (f[4] == "CREATE") {
        pred = LocalPrediction::create(step, after);
      } else if (f[4] == "DESTROY") {
        pred = LocalPrediction::destroy(step, before);
      } else if (f[4] == "MOVE") {
        pred = LocalPrediction::move(step, before, after);
      } else {
        detail::parse_fail(line_no, "unknown prediction type '" + f[4] + "'");
      }
    } catch (const DataError& e) {
      detail::parse_fail(line_no, e.what());
    }
    out.push_back(PredictionRecord{f[1], f[3], pred});
  }
  return out;
}

}  // namespace statetrack
