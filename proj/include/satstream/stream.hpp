#pragma once

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "satstream/clause.hpp"
#include "satstream/errors.hpp"

namespace satstream {

enum class StreamOp : std::uint8_t { insert, erase };

struct StreamEvent {
  StreamOp op = StreamOp::insert;
  Clause clause;
};

// File header: `p stream <n> <m> <static|dynamic>` for disjunctive clauses,
// `p andstream <n> <m>` for conjunctive (insertion-only) ones.
struct StreamHeader {
  int n = 0;
  long m = 0;
  bool dynamic = false;
  ClauseKind kind = ClauseKind::disjunctive;
};

// Whether repeated inserts of an identical clause are rejected. Dynamic
// streams default to strict: the algorithms assume each live clause has
// frequency exactly one. Insertion-only streams default to permissive and
// treat duplicates as distinct stream items.
enum class DuplicatePolicy : std::uint8_t { strict, permissive };

inline StreamHeader parse_header(const std::string& line, long line_no = 1) {
  std::istringstream in(line);
  std::string p, format, mode;
  StreamHeader h;
  if (!(in >> p >> format >> h.n >> h.m) || p != "p")
    throw ParseError("malformed header: '" + line + "'", line_no);
  if (h.n < 1 || h.m < 1)
    throw ParseError("header requires n >= 1 and m >= 1", line_no);
  if (format == "stream") {
    if (!(in >> mode) || (mode != "static" && mode != "dynamic"))
      throw ParseError("stream header needs 'static' or 'dynamic'", line_no);
    h.dynamic = mode == "dynamic";
    h.kind = ClauseKind::disjunctive;
  } else if (format == "andstream") {
    h.dynamic = false;
    h.kind = ClauseKind::conjunctive;
  } else {
    throw ParseError("unknown stream format '" + format + "'", line_no);
  }
  std::string rest;
  if (in >> rest) throw ParseError("trailing tokens in header", line_no);
  return h;
}

// One event line: `+ <lit>... 0` or `- <lit>... 0`. Returns the normalized
// event, or absent when the clause is trivially true (the caller drops it and
// keeps a counter). Literal k > 0 reads as x_k, k < 0 as ~x_|k|.
inline std::optional<StreamEvent> parse_event(const std::string& line,
                                              const StreamHeader& header,
                                              long line_no = 0) {
  std::istringstream in(line);
  std::string op;
  in >> op;
  if (op != "+" && op != "-")
    throw ParseError("event must start with '+' or '-'", line_no);
  if (op == "-" && !header.dynamic)
    throw ParseError("delete event in a non-dynamic stream", line_no);

  std::vector<Literal> raw;
  long v = 0;
  bool terminated = false;
  while (in >> v) {
    if (v == 0) {
      terminated = true;
      break;
    }
    const long a = v < 0 ? -v : v;
    if (a > header.n)
      throw VarOutOfRange(static_cast<int>(a), header.n, line_no);
    raw.push_back(literal_from_int(static_cast<int>(v)));
  }
  if (!terminated) throw ParseError("missing terminating 0", line_no);
  std::string rest;
  if (in >> rest) throw ParseError("tokens after terminator", line_no);

  auto clause = normalize_clause(std::move(raw), header.kind);
  if (!clause) return std::nullopt;
  return StreamEvent{op == "+" ? StreamOp::insert : StreamOp::erase,
                     std::move(*clause)};
}

inline std::string render_event(const StreamEvent& e) {
  std::string s(e.op == StreamOp::insert ? "+" : "-");
  for (const Literal& l : e.clause.lits) {
    s += ' ';
    s += std::to_string(literal_to_int(l));
  }
  s += " 0";
  return s;
}

inline std::string render_header(const StreamHeader& h) {
  std::string s = "p ";
  s += h.kind == ClauseKind::conjunctive ? "andstream " : "stream ";
  s += std::to_string(h.n) + " " + std::to_string(h.m);
  if (h.kind == ClauseKind::disjunctive)
    s += h.dynamic ? " dynamic" : " static";
  return s;
}

namespace detail {
inline std::string clause_key(const Clause& c) {
  std::string key;
  key.reserve(c.lits.size() * 4);
  for (const Literal& l : c.lits) {
    const int code = literal_code(l);
    key += static_cast<char>(code & 0xff);
    key += static_cast<char>((code >> 8) & 0xff);
    key += static_cast<char>((code >> 16) & 0xff);
    key += static_cast<char>(code >> 24);
  }
  return key;
}
}  // namespace detail

// Single-pass reader over an event stream. Skips comments and blank lines,
// drops trivially true clauses (counted), and in strict mode checks the
// no-duplicate assumption against the set of live clauses. Strict-mode
// bookkeeping is a file validation aid, not part of any algorithm's space.
class StreamReader {
 public:
  explicit StreamReader(std::istream& in)
      : StreamReader(in, std::nullopt) {}

  StreamReader(std::istream& in, std::optional<DuplicatePolicy> policy)
      : in_(in) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (skippable(line)) continue;
      header_ = parse_header(line, line_no_);
      break;
    }
    if (header_.n == 0) throw ParseError("missing header", line_no_);
    policy_ = policy.value_or(header_.dynamic ? DuplicatePolicy::strict
                                              : DuplicatePolicy::permissive);
  }

  const StreamHeader& header() const { return header_; }
  long trivial_dropped() const { return trivial_dropped_; }
  long events_read() const { return events_read_; }

  std::optional<StreamEvent> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (skippable(line)) continue;
      auto ev = parse_event(line, header_, line_no_);
      if (!ev) {
        ++trivial_dropped_;
        continue;
      }
      if (ev->op == StreamOp::insert) {
        ++inserts_;
        if (inserts_ > header_.m)
          throw ParseError("more inserts than the declared bound m", line_no_);
      }
      if (policy_ == DuplicatePolicy::strict) check_duplicates(*ev);
      ++events_read_;
      return ev;
    }
    return std::nullopt;
  }

 private:
  static bool skippable(const std::string& line) {
    if (line.empty() || line[0] == 'c') return true;
    return line.find_first_not_of(" \t\r") == std::string::npos;
  }

  void check_duplicates(const StreamEvent& ev) {
    const std::string key = detail::clause_key(ev.clause);
    if (ev.op == StreamOp::insert) {
      if (!live_.insert(key).second) throw DuplicateInsert(line_no_);
    } else {
      if (live_.erase(key) == 0)
        throw ParseError("delete of a clause that is not live", line_no_);
    }
  }

  std::istream& in_;
  StreamHeader header_;
  DuplicatePolicy policy_ = DuplicatePolicy::permissive;
  long line_no_ = 0;
  long trivial_dropped_ = 0;
  long events_read_ = 0;
  long inserts_ = 0;
  std::unordered_set<std::string> live_;
};

// In-memory event source with the same shape as StreamReader; used by tests
// and generators that already hold the events.
class VectorEvents {
 public:
  VectorEvents(StreamHeader header, std::vector<StreamEvent> events)
      : header_(header), events_(std::move(events)) {}

  static VectorEvents inserts(int n, const std::vector<Clause>& clauses,
                              bool dynamic = false) {
    StreamHeader h{n, std::max<long>(1, static_cast<long>(clauses.size())),
                   dynamic,
                   clauses.empty() ? ClauseKind::disjunctive
                                   : clauses.front().kind};
    std::vector<StreamEvent> evs;
    evs.reserve(clauses.size());
    for (const Clause& c : clauses) evs.push_back({StreamOp::insert, c});
    return VectorEvents(h, std::move(evs));
  }

  const StreamHeader& header() const { return header_; }
  long trivial_dropped() const { return 0; }

  std::optional<StreamEvent> next() {
    if (pos_ >= events_.size()) return std::nullopt;
    return events_[pos_++];
  }

  void rewind() { pos_ = 0; }

 private:
  StreamHeader header_;
  std::vector<StreamEvent> events_;
  std::size_t pos_ = 0;
};

// Materializes the final clause multiset of a stream; oracle-side helper.
template <class EventSource>
std::vector<Clause> collect_final_clauses(EventSource& src) {
  std::vector<Clause> live;
  std::optional<StreamEvent> ev;
  while ((ev = src.next())) {
    if (ev->op == StreamOp::insert) {
      live.push_back(ev->clause);
    } else {
      for (std::size_t i = 0; i < live.size(); ++i) {
        if (live[i] == ev->clause) {
          live[i] = std::move(live.back());
          live.pop_back();
          break;
        }
      }
    }
  }
  return live;
}

}  // namespace satstream
