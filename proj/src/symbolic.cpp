#include "ergo/symbolic.hpp"

#include <algorithm>
#include <numeric>

#include "ergo/error.hpp"

namespace ergo {

void check_alphabet(int alphabet_size) {
  if (alphabet_size < 2 || alphabet_size > kMaxAlphabet) {
    throw Error(ErrorKind::kInvalidInput,
                "alphabet size must lie in [2, 10], got " +
                    std::to_string(alphabet_size));
  }
}

std::size_t ipow(std::size_t base, int exponent) {
  std::size_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

namespace {

void check_symbols(std::span<const Symbol> symbols, int d) {
  for (Symbol s : symbols) {
    if (s >= d) {
      throw Error(ErrorKind::kInvalidInput,
                  "symbol " + std::to_string(int(s)) + " out of range for d=" +
                      std::to_string(d));
    }
  }
}

std::vector<Symbol> parse_symbols(std::string_view text, int d) {
  std::vector<Symbol> out;
  out.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw Error(ErrorKind::kParse,
                  "bad symbol '" + std::string(1, c) + "' in word");
    }
    out.push_back(static_cast<Symbol>(c - '0'));
  }
  check_symbols(out, d);
  return out;
}

std::string symbols_str(std::span<const Symbol> s) {
  std::string out;
  out.reserve(s.size());
  for (Symbol c : s) out.push_back(static_cast<char>('0' + c));
  return out;
}

// Smallest p dividing n with s == rotation of itself by p.
std::vector<Symbol> primitive_root(const std::vector<Symbol>& s) {
  const std::size_t n = s.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = s[i] == s[i - p];
    if (ok) return {s.begin(), s.begin() + p};
  }
  return s;
}

}  // namespace

Word::Word(int alphabet_size, std::vector<Symbol> symbols)
    : alphabet_size_(alphabet_size), symbols_(std::move(symbols)) {
  check_alphabet(alphabet_size_);
  check_symbols(symbols_, alphabet_size_);
}

Word Word::parse(std::string_view text, int alphabet_size) {
  check_alphabet(alphabet_size);
  return Word(alphabet_size, parse_symbols(text, alphabet_size));
}

Word Word::from_index(std::size_t index, int length, int alphabet_size) {
  std::vector<Symbol> s(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    s[i] = static_cast<Symbol>(index % alphabet_size);
    index /= alphabet_size;
  }
  return Word(alphabet_size, std::move(s));
}

std::size_t word_index(std::span<const Symbol> symbols, int alphabet_size) {
  std::size_t idx = 0;
  for (Symbol s : symbols) idx = idx * alphabet_size + s;
  return idx;
}

std::size_t Word::index() const { return word_index(symbols_, alphabet_size_); }

std::string Word::str() const { return symbols_str(symbols_); }

EventuallyPeriodicPoint::EventuallyPeriodicPoint(int alphabet_size,
                                                 std::vector<Symbol> preperiod,
                                                 std::vector<Symbol> period)
    : alphabet_size_(alphabet_size),
      preperiod_(std::move(preperiod)),
      period_(std::move(period)) {
  check_alphabet(alphabet_size_);
  if (period_.empty()) {
    throw Error(ErrorKind::kInvalidInput, "period must be nonempty");
  }
  check_symbols(preperiod_, alphabet_size_);
  check_symbols(period_, alphabet_size_);
  normalize();
}

void EventuallyPeriodicPoint::normalize() {
  period_ = primitive_root(period_);
  while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
    preperiod_.pop_back();
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
  }
}

EventuallyPeriodicPoint EventuallyPeriodicPoint::parse(std::string_view text,
                                                       int alphabet_size) {
  check_alphabet(alphabet_size);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')' ||
      text.find('(', open + 1) != std::string_view::npos) {
    throw Error(ErrorKind::kParse,
                "eventually periodic point must look like pre(period): '" +
                    std::string(text) + "'");
  }
  auto pre = parse_symbols(text.substr(0, open), alphabet_size);
  auto per = parse_symbols(text.substr(open + 1, text.size() - open - 2),
                           alphabet_size);
  if (per.empty()) throw Error(ErrorKind::kParse, "empty period in '" + std::string(text) + "'");
  return EventuallyPeriodicPoint(alphabet_size, std::move(pre), std::move(per));
}

EventuallyPeriodicPoint EventuallyPeriodicPoint::periodic(const Word& u) {
  if (u.empty()) throw Error(ErrorKind::kInvalidInput, "cannot repeat the empty word");
  return EventuallyPeriodicPoint(u.alphabet_size(), {},
                                 {u.symbols().begin(), u.symbols().end()});
}

EventuallyPeriodicPoint EventuallyPeriodicPoint::cylinder_inf(const Word& u) {
  return EventuallyPeriodicPoint(u.alphabet_size(),
                                 {u.symbols().begin(), u.symbols().end()}, {0});
}

EventuallyPeriodicPoint EventuallyPeriodicPoint::cylinder_sup(const Word& u) {
  return EventuallyPeriodicPoint(
      u.alphabet_size(), {u.symbols().begin(), u.symbols().end()},
      {static_cast<Symbol>(u.alphabet_size() - 1)});
}

Symbol EventuallyPeriodicPoint::at(std::size_t i) const {
  if (i < preperiod_.size()) return preperiod_[i];
  return period_[(i - preperiod_.size()) % period_.size()];
}

std::vector<Symbol> EventuallyPeriodicPoint::prefix(std::size_t length) const {
  std::vector<Symbol> out(length);
  for (std::size_t i = 0; i < length; ++i) out[i] = at(i);
  return out;
}

Word EventuallyPeriodicPoint::prefix_word(std::size_t length) const {
  return Word(alphabet_size_, prefix(length));
}

std::string EventuallyPeriodicPoint::str() const {
  return symbols_str(preperiod_) + "(" + symbols_str(period_) + ")";
}

std::strong_ordering lex_compare(const Point& a, const Point& b) {
  if (a.alphabet_size() != b.alphabet_size()) {
    throw Error(ErrorKind::kInvalidInput, "alphabet mismatch in comparison");
  }
  // Past both preperiods the pair of symbols repeats with period lcm.
  const std::size_t horizon =
      std::max(a.preperiod().size(), b.preperiod().size()) +
      std::lcm(a.period().size(), b.period().size());
  for (std::size_t i = 0; i < horizon; ++i) {
    if (auto c = a.at(i) <=> b.at(i); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Point apply_shift(const Point& p) {
  if (!p.preperiod().empty()) {
    return Point(p.alphabet_size(),
                 {p.preperiod().begin() + 1, p.preperiod().end()}, p.period());
  }
  auto per = p.period();
  std::rotate(per.begin(), per.begin() + 1, per.end());
  return Point(p.alphabet_size(), {}, std::move(per));
}

Point apply_shift(const Point& p, std::size_t times) {
  Point q = p;
  // The orbit is eventually periodic; only the residue past the preperiod matters.
  const std::size_t pre = p.preperiod().size();
  if (times > pre) {
    times = pre + (times - pre) % p.period().size();
  }
  for (std::size_t i = 0; i < times; ++i) q = apply_shift(q);
  return q;
}

Point prepend(Symbol a, const Point& p) {
  if (a >= p.alphabet_size()) {
    throw Error(ErrorKind::kInvalidInput,
                "symbol " + std::to_string(int(a)) + " out of range");
  }
  std::vector<Symbol> pre;
  pre.reserve(p.preperiod().size() + 1);
  pre.push_back(a);
  pre.insert(pre.end(), p.preperiod().begin(), p.preperiod().end());
  return Point(p.alphabet_size(), std::move(pre), p.period());
}

std::string Cut::str() const {
  switch (position) {
    case CutPosition::kLeftEnd: return "left-end " + left_rep.str();
    case CutPosition::kRightEnd: return "right-end " + right_rep.str();
    case CutPosition::kInterior: break;
  }
  return left_rep.str() + "|" + right_rep.str();
}

DeBruijnGraph::DeBruijnGraph(int alphabet_size, int node_depth,
                             std::vector<Rational> weights)
    : d_(alphabet_size),
      m_(node_depth),
      nodes_(ipow(static_cast<std::size_t>(alphabet_size), node_depth)),
      weights_(std::move(weights)) {
  check_alphabet(d_);
  if (m_ < 0) throw Error(ErrorKind::kInvalidInput, "negative node depth");
  if (weights_.size() != nodes_ * d_) {
    throw Error(ErrorKind::kInvalidInput,
                "de Bruijn graph needs " + std::to_string(nodes_ * d_) +
                    " edge weights, got " + std::to_string(weights_.size()));
  }
}

Point point_from_walk(const DeBruijnGraph& g, std::span<const std::size_t> path,
                      std::span<const std::size_t> cycle) {
  std::vector<Symbol> pre, per;
  pre.reserve(path.size());
  for (auto e : path) pre.push_back(g.first_symbol(e));
  for (auto e : cycle) per.push_back(g.first_symbol(e));
  return Point(g.alphabet_size(), std::move(pre), std::move(per));
}

std::size_t edge_at(const DeBruijnGraph& g, const Point& p, std::size_t step) {
  std::size_t idx = 0;
  for (int i = 0; i <= g.node_depth(); ++i) {
    idx = idx * g.alphabet_size() + p.at(step + i);
  }
  return idx;
}

std::size_t node_of(const DeBruijnGraph& g, const Point& p) {
  std::size_t idx = 0;
  for (int i = 0; i < g.node_depth(); ++i) idx = idx * g.alphabet_size() + p.at(i);
  return idx;
}

}  // namespace ergo
