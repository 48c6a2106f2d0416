#pragma once

// Words, eventually periodic points and de Bruijn graphs over the full shift
// on {0, ..., d-1}. Node and edge indices encode words in base d with the
// first symbol most significant, so for a fixed length numeric order on
// indices is lexicographic order on words.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/rational.hpp"

namespace ergo {

using Symbol = std::uint8_t;

// Serialization uses one decimal digit per symbol.
inline constexpr int kMaxAlphabet = 10;

void check_alphabet(int alphabet_size);

std::size_t ipow(std::size_t base, int exponent);

class Word {
 public:
  Word() = default;
  Word(int alphabet_size, std::vector<Symbol> symbols);

  static Word parse(std::string_view text, int alphabet_size);
  static Word from_index(std::size_t index, int length, int alphabet_size);

  int alphabet_size() const { return alphabet_size_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const { return symbols_; }

  // Base-d value of the word; the lexicographic rank among words of equal length.
  std::size_t index() const;
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    return a.symbols_ <=> b.symbols_;
  }

 private:
  int alphabet_size_ = 2;
  std::vector<Symbol> symbols_;
};

std::size_t word_index(std::span<const Symbol> symbols, int alphabet_size);

// pre · period^infinity, kept in normal form: the period is primitive and the
// preperiod cannot be shortened by rotating the period. Equality of normal
// forms is equality of points.
class EventuallyPeriodicPoint {
 public:
  EventuallyPeriodicPoint(int alphabet_size, std::vector<Symbol> preperiod,
                          std::vector<Symbol> period);

  // "pre(period)", e.g. "110(01)" or "(01)".
  static EventuallyPeriodicPoint parse(std::string_view text, int alphabet_size);
  // u repeated forever.
  static EventuallyPeriodicPoint periodic(const Word& u);
  // Infimum u·0^inf and supremum u·(d-1)^inf of the cylinder [u].
  static EventuallyPeriodicPoint cylinder_inf(const Word& u);
  static EventuallyPeriodicPoint cylinder_sup(const Word& u);

  int alphabet_size() const { return alphabet_size_; }
  const std::vector<Symbol>& preperiod() const { return preperiod_; }
  const std::vector<Symbol>& period() const { return period_; }

  Symbol at(std::size_t i) const;
  std::vector<Symbol> prefix(std::size_t length) const;
  Word prefix_word(std::size_t length) const;
  std::string str() const;

  friend bool operator==(const EventuallyPeriodicPoint&,
                         const EventuallyPeriodicPoint&) = default;

 private:
  void normalize();

  int alphabet_size_;
  std::vector<Symbol> preperiod_;
  std::vector<Symbol> period_;
};

using Point = EventuallyPeriodicPoint;

// Lexicographic order: the first disagreeing symbol decides.
std::strong_ordering lex_compare(const Point& a, const Point& b);
inline std::strong_ordering operator<=>(const Point& a, const Point& b) {
  return lex_compare(a, b);
}

// The shift: drops the first symbol.
Point apply_shift(const Point& p);
Point apply_shift(const Point& p, std::size_t times);
// Inverse branch: a·p.
Point prepend(Symbol a, const Point& p);

enum class CutPosition { kInterior, kLeftEnd, kRightEnd };

// Gap between two adjacent cylinders. For an interior cut left_rep is the
// supremum of the left cylinder and right_rep the infimum of the right one.
// At either end of the order both representatives coincide with the extreme
// point.
struct Cut {
  Point left_rep;
  Point right_rep;
  CutPosition position = CutPosition::kInterior;

  std::string str() const;
  friend bool operator==(const Cut&, const Cut&) = default;
};

class DeBruijnGraph {
 public:
  DeBruijnGraph(int alphabet_size, int node_depth, std::vector<Rational> weights);

  int alphabet_size() const { return d_; }
  int node_depth() const { return m_; }
  std::size_t node_count() const { return nodes_; }
  std::size_t edge_count() const { return weights_.size(); }

  std::size_t source(std::size_t e) const { return e / d_; }
  std::size_t target(std::size_t e) const { return e % nodes_; }
  std::size_t edge(std::size_t source, Symbol next) const {
    return source * d_ + next;
  }
  // The edge a·t[0..m-2] -> t, i.e. the preimage branch prepending `a`.
  std::size_t in_edge(std::size_t target, Symbol a) const {
    return a * nodes_ + target;
  }
  Symbol first_symbol(std::size_t e) const {
    return static_cast<Symbol>(e / nodes_);
  }
  Symbol last_symbol(std::size_t e) const { return static_cast<Symbol>(e % d_); }

  const Rational& weight(std::size_t e) const { return weights_[e]; }
  const std::vector<Rational>& weights() const { return weights_; }

  Word node_word(std::size_t n) const { return Word::from_index(n, m_, d_); }
  Word edge_word(std::size_t e) const { return Word::from_index(e, m_ + 1, d_); }

 private:
  int d_;
  int m_;
  std::size_t nodes_;
  std::vector<Rational> weights_;
};

// Eventually periodic point traced by walking `path` once and then `cycle`
// forever; both are edge sequences, each edge contributing its first symbol.
Point point_from_walk(const DeBruijnGraph& g, std::span<const std::size_t> path,
                      std::span<const std::size_t> cycle);

// Edge and node of a point at step i of its orbit.
std::size_t edge_at(const DeBruijnGraph& g, const Point& p, std::size_t step);
std::size_t node_of(const DeBruijnGraph& g, const Point& p);

}  // namespace ergo
