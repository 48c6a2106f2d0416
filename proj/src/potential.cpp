#include "ergo/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ergo/error.hpp"

namespace ergo {

LocallyConstantPotential::LocallyConstantPotential(int alphabet_size, int depth,
                                                   std::vector<Rational> values)
    : d_(alphabet_size), k_(depth), values_(std::move(values)) {
  check_alphabet(d_);
  if (k_ < 1) throw Error(ErrorKind::kInvalidInput, "potential depth must be >= 1");
  const std::size_t expected = ipow(static_cast<std::size_t>(d_), k_);
  if (values_.size() != expected) {
    throw Error(ErrorKind::kIncompleteTable,
                "depth-" + std::to_string(k_) + " table needs " +
                    std::to_string(expected) + " values, got " +
                    std::to_string(values_.size()));
  }
}

const Rational& LocallyConstantPotential::at(const Word& w) const {
  if (w.size() != static_cast<std::size_t>(k_) || w.alphabet_size() != d_) {
    throw Error(ErrorKind::kInvalidInput, "word '" + w.str() + "' is not a depth-" +
                                              std::to_string(k_) + " cylinder");
  }
  return values_[w.index()];
}

const Rational& LocallyConstantPotential::at(const Point& p) const {
  if (p.alphabet_size() != d_) throw Error(ErrorKind::kInvalidInput, "alphabet mismatch");
  return values_[word_index(p.prefix(k_), d_)];
}

LocallyConstantPotential LocallyConstantPotential::lifted(int extra) const {
  if (extra < 0) throw Error(ErrorKind::kInvalidInput, "cannot lower depth");
  const std::size_t tail = ipow(d_, extra);
  std::vector<Rational> v(values_.size() * tail);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i / tail];
  return LocallyConstantPotential(d_, k_ + extra, std::move(v));
}

namespace {

std::pair<Potential, Potential> common_depth(const Potential& a, const Potential& b) {
  if (a.alphabet_size() != b.alphabet_size()) {
    throw Error(ErrorKind::kInvalidInput, "alphabet mismatch");
  }
  const int k = std::max(a.depth(), b.depth());
  return {a.lifted(k - a.depth()), b.lifted(k - b.depth())};
}

}  // namespace

LocallyConstantPotential LocallyConstantPotential::operator+(
    const LocallyConstantPotential& other) const {
  auto [a, b] = common_depth(*this, other);
  std::vector<Rational> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return LocallyConstantPotential(a.alphabet_size(), a.depth(), std::move(v));
}

LocallyConstantPotential LocallyConstantPotential::operator-(
    const LocallyConstantPotential& other) const {
  auto [a, b] = common_depth(*this, other);
  std::vector<Rational> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
  return LocallyConstantPotential(a.alphabet_size(), a.depth(), std::move(v));
}

LocallyConstantPotential LocallyConstantPotential::plus_constant(const Rational& c) const {
  auto v = values_;
  for (auto& x : v) x += c;
  return LocallyConstantPotential(d_, k_, std::move(v));
}

Rational sup_distance(const Potential& a, const Potential& b) {
  auto diff = a - b;
  Rational best = 0;
  for (const auto& x : diff.values()) best = std::max<Rational>(best, abs(x));
  return best;
}

DeBruijnGraph build_de_bruijn(const Potential& weights) {
  return DeBruijnGraph(weights.alphabet_size(), weights.depth() - 1, weights.values());
}

DeBruijnGraph build_de_bruijn(int alphabet_size, int depth, const Potential& weights) {
  if (weights.alphabet_size() != alphabet_size || weights.depth() != depth) {
    throw Error(ErrorKind::kInvalidInput,
                "potential has d=" + std::to_string(weights.alphabet_size()) +
                    ", k=" + std::to_string(weights.depth()) + "; expected d=" +
                    std::to_string(alphabet_size) + ", k=" + std::to_string(depth));
  }
  return build_de_bruijn(weights);
}

Potential random_potential(int alphabet_size, int depth, std::mt19937_64& rng,
                           const Rational& low, const Rational& high,
                           int max_denominator) {
  check_alphabet(alphabet_size);
  if (high < low || max_denominator < 1) {
    throw Error(ErrorKind::kInvalidInput, "empty random value range");
  }
  const std::size_t n = ipow(alphabet_size, depth);
  std::vector<Rational> v(n);
  std::uniform_int_distribution<int> den_dist(1, max_denominator);
  for (auto& x : v) {
    const int q = den_dist(rng);
    // Integer numerators p with low <= p/q <= high.
    Rational lo = low * q, hi = high * q;
    mpz_class p_lo, p_hi;
    mpz_cdiv_q(p_lo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    mpz_fdiv_q(p_hi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
    if (p_hi < p_lo) {
      x = low;
      continue;
    }
    const long span = mpz_class(p_hi - p_lo).get_si();
    std::uniform_int_distribution<long> num_dist(0, span);
    x = Rational(p_lo + num_dist(rng), q);
    x.canonicalize();
  }
  return Potential(alphabet_size, depth, std::move(v));
}

Rational symbolic_distance(const Point& a, const Point& b, const Rational& lambda) {
  if (a == b) return 0;
  for (std::size_t i = 0;; ++i) {
    if (a.at(i) != b.at(i)) return pow(lambda, static_cast<unsigned>(i + 1));
  }
}

namespace {

void check_lambda(const Rational& lambda) {
  if (lambda <= 0 || lambda >= 1) {
    throw Error(ErrorKind::kInvalidInput, "lambda must lie in (0, 1)");
  }
}

}  // namespace

Potential project_distance_family(const HolderFamilySpec& spec, int depth) {
  if (spec.kind != FamilyKind::kDistanceToSet) {
    throw Error(ErrorKind::kInvalidInput, "not a distance-to-set family");
  }
  if (spec.targets.empty()) throw Error(ErrorKind::kInvalidInput, "empty target set");
  check_lambda(spec.lambda);
  const int d = spec.alphabet_size;
  check_alphabet(d);
  if (depth < 1) throw Error(ErrorKind::kInvalidInput, "depth must be >= 1");
  std::vector<std::vector<Symbol>> prefixes;
  for (const auto& t : spec.targets) {
    if (t.alphabet_size() != d) throw Error(ErrorKind::kInvalidInput, "alphabet mismatch");
    prefixes.push_back(t.prefix(depth));
  }
  std::vector<Rational> powers(depth + 1);
  for (int i = 0; i <= depth; ++i) powers[i] = pow(spec.lambda, i);
  const std::size_t n = ipow(d, depth);
  std::vector<Rational> v(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const Word u = Word::from_index(idx, depth, d);
    // The cylinder meets t iff t starts with u; otherwise every point of [u]
    // first disagrees with t where u does.
    std::size_t longest = 0;
    bool hit = false;
    for (const auto& t : prefixes) {
      std::size_t j = 0;
      while (j < t.size() && t[j] == u[j]) ++j;
      if (j == t.size()) {
        hit = true;
        break;
      }
      longest = std::max(longest, j);
    }
    v[idx] = hit ? Rational(0) : Rational(-powers[longest + 1]);
  }
  return Potential(d, depth, std::move(v));
}

Word leplaideur_word(int n) {
  if (n < 1) throw Error(ErrorKind::kInvalidInput, "leplaideur index must be >= 1");
  std::vector<Symbol> s;
  for (int i = 0; i < n; ++i) {
    s.push_back(0);
    s.push_back(1);
  }
  s.push_back(1);
  s.push_back(0);
  s.push_back(1);
  return Word(2, std::move(s));
}

HolderFamilySpec leplaideur_family(int n, const Rational& lambda) {
  HolderFamilySpec spec;
  spec.kind = FamilyKind::kDistanceToSet;
  spec.alphabet_size = 2;
  spec.lambda = lambda;
  spec.alpha = 1;
  Point z = Point::periodic(leplaideur_word(n));
  for (std::size_t i = 0; i < z.period().size(); ++i) {
    spec.targets.push_back(z);
    z = apply_shift(z);
  }
  spec.targets.push_back(Point::parse("(01)", 2));
  spec.targets.push_back(Point::parse("(10)", 2));
  return spec;
}

Potential leplaideur_member(int n, const Rational& lambda, int depth) {
  return project_distance_family(leplaideur_family(n, lambda), depth);
}

ErrorBound projection_error_bound(const HolderFamilySpec& spec, int depth) {
  if (spec.kind != FamilyKind::kDistanceToSet) return {0.0, Rational(0)};
  check_lambda(spec.lambda);
  if (spec.alpha <= 0 || spec.alpha > 1) {
    throw Error(ErrorKind::kInvalidInput, "Hölder exponent must lie in (0, 1]");
  }
  // Distance functions are 1-Lipschitz, so their alpha-seminorm is at most 1.
  const Rational base = pow(spec.lambda, static_cast<unsigned>(depth));
  ErrorBound out;
  out.value = std::pow(to_double(base), to_double(spec.alpha));
  const auto p = spec.alpha.get_num().get_ui();
  const auto q = spec.alpha.get_den().get_ui();
  Rational root;
  if (exact_root(pow(base, static_cast<unsigned>(p)), static_cast<unsigned>(q), root)) {
    out.exact = root;
    out.value = to_double(root);
  }
  return out;
}

namespace {

using nlohmann::json;

Rational rational_field(const json& j, const std::string& what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(j.dump(), 10));
  throw Error(ErrorKind::kParse, what + " must be a rational string such as \"-3/4\"");
}

int int_field(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number_integer()) {
    throw Error(ErrorKind::kParse, std::string("missing integer field '") + key + "'");
  }
  return obj[key].get<int>();
}

HolderFamilySpec parse_family(const json& f, int d) {
  if (!f.is_object() || !f.contains("kind") || !f["kind"].is_string()) {
    throw Error(ErrorKind::kParse, "family block needs a string 'kind'");
  }
  const auto kind = f["kind"].get<std::string>();
  HolderFamilySpec spec;
  spec.alphabet_size = d;
  if (f.contains("lambda")) spec.lambda = rational_field(f["lambda"], "lambda");
  if (f.contains("alpha")) spec.alpha = rational_field(f["alpha"], "alpha");
  if (kind == "explicit") {
    spec.kind = FamilyKind::kExplicitTable;
  } else if (kind == "distance") {
    spec.kind = FamilyKind::kDistanceToSet;
    if (!f.contains("targets") || !f["targets"].is_array()) {
      throw Error(ErrorKind::kParse, "distance family needs a 'targets' array");
    }
    for (const auto& t : f["targets"]) {
      if (!t.is_string()) throw Error(ErrorKind::kParse, "targets are \"pre(period)\" strings");
      spec.targets.push_back(Point::parse(t.get<std::string>(), d));
    }
  } else if (kind == "leplaideur") {
    spec = leplaideur_family(int_field(f, "n"), spec.lambda);
    if (f.contains("alpha")) spec.alpha = rational_field(f["alpha"], "alpha");
  } else if (kind == "random") {
    spec.kind = FamilyKind::kRandom;
    spec.seed = f.value("seed", std::uint64_t{0});
    spec.depth = int_field(f, "depth");
    if (f.contains("low")) spec.low = rational_field(f["low"], "low");
    if (f.contains("high")) spec.high = rational_field(f["high"], "high");
    spec.max_denominator = f.value("max_denominator", 97);
  } else {
    throw Error(ErrorKind::kParse, "unknown family kind '" + kind + "'");
  }
  if (spec.lambda <= 0 || spec.lambda >= 1) {
    throw Error(ErrorKind::kParse, "lambda must lie in (0, 1)");
  }
  return spec;
}

// Rejects repeated keys inside any object; nlohmann keeps the last silently.
json parse_strict(std::string_view text) {
  std::vector<std::set<std::string>> seen;
  std::string duplicate;
  json::parser_callback_t cb = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start: seen.emplace_back(); break;
      case json::parse_event_t::object_end: seen.pop_back(); break;
      case json::parse_event_t::key:
        if (!seen.back().insert(parsed.get<std::string>()).second && duplicate.empty()) {
          duplicate = parsed.get<std::string>();
        }
        break;
      default: break;
    }
    return true;
  };
  json j;
  try {
    j = json::parse(text.begin(), text.end(), cb);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed potential document: ") + e.what());
  }
  if (!duplicate.empty()) {
    throw Error(ErrorKind::kDuplicate, "duplicate key '" + duplicate + "'");
  }
  return j;
}

}  // namespace

Potential materialize(const HolderFamilySpec& spec, int depth) {
  switch (spec.kind) {
    case FamilyKind::kDistanceToSet: return project_distance_family(spec, depth);
    case FamilyKind::kRandom: {
      std::mt19937_64 rng(spec.seed);
      return random_potential(spec.alphabet_size, depth, rng, spec.low, spec.high,
                              spec.max_denominator);
    }
    case FamilyKind::kExplicitTable: break;
  }
  throw Error(ErrorKind::kInvalidInput, "explicit family has no generator; give values");
}

PotentialDocument parse_potential_document(std::string_view text) {
  const json j = parse_strict(text);
  if (!j.is_object()) throw Error(ErrorKind::kParse, "potential document must be an object");
  const int d = int_field(j, "alphabet_size");
  check_alphabet(d);
  PotentialDocument doc;
  if (j.contains("family")) doc.family = parse_family(j["family"], d);
  if (j.contains("values")) {
    const int k = int_field(j, "depth");
    if (k < 1) throw Error(ErrorKind::kParse, "depth must be >= 1");
    const auto& vals = j["values"];
    if (!vals.is_object()) throw Error(ErrorKind::kParse, "'values' must map words to rationals");
    const std::size_t n = ipow(d, k);
    std::vector<std::optional<Rational>> table(n);
    for (const auto& [key, val] : vals.items()) {
      const Word w = Word::parse(key, d);
      if (w.size() != static_cast<std::size_t>(k)) {
        throw Error(ErrorKind::kParse, "key '" + key + "' is not a depth-" +
                                           std::to_string(k) + " word");
      }
      table[w.index()] = rational_field(val, "value of '" + key + "'");
    }
    std::vector<Rational> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!table[i]) {
        throw Error(ErrorKind::kIncompleteTable,
                    "missing cylinder '" + Word::from_index(i, k, d).str() + "'");
      }
      v[i] = *table[i];
    }
    doc.table = Potential(d, k, std::move(v));
  } else if (!doc.family) {
    throw Error(ErrorKind::kParse, "document needs 'values' or a 'family' block");
  }
  return doc;
}

Potential load_potential(std::string_view text, std::optional<int> depth) {
  auto doc = parse_potential_document(text);
  if (doc.table) {
    if (depth && *depth > doc.table->depth()) return doc.table->lifted(*depth - doc.table->depth());
    return *doc.table;
  }
  const auto& f = *doc.family;
  if (f.kind == FamilyKind::kRandom) return materialize(f, depth.value_or(f.depth));
  if (!depth) {
    throw Error(ErrorKind::kPrecondition, "family documents need a projection depth");
  }
  return materialize(f, *depth);
}

Potential load_potential_file(const std::string& path, std::optional<int> depth) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_potential(ss.str(), depth);
}

std::string save_potential(const Potential& p) {
  nlohmann::ordered_json j;
  j["alphabet_size"] = p.alphabet_size();
  j["depth"] = p.depth();
  nlohmann::ordered_json vals = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < p.size(); ++i) {
    vals[Word::from_index(i, p.depth(), p.alphabet_size()).str()] = to_string(p[i]);
  }
  j["values"] = vals;
  return j.dump(2) + "\n";
}

}  // namespace ergo
