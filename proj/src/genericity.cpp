#include "ergo/genericity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ergo/duality.hpp"
#include "ergo/error.hpp"
#include "ergo/maxplus.hpp"

namespace ergo {

Potential perturb_to_unique(const Potential& A, const Rational& eps) {
  if (eps < 0) throw Error(ErrorKind::kInvalidInput, "perturbation must be nonnegative");
  const auto g = build_de_bruijn(A);
  const auto cs = max_mean_cycle(g);
  const auto& cycle = cs.maximizing_orbits.front();
  std::vector<bool> keep(A.size(), false);
  for (auto e : cycle.edges) keep[e] = true;
  auto v = A.values();
  for (std::size_t e = 0; e < v.size(); ++e) {
    if (!keep[e]) v[e] -= eps;
  }
  return Potential(A.alphabet_size(), A.depth(), std::move(v));
}

namespace {

bool aubry_equals_mather(const MaxPlusAnalysis& an) {
  auto aubry = aubry_set(an.graph, an.cs);
  std::vector<std::size_t> mather;
  for (const auto& c : an.cs.maximizing_orbits) {
    auto nodes = c.nodes(an.graph);
    mather.insert(mather.end(), nodes.begin(), nodes.end());
  }
  std::sort(mather.begin(), mather.end());
  mather.erase(std::unique(mather.begin(), mather.end()), mather.end());
  return aubry == mather;
}

}  // namespace

GenericSuiteReport sample_generic_suite(std::uint64_t seed, std::size_t count, int depth,
                                        const Rational& eps) {
  GenericSuiteReport rep;
  rep.seed = seed;
  rep.depth = depth;
  for (std::size_t i = 0; i < count; ++i) {
    GenericSample s;
    s.index = i;
    std::mt19937_64 rng(seed + i);
    const auto raw = random_potential(2, depth, rng);
    s.unique_before = max_mean_cycle(build_de_bruijn(raw)).unique_maximizer;
    const auto A = perturb_to_unique(raw, eps);
    try {
      const auto sys = build_duality_report(A);
      s.unique = sys.primal.cs.unique_maximizer;
      s.unique_dual = sys.dual.cs.unique_maximizer;
      s.aubry_is_mather = aubry_equals_mather(sys.primal);
      s.aubry_is_mather_dual = aubry_equals_mather(sys.dual);
      s.good = goodness_check(sys).good;
      s.good_dual = goodness_against_cycle(sys.primal.graph, sys.primal.R,
                                           sys.primal.cs.maximizing_orbits.front())
                        .good;
    } catch (const Error& e) {
      s.error = e.what();
    }
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

std::size_t GenericSuiteReport::count(bool GenericSample::*flag) const {
  return static_cast<std::size_t>(std::count_if(
      samples.begin(), samples.end(), [&](const GenericSample& s) { return s.*flag; }));
}

std::string GenericSuiteReport::csv() const {
  std::ostringstream out;
  out << "index,unique_before,unique,unique_dual,aubry_is_mather,aubry_is_mather_dual,good,"
         "good_dual,error\n";
  for (const auto& s : samples) {
    out << s.index << ',' << s.unique_before << ',' << s.unique << ',' << s.unique_dual << ','
        << s.aubry_is_mather << ',' << s.aubry_is_mather_dual << ',' << s.good << ','
        << s.good_dual << ',' << s.error.value_or("") << '\n';
  }
  return out.str();
}

std::string GenericSuiteReport::summary() const {
  const auto n = samples.size();
  std::ostringstream out;
  out << "seed " << seed << ", depth " << depth << ", " << n << " samples\n";
  auto line = [&](const char* name, bool GenericSample::*flag) {
    out << "  " << name << ": " << count(flag) << "/" << n << "\n";
  };
  line("unique before perturbation", &GenericSample::unique_before);
  line("unique", &GenericSample::unique);
  line("unique (dual)", &GenericSample::unique_dual);
  line("Aubry = Mather", &GenericSample::aubry_is_mather);
  line("Aubry = Mather (dual)", &GenericSample::aubry_is_mather_dual);
  line("good", &GenericSample::good);
  line("good (dual)", &GenericSample::good_dual);
  return out.str();
}

bool lipschitz_check(const Potential& A, const Potential& B) {
  const auto ma = max_cycle_mean(build_de_bruijn(A));
  const auto mb = max_cycle_mean(build_de_bruijn(B));
  return abs(ma - mb) <= sup_distance(A, B);
}

namespace {

// osc[l] = max |A(e) - A(e')| over edges agreeing on their first l symbols.
std::vector<Rational> oscillations(const Potential& A) {
  const int d = A.alphabet_size(), k = A.depth();
  std::vector<Rational> osc(k + 1, Rational(0));
  for (int l = 0; l < k; ++l) {
    const std::size_t block = ipow(d, k - l);
    for (std::size_t start = 0; start < A.size(); start += block) {
      const auto lo = std::min_element(A.values().begin() + start,
                                       A.values().begin() + start + block);
      const auto hi = std::max_element(A.values().begin() + start,
                                       A.values().begin() + start + block);
      osc[l] = std::max<Rational>(osc[l], *hi - *lo);
    }
  }
  return osc;
}

int common_prefix(std::size_t u, std::size_t v, int len, int d) {
  const auto a = Word::from_index(u, len, d), b = Word::from_index(v, len, d);
  int j = 0;
  while (j < len && a[j] == b[j]) ++j;
  return j;
}

}  // namespace

OscillationReport subaction_oscillation_check(const Potential& A,
                                              const std::vector<Rational>& V) {
  const int d = A.alphabet_size(), L = A.depth() - 1;
  const auto osc = oscillations(A);
  std::vector<Rational> tail(L + 2, Rational(0));  // tail[j] = sum_{l=j+1}^{L} osc[l]
  for (int j = L - 1; j >= 0; --j) tail[j] = tail[j + 1] + osc[j + 1];
  OscillationReport rep;
  rep.holds = true;
  bool first = true;
  for (std::size_t u = 0; u < V.size(); ++u) {
    for (std::size_t v = u + 1; v < V.size(); ++v) {
      const Rational slack = tail[common_prefix(u, v, L, d)] - abs(V[u] - V[v]);
      if (first || slack < rep.worst_slack) rep.worst_slack = slack;
      first = false;
      if (slack < 0) rep.holds = false;
    }
  }
  return rep;
}

bool subaction_holder_check(const Potential& A, const std::vector<Rational>& V, double lambda,
                            double alpha) {
  const int d = A.alphabet_size(), L = A.depth() - 1;
  const auto osc = oscillations(A);
  // Edges agreeing on exactly l symbols are lambda^(l+1) apart.
  double holder = 0.0;
  for (int l = 0; l < A.depth(); ++l) {
    holder = std::max(holder, to_double(osc[l]) / std::pow(lambda, alpha * (l + 1)));
  }
  const double la = std::pow(lambda, alpha);
  const double constant = la / (1.0 - la) * holder;
  for (std::size_t u = 0; u < V.size(); ++u) {
    for (std::size_t v = u + 1; v < V.size(); ++v) {
      const int j = common_prefix(u, v, L, d);
      const double dist = std::pow(lambda, alpha * (j + 1));
      if (to_double(abs(V[u] - V[v])) > constant * dist * (1 + 1e-12)) return false;
    }
  }
  return true;
}

}  // namespace ergo
