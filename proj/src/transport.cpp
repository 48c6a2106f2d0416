#include "ergo/transport.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ergo/error.hpp"
#include "ergo/lp.hpp"

namespace ergo {

OrbitMeasures maximizing_orbit_measures(const DualSystem& sys) {
  if (!sys.primal.cs.unique_maximizer || !sys.dual.cs.unique_maximizer) {
    throw Error(ErrorKind::kNotUnique, "maximizing measure not unique");
  }
  return OrbitMeasures{{sys.primal.cs.maximizing_orbits.front().atoms()},
                       {sys.dual.cs.maximizing_orbits.front().atoms()}};
}

Matrix transport_cost(const OrbitMeasure& mu, const OrbitMeasure& mu_star, const KernelTable& W) {
  const auto len = static_cast<std::size_t>(W.prefix_length());
  const int d = W.alphabet_size();
  Matrix c(mu.atoms.size(), std::vector<Rational>(mu_star.atoms.size()));
  for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
    const auto x = word_index(mu.atoms[i].prefix(len), d);
    for (std::size_t j = 0; j < mu_star.atoms.size(); ++j) {
      c[i][j] = -W(word_index(mu_star.atoms[j].prefix(len), d), x);
    }
  }
  return c;
}

Rational plan_cost(const Matrix& plan, const Matrix& cost) {
  Rational v = 0;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    for (std::size_t j = 0; j < plan[i].size(); ++j) v += plan[i][j] * cost[i][j];
  }
  return v;
}

namespace {

Rational lp_optimum(const Matrix& cost, Matrix* plan) {
  const std::size_t p = cost.size(), q = cost.front().size();
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<Rational> row(p * q, Rational(0));
    for (std::size_t j = 0; j < q; ++j) row[i * q + j] = 1;
    A.push_back(std::move(row));
    b.emplace_back(1, static_cast<long>(p));
  }
  for (std::size_t j = 0; j < q; ++j) {
    std::vector<Rational> row(p * q, Rational(0));
    for (std::size_t i = 0; i < p; ++i) row[i * q + j] = 1;
    A.push_back(std::move(row));
    b.emplace_back(1, static_cast<long>(q));
  }
  std::vector<Rational> c;
  for (const auto& row : cost) c.insert(c.end(), row.begin(), row.end());
  const auto res = solve_lp(A, b, c);
  if (res.status != LpStatus::kOptimal) {
    throw Error(ErrorKind::kInvariant, "transport LP has no optimum");
  }
  if (plan) {
    plan->assign(p, std::vector<Rational>(q));
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < q; ++j) (*plan)[i][j] = res.x[i * q + j];
    }
  }
  return res.value;
}

}  // namespace

TransportPlan solve_transport(const Matrix& cost) {
  if (cost.empty() || cost.front().empty()) {
    throw Error(ErrorKind::kInvalidInput, "transport needs nonempty marginals");
  }
  const std::size_t p = cost.size(), q = cost.front().size();
  TransportPlan tp;
  if (p != q || p > kMaxPermutationAtoms) {
    tp.lp_only = true;
    tp.lp_cost = lp_optimum(cost, &tp.plan);
    tp.cost = *tp.lp_cost;
    return tp;
  }
  std::vector<std::size_t> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<Rational> best;
  do {
    Rational total = 0;
    for (std::size_t i = 0; i < p; ++i) total += cost[i][perm[i]];
    if (!best || total < *best) {
      best = total;
      tp.optimal_permutations.clear();
    }
    if (total == *best) tp.optimal_permutations.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  const Rational w(1, static_cast<long>(p));
  tp.cost = *best * w;
  tp.plan.assign(p, std::vector<Rational>(p, Rational(0)));
  for (std::size_t i = 0; i < p; ++i) tp.plan[i][tp.optimal_permutations.front()[i]] = w;
  tp.lp_cost = lp_optimum(cost, nullptr);
  if (*tp.lp_cost != tp.cost) {
    throw Error(ErrorKind::kInvariant, "permutation optimum " + to_string(tp.cost) +
                                           " differs from LP optimum " + to_string(*tp.lp_cost));
  }
  return tp;
}

TransportPlan solve_transport(const OrbitMeasure& mu, const OrbitMeasure& mu_star,
                              const KernelTable& W) {
  return solve_transport(transport_cost(mu, mu_star, W));
}

SlacknessReport slackness_check(const DualSystem& sys, const OrbitMeasures& mus,
                                const Matrix& plan) {
  const auto len = static_cast<std::size_t>(sys.W.prefix_length());
  const int d = sys.W.alphabet_size();
  SlacknessReport rep;
  rep.holds = true;
  const auto& xs = mus.x_side.atoms;
  const auto& ws = mus.w_side.atoms;
  rep.b.assign(xs.size(), std::vector<Rational>(ws.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto x = word_index(xs[i].prefix(len), d);
    for (std::size_t j = 0; j < ws.size(); ++j) {
      const auto& b = rep.b[i][j] = sys.b_at(x, word_index(ws[j].prefix(len), d));
      if (b < 0) {
        rep.violations.push_back({i, j, b, true});
      } else if (b > 0 && plan[i][j] != 0) {
        rep.violations.push_back({i, j, b, false});
      }
    }
  }
  rep.holds = rep.violations.empty();
  return rep;
}

bool graph_property_check(const Matrix& plan) {
  if (plan.empty() || plan.size() != plan.front().size()) return false;
  std::vector<int> col(plan.size(), 0);
  for (const auto& row : plan) {
    int count = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) {
        ++count;
        ++col[j];
      }
    }
    if (count != 1) return false;
  }
  return std::all_of(col.begin(), col.end(), [](int c) { return c == 1; });
}

Rational dual_value(const DualSystem& sys, const OrbitMeasures& mus) {
  const auto len = static_cast<std::size_t>(sys.W.prefix_length());
  const int d = sys.W.alphabet_size();
  Rational sx = 0, sw = 0;
  for (const auto& a : mus.x_side.atoms) sx += sys.primal.V.values[word_index(a.prefix(len), d)];
  for (const auto& a : mus.w_side.atoms) sw += sys.dual.V.values[word_index(a.prefix(len), d)];
  return -sx * mus.x_side.weight() - sw * mus.w_side.weight() - sys.gamma;
}

std::string plan_csv(const Matrix& plan, const OrbitMeasures& mus) {
  std::ostringstream out;
  out << "x\\w";
  for (const auto& w : mus.w_side.atoms) out << ',' << w.str();
  out << '\n';
  for (std::size_t i = 0; i < plan.size(); ++i) {
    out << mus.x_side.atoms[i].str();
    for (const auto& v : plan[i]) out << ',' << to_string(v);
    out << '\n';
  }
  return out.str();
}

}  // namespace ergo
