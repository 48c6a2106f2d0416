#include "ergo/twist.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "ergo/error.hpp"

namespace ergo {

TwistCertificate certify_twist(const KernelTable& W) {
  if (W.alphabet_size() != 2) {
    throw Error(ErrorKind::kNotImplemented, "twist certificates need a binary alphabet");
  }
  const std::size_t n = W.node_count();
  TwistCertificate cert;
  if (n < 2) {
    const Rational v = W(0, 0) + W(0, 0);
    cert.witness = TwistWitness{0, 0, 0, 0, v, v};
    return cert;
  }
  cert.holds = true;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t a2 = a + 1; a2 < n; ++a2) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t b2 = b + 1; b2 < n; ++b2) {
          ++cert.checked_pairs;
          Rational lhs = W(a, b) + W(a2, b2);
          Rational rhs = W(a, b2) + W(a2, b);
          if (lhs >= rhs && cert.holds) {
            cert.holds = false;
            cert.witness = TwistWitness{a, a2, b, b2, std::move(lhs), std::move(rhs)};
          }
        }
      }
    }
  }
  return cert;
}

namespace {

struct Connectors {
  std::vector<std::vector<std::size_t>> paths;
  bool truncated = false;
};

// All shortest J*-optimal edge paths from `start` into the cycle.
class ConnectorSearch {
 public:
  ConnectorSearch(const MaxPlusAnalysis& an, const CycleOrbit& cycle)
      : g_(an.graph), an_(an), cycle_(cycle), dist_(g_.node_count(), kFar) {
    for (auto e : cycle.edges) dist_[g_.source(e)] = 0;
    // Reverse breadth-first search over optimal edges.
    std::deque<std::size_t> queue;
    for (std::size_t v = 0; v < g_.node_count(); ++v) {
      if (dist_[v] == 0) queue.push_back(v);
    }
    while (!queue.empty()) {
      const auto t = queue.front();
      queue.pop_front();
      for (int a = 0; a < g_.alphabet_size(); ++a) {
        const auto e = g_.in_edge(t, static_cast<Symbol>(a));
        const auto s = g_.source(e);
        if (dist_[s] != kFar || !optimal(e)) continue;
        dist_[s] = dist_[t] + 1;
        queue.push_back(s);
      }
    }
  }

  Connectors from(std::size_t start) const {
    Connectors out;
    if (dist_[start] == kFar) {
      throw Error(ErrorKind::kInvariant, "w-node " + std::to_string(start) +
                                             " has no optimal path to the maximizing cycle");
    }
    std::vector<std::size_t> path;
    walk(start, path, out);
    return out;
  }

  std::vector<std::size_t> cycle_from(std::size_t node) const {
    const auto& edges = cycle_.edges;
    const auto it = std::find_if(edges.begin(), edges.end(),
                                 [&](std::size_t e) { return g_.source(e) == node; });
    std::vector<std::size_t> out(it, edges.end());
    out.insert(out.end(), edges.begin(), it);
    return out;
  }

 private:
  static constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();

  bool optimal(std::size_t e) const {
    return an_.R.values[e] + an_.J[g_.target(e)] == an_.J[g_.source(e)];
  }

  void walk(std::size_t v, std::vector<std::size_t>& path, Connectors& out) const {
    if (dist_[v] == 0) {
      if (out.paths.size() >= kConnectorCap) {
        out.truncated = true;
        return;
      }
      out.paths.push_back(path);
      return;
    }
    for (int a = 0; a < g_.alphabet_size(); ++a) {
      const auto e = g_.edge(v, static_cast<Symbol>(a));
      const auto t = g_.target(e);
      if (!optimal(e) || dist_[t] + 1 != dist_[v]) continue;
      path.push_back(e);
      walk(t, path, out);
      path.pop_back();
    }
  }

  const DeBruijnGraph& g_;
  const MaxPlusAnalysis& an_;
  const CycleOrbit& cycle_;
  std::vector<std::size_t> dist_;
};

Word x_word(const OptimalPairMap& map, std::size_t x) {
  return Word::from_index(x, map.node_depth, map.alphabet_size);
}

}  // namespace

std::vector<Point> OptimalPairMap::distinct_points() const {
  std::vector<Point> out;
  for (const auto& en : entries) {
    for (const auto& w : en.ws) out.push_back(w.point);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

OptimalPairMap optimal_pair_map(const DualSystem& sys) {
  const auto& dual = sys.dual;
  const auto& g = dual.graph;
  OptimalPairMap map;
  map.alphabet_size = g.alphabet_size();
  map.node_depth = g.node_depth();
  map.twist = certify_twist(sys.W);
  map.countable = goodness_check(sys).good;
  ConnectorSearch search(dual, dual.cs.maximizing_orbits.front());
  std::vector<std::vector<OptimalW>> expanded(sys.n);
  std::vector<bool> done(sys.n, false);
  map.degenerate = true;
  for (std::size_t x = 0; x < sys.n; ++x) {
    OptimalPairEntry en;
    en.x_node = x;
    const auto nodes = sys.optimal_w(x);
    if (nodes.size() != sys.n) map.degenerate = false;
    for (auto p : nodes) {
      if (!done[p]) {
        const auto con = search.from(p);
        map.connectors_truncated = map.connectors_truncated || con.truncated;
        for (const auto& path : con.paths) {
          const std::size_t entry = path.empty() ? p : g.target(path.back());
          const auto cyc = search.cycle_from(entry);
          std::vector<Symbol> word;
          for (auto e : cyc) word.push_back(g.first_symbol(e));
          expanded[p].push_back(OptimalW{p, path, Word(g.alphabet_size(), word),
                                         point_from_walk(g, path, cyc)});
        }
        done[p] = true;
      }
      en.ws.insert(en.ws.end(), expanded[p].begin(), expanded[p].end());
    }
    std::sort(en.ws.begin(), en.ws.end(),
              [](const OptimalW& a, const OptimalW& b) { return a.point < b.point; });
    const auto p = nodes.front();
    en.value = sys.W(p, x) - dual.V.values[p] - dual.J[p];
    map.entries.push_back(std::move(en));
  }
  return map;
}

std::optional<MonotonicityViolation> monotonicity_check(const OptimalPairMap& map) {
  const auto& en = map.entries;
  for (std::size_t q = 0; q < en.size(); ++q) {
    for (std::size_t q2 = q + 1; q2 < en.size(); ++q2) {
      if (en[q2].ws.back().point > en[q].ws.front().point) {
        return MonotonicityViolation{q, q2};
      }
    }
  }
  return std::nullopt;
}

TurningCut turning_cut(const DualSystem& sys, const OptimalPairMap& map) {
  if (map.alphabet_size != 2) {
    throw Error(ErrorKind::kNotImplemented, "turning points need a binary alphabet");
  }
  if (!map.twist.holds) throw Error(ErrorKind::kPrecondition, "twist condition fails");
  const std::size_t n = map.entries.size();
  const auto zero = Point::parse("(0)", 2);
  TurningCut tc{Cut{zero, zero, CutPosition::kLeftEnd}, std::nullopt, std::nullopt};
  for (const auto& en : map.entries) {
    const bool starts_with_one = std::any_of(en.ws.begin(), en.ws.end(),
                                             [](const OptimalW& w) { return w.point.at(0) == 1; });
    if (starts_with_one) tc.last_one_node = en.x_node;
  }
  const auto& R = sys.primal.R.values;
  const auto& g = sys.primal.graph;
  for (std::size_t x = 0; x < n; ++x) {
    if (R[g.in_edge(x, 1)] > 0) {
      tc.first_strict_node = x;
      break;
    }
  }
  const std::size_t after_last = tc.last_one_node ? *tc.last_one_node + 1 : 0;
  const std::size_t first_strict = tc.first_strict_node.value_or(n);
  if (after_last != first_strict) {
    throw Error(ErrorKind::kInvariant,
                "turning point routes disagree: optimal map gives cut before x-node " +
                    std::to_string(after_last) + ", error function before " +
                    std::to_string(first_strict));
  }
  if (after_last == n) {
    const auto p = Point::parse("(1)", 2);
    tc.cut = Cut{p, p, CutPosition::kRightEnd};
  } else if (after_last > 0) {
    tc.cut = Cut{Point::cylinder_sup(x_word(map, after_last - 1)),
                 Point::cylinder_inf(x_word(map, after_last)), CutPosition::kInterior};
  }
  return tc;
}

IntervalDecomposition interval_decomposition(const OptimalPairMap& map, const Cut& c) {
  IntervalDecomposition dec{{}, {}, c};
  auto points = [](const OptimalPairEntry& en) {
    std::vector<Point> out;
    for (const auto& w : en.ws) out.push_back(w.point);
    return out;
  };
  for (const auto& en : map.entries) {
    auto ws = points(en);
    if (!dec.intervals.empty() && dec.intervals.back().ws == ws) {
      dec.intervals.back().last_node = en.x_node;
      continue;
    }
    dec.intervals.push_back(Interval{en.x_node, en.x_node, Point::parse("(0)", 2),
                                     Point::parse("(0)", 2), std::move(ws)});
  }
  for (auto& iv : dec.intervals) {
    iv.left = Point::cylinder_inf(x_word(map, iv.first_node));
    iv.right = Point::cylinder_sup(x_word(map, iv.last_node));
  }
  for (std::size_t i = 0; i + 1 < dec.intervals.size(); ++i) {
    dec.boundaries.push_back(Cut{dec.intervals[i].right,
                                 Point::cylinder_inf(x_word(map, dec.intervals[i + 1].first_node)),
                                 CutPosition::kInterior});
  }
  for (const auto& p : map.distinct_points()) {
    std::optional<std::size_t> first, last;
    std::size_t count = 0;
    for (std::size_t i = 0; i < dec.intervals.size(); ++i) {
      const auto& ws = dec.intervals[i].ws;
      if (std::find(ws.begin(), ws.end(), p) == ws.end()) continue;
      if (!first) first = i;
      last = i;
      ++count;
    }
    if (count != *last - *first + 1) {
      throw Error(ErrorKind::kInvariant, "B(" + p.str() + ") is not an interval");
    }
  }
  return dec;
}

ChangeCharacterization change_characterization_check(const IntervalDecomposition& dec,
                                                     const Cut& c) {
  ChangeCharacterization out;
  out.holds = true;
  for (const auto& bd : dec.boundaries) {
    OrbitHit hit{bd};
    for (int side = 0; side < 2 && !hit.hit; ++side) {
      const Point& rep = side == 0 ? c.left_rep : c.right_rep;
      const std::size_t bound = rep.preperiod().size() + rep.period().size();
      for (std::size_t s = 0; s <= bound; ++s) {
        const auto q = apply_shift(rep, s);
        if (bd.left_rep <= q && q <= bd.right_rep) {
          hit.hit = true;
          hit.steps = s;
          hit.from_left = side == 0;
          break;
        }
      }
    }
    out.holds = out.holds && hit.hit;
    out.hits.push_back(std::move(hit));
  }
  return out;
}

FinitenessReport finiteness_report(const DualSystem& sys, const OptimalPairMap& map) {
  FinitenessReport rep;
  rep.distinct_optimal = map.distinct_points().size();
  rep.x_nodes = map.entries.size();
  rep.degenerate = map.degenerate;
  const auto good = goodness_check(sys);
  rep.good = good.good;
  rep.goodness_margin = good.margin;
  rep.graph_on_atoms = true;
  for (const auto& atom : sys.primal.cs.maximizing_orbits.front().atoms()) {
    if (map.entries[node_of(sys.primal.graph, atom)].ws.size() > 1) rep.graph_on_atoms = false;
  }
  return rep;
}

std::string describe(const IntervalDecomposition& dec) {
  std::ostringstream out;
  out << "turning cut " << dec.turning_cut.str() << "\n";
  for (const auto& iv : dec.intervals) {
    out << "[" << iv.left.str() << ", " << iv.right.str() << "] ->";
    for (const auto& w : iv.ws) out << " " << w.str();
    out << "\n";
  }
  out << dec.intervals.size() << " intervals\n";
  return out.str();
}

}  // namespace ergo
