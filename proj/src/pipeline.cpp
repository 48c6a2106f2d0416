#include "ergo/pipeline.hpp"

#include <json.hpp>
#include <sstream>

#include "ergo/error.hpp"
#include "ergo/genericity.hpp"
#include "ergo/maxplus.hpp"
#include "ergo/thermo.hpp"
#include "ergo/transport.hpp"
#include "ergo/twist.hpp"

namespace ergo {

using Json = nlohmann::ordered_json;

namespace {

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

// Word-keyed object over nodes or edges.
Json by_word(const std::vector<Rational>& v, int length, int d) {
  Json out = Json::object();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[Word::from_index(i, length, d).str()] = to_string(v[i]);
  }
  return out;
}

std::string node_label(std::size_t i, int length, int d) {
  const auto w = Word::from_index(i, length, d).str();
  return w.empty() ? "-" : w;
}

Json maxplus_json(const MaxPlusAnalysis& an) {
  const auto& g = an.graph;
  const int d = g.alphabet_size(), L = g.node_depth();
  Json out;
  out["m"] = to_string(an.cs.m);
  out["unique_maximizer"] = an.cs.unique_maximizer;
  Json orbits = Json::array();
  for (const auto& c : an.cs.maximizing_orbits) orbits.push_back(c.period.str());
  out["maximizing_orbits"] = orbits;
  out["orbits_truncated"] = an.cs.orbits_truncated;
  Json crit = Json::array();
  for (auto v : an.cs.critical_nodes()) crit.push_back(node_label(v, L, d));
  out["critical_nodes"] = crit;
  out["subaction"] = by_word(an.V.values, L, d);
  out["subaction_anchor"] = node_label(an.V.anchor, L, d);
  out["error_function"] = by_word(an.R.values, L + 1, d);
  out["deviation_infimum"] = by_word(an.J, L, d);
  return out;
}

std::string matrix_csv(const std::vector<Rational>& table, std::size_t n, int L, int d,
                       const char* corner) {
  std::ostringstream out;
  out << corner;
  for (std::size_t j = 0; j < n; ++j) out << ',' << node_label(j, L, d);
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out << node_label(i, L, d);
    for (std::size_t j = 0; j < n; ++j) out << ',' << to_string(table[i * n + j]);
    out << '\n';
  }
  return out.str();
}

bool stops(ErrorKind k) {
  return k == ErrorKind::kPrecondition || k == ErrorKind::kNotUnique ||
         k == ErrorKind::kNotImplemented;
}

}  // namespace

std::string kernel_csv(const KernelTable& W) {
  return matrix_csv(W.table(), W.node_count(), W.prefix_length(), W.alphabet_size(), "w\\x");
}

Report analyze_report(const Potential& A, const Point& base_point) {
  Report rep;
  std::ostringstream text;
  Json doc;
  doc["alphabet_size"] = A.alphabet_size();
  doc["depth"] = A.depth();
  const int d = A.alphabet_size(), L = A.depth() - 1;
  auto finish = [&]() {
    rep.text = text.str();
    rep.artifacts.insert(rep.artifacts.begin(), {"analysis.json", doc.dump(2) + "\n"});
    return rep;
  };
  try {
    const auto an = analyze_maxplus(A);
    doc["maxplus"] = maxplus_json(an);
    text << "m(A) = " << to_string(an.cs.m) << "\n";
    text << "maximizing orbits:";
    for (const auto& c : an.cs.maximizing_orbits) text << " (" << c.period.str() << ")";
    text << (an.cs.unique_maximizer ? "  unique" : "  not unique") << "\n";

    const auto sys = build_duality_report(A, base_point);
    Json dj;
    dj["base_point"] = base_point.str();
    dj["kernel"] = rationals(sys.W.table());
    dj["dual_potential"] = by_word(sys.Astar.values(), L + 1, d);
    dj["dual"] = maxplus_json(sys.dual);
    dj["gamma"] = to_string(sys.gamma);
    dj["b"] = rationals(sys.b);
    doc["duality"] = dj;
    rep.artifacts.push_back({"kernel.csv", kernel_csv(sys.W)});
    rep.artifacts.push_back({"b.csv", matrix_csv(sys.b, sys.n, L, d, "x\\w")});
    text << "m(A*) = " << to_string(sys.dual.cs.m) << "\n";
    text << "gamma = " << to_string(sys.gamma) << "\n";

    const auto map = optimal_pair_map(sys);
    Json tj;
    tj["holds"] = map.twist.holds;
    tj["checked_pairs"] = map.twist.checked_pairs;
    if (map.twist.witness) {
      const auto& w = *map.twist.witness;
      tj["witness"] = {{"a", node_label(w.a, L, d)},   {"a2", node_label(w.a2, L, d)},
                       {"b", node_label(w.b, L, d)},   {"b2", node_label(w.b2, L, d)},
                       {"lhs", to_string(w.lhs)},      {"rhs", to_string(w.rhs)}};
    }
    Json mj = Json::array();
    for (const auto& en : map.entries) {
      Json e;
      e["x"] = node_label(en.x_node, L, d);
      e["value"] = to_string(en.value);
      Json ws = Json::array();
      for (const auto& w : en.ws) ws.push_back(w.point.str());
      e["w"] = ws;
      mj.push_back(e);
    }
    tj["optimal_pairs"] = mj;
    tj["degenerate"] = map.degenerate;
    tj["countable"] = map.countable;
    const auto fin = finiteness_report(sys, map);
    tj["distinct_optimal_w"] = fin.distinct_optimal;
    tj["good"] = fin.good;
    if (fin.goodness_margin) tj["goodness_margin"] = to_string(*fin.goodness_margin);
    tj["graph_on_atoms"] = fin.graph_on_atoms;
    doc["twist"] = tj;
    text << "twist: " << (map.twist.holds ? "holds" : "fails") << "\n";
    text << "optimal w:";
    for (const auto& p : map.distinct_points()) text << " " << p.str();
    text << "  (" << fin.distinct_optimal << " distinct)\n";
    text << "good: " << (fin.good ? "yes" : "no");
    if (fin.goodness_margin) text << ", margin " << to_string(*fin.goodness_margin);
    text << "\n";
    if (!map.twist.holds) throw Error(ErrorKind::kPrecondition, "twist condition fails");

    if (d == 2) {
      const auto tc = turning_cut(sys, map);
      const auto dec = interval_decomposition(map, tc.cut);
      const auto cc = change_characterization_check(dec, tc.cut);
      tj["turning_cut"] = tc.cut.str();
      Json iv = Json::array();
      for (const auto& i : dec.intervals) {
        Json ws = Json::array();
        for (const auto& w : i.ws) ws.push_back(w.str());
        iv.push_back({{"left", i.left.str()}, {"right", i.right.str()}, {"w", ws}});
      }
      tj["intervals"] = iv;
      tj["change_characterization"] = cc.holds;
      doc["twist"] = tj;
      text << "turning cut: " << tc.cut.str() << "\n";
      text << "intervals: " << dec.intervals.size() << "\n";
    }

    const auto mus = maximizing_orbit_measures(sys);
    const auto cost = transport_cost(mus.x_side, mus.w_side, sys.W);
    const auto plan = solve_transport(cost);
    const auto slack = slackness_check(sys, mus, plan.plan);
    Json pj;
    Json xa = Json::array(), wa = Json::array();
    for (const auto& a : mus.x_side.atoms) xa.push_back(a.str());
    for (const auto& a : mus.w_side.atoms) wa.push_back(a.str());
    pj["x_atoms"] = xa;
    pj["w_atoms"] = wa;
    pj["cost"] = to_string(plan.cost);
    if (plan.lp_cost) pj["lp_cost"] = to_string(*plan.lp_cost);
    pj["lp_only"] = plan.lp_only;
    pj["optimal_permutations"] = plan.optimal_permutations;
    pj["dual_value"] = to_string(dual_value(sys, mus));
    pj["slackness"] = slack.holds;
    pj["graph_property"] = graph_property_check(plan.plan);
    doc["transport"] = pj;
    rep.artifacts.push_back({"plan.csv", plan_csv(plan.plan, mus)});
    text << "transport cost = " << to_string(plan.cost);
    if (!plan.optimal_permutations.empty()) {
      text << " via";
      const auto& perm = plan.optimal_permutations.front();
      for (std::size_t i = 0; i < perm.size(); ++i) {
        text << " " << mus.x_side.atoms[i].str() << "->" << mus.w_side.atoms[perm[i]].str();
      }
    }
    text << "\n";
  } catch (const Error& e) {
    if (!stops(e.kind())) throw;
    text << "stopped: " << e.what() << "\n";
    doc["stopped"] = e.what();
    rep.exit_code = exit_code(e.kind());
  }
  return finish();
}

Report verify_report(const Potential& A, const Point& base_point, const VerifyOptions& opts) {
  Report rep;
  std::ostringstream text;
  bool all = true;
  auto line = [&](const std::string& name, bool ok, const std::string& detail = "") {
    text << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) text << ": " << detail;
    text << "\n";
    all = all && ok;
  };
  auto note = [&](const std::string& s) { text << "NOTE " << s << "\n"; };
  const int d = A.alphabet_size(), L = A.depth() - 1;

  const auto sys = build_duality_report(A, base_point);
  line("calibration (A)",
       calibration_residual(sys.primal.graph, sys.primal.cs.m, sys.primal.V.values) == 0);
  line("calibration (A*)",
       calibration_residual(sys.dual.graph, sys.dual.cs.m, sys.dual.V.values) == 0);
  line("m(A) = m(A*)", sys.primal.cs.m == sys.dual.cs.m,
       to_string(sys.primal.cs.m) + " vs " + to_string(sys.dual.cs.m));

  auto W = sys.W;
  if (opts.corrupt_w) {
    W.at(0, 0) += 1;
    note("kernel entry W(" + node_label(0, L, d) + "," + node_label(0, L, d) + ") shifted by 1");
  }
  if (const auto v = fundamental_relation_check(sys, W)) {
    line(v->relation, false,
         "x=" + node_label(v->x_node, L, d) + " w=" + Word::from_index(v->w_edge, L + 1, d).str() +
             " lhs=" + to_string(v->lhs) + " rhs=" + to_string(v->rhs));
  } else {
    line("FR and FR1", true);
  }

  bool b_ok = true;
  std::string b_detail;
  for (std::size_t x = 0; x < sys.n && b_ok; ++x) {
    bool zero = false;
    for (std::size_t w = 0; w < sys.n; ++w) {
      if (sys.b_at(x, w) < 0) {
        b_ok = false;
        b_detail = "b(" + node_label(x, L, d) + "," + node_label(w, L, d) + ") < 0";
      }
      zero = zero || sys.b_at(x, w) == 0;
    }
    if (!zero && b_ok) {
      b_ok = false;
      b_detail = "no zero in row " + node_label(x, L, d);
    }
  }
  line("b >= 0 with a zero in every row", b_ok, b_detail);

  if (const auto v = backward_invariance_check(sys)) {
    line("backward invariance", false,
         "x=" + node_label(v->x_node, L, d) + " w=" + node_label(v->w_node, L, d));
  } else {
    line("backward invariance", true);
  }
  const auto rt = dual_roundtrip_check(A, base_point, default_base_point(d));
  std::string rt_detail;
  if (!rt.holds && rt.coboundary.witness) {
    rt_detail = "cycle (" + rt.coboundary.witness->period.str() + ") sums to " +
                to_string(rt.coboundary.witness_sum);
  }
  line("L*(L(A)) - A is a coboundary", rt.holds, rt_detail);

  const auto mus = maximizing_orbit_measures(sys);
  const auto plan = solve_transport(transport_cost(mus.x_side, mus.w_side, sys.W));
  const auto slack = slackness_check(sys, mus, plan.plan);
  line("complementary slackness", slack.holds);
  line("transport cost = dual value", plan.cost == dual_value(sys, mus),
       to_string(plan.cost) + " vs " + to_string(dual_value(sys, mus)));

  if (d != 2) {
    note("twist checks skipped: alphabet size " + std::to_string(d));
  } else {
    const auto map = optimal_pair_map(sys);
    if (!map.twist.holds) {
      note(map.degenerate ? "twist degenerate: every w optimal for every x"
                          : "twist condition fails; twist checks skipped");
    } else {
      line("optimal pairs monotone", !monotonicity_check(map));
      try {
        const auto tc = turning_cut(sys, map);
        line("turning cut " + tc.cut.str() + " (both routes)", true);
        const auto dec = interval_decomposition(map, tc.cut);
        line("B(w) sets are intervals", true);
        line("interval boundaries on the orbit of the cut",
             change_characterization_check(dec, tc.cut).holds);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kInvariant) throw;
        line("twist combinatorics", false, e.what());
      }
      line("graph property of the optimal plan", graph_property_check(plan.plan));
    }
  }
  rep.text = text.str();
  rep.exit_code = all ? 0 : exit_code(ErrorKind::kInvariant);
  return rep;
}

Report scan_report(const Potential& A, const std::vector<double>& betas) {
  const auto scan = beta_scan(A, betas);
  Report rep;
  rep.text = scan.csv();
  rep.artifacts.push_back({"scan.csv", rep.text});
  return rep;
}

Report generic_report(std::uint64_t seed, std::size_t samples, int depth) {
  const auto suite = sample_generic_suite(seed, samples, depth);
  Report rep;
  rep.text = suite.summary();
  rep.artifacts.push_back({"generic.csv", suite.csv()});
  rep.artifacts.push_back({"generic_summary.txt", suite.summary()});
  return rep;
}

}  // namespace ergo
