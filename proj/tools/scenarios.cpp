#include "scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "manifest_data.hpp"
#include "mobius/error.hpp"
#include "mobius/hyperbolicity.hpp"
#include "mobius/limit_sets.hpp"
#include "mobius/loci.hpp"
#include "mobius/tuple_io.hpp"

namespace mobius::tools {

namespace {

using Clock = std::chrono::steady_clock;
using Values = std::map<std::string, Measured>;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Tuple tuple_of(const Json& entry) {
  std::string text;
  for (const auto& line : entry.at("tuple")) text += line.get<std::string>() + "\n";
  return parse_tuple(text);
}

RationalMatrix rm(const char* a, const char* b, const char* c, const char* d) {
  return {*parse_rational(a), *parse_rational(b), *parse_rational(c), *parse_rational(d)};
}

bool at_infinity(const std::optional<BoundaryPoint>& p) { return p && p->is_infinity(1e-9); }

double arc_lower_error(const Arc& a, double x) { return angular_distance(a.end_point(), BoundaryPoint::from_real(x)); }

double arc_upper_error(const Arc& a, double x) { return angular_distance(a.start_point(), BoundaryPoint::from_real(x)); }

std::vector<double> reals_in(const LimitSetApprox& ls, double lo, double hi) {
  std::vector<double> xs;
  for (const auto& p : ls.points) {
    const double x = p.point.to_real();
    if (x >= lo && x <= hi) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

SvgScene::Layer layer(const ArcUnion& u, const char* color, std::string label) {
  return {u, color, std::move(label)};
}

void axes(SvgScene& s, const Tuple& t) {
  static const char* colors[] = {"#c0392b", "#2471a3", "#229954", "#7d3c98", "#b9770e"};
  for (std::size_t i = 0; i < t.size(); ++i) {
    s.axes.push_back({t.maps[i], colors[i % 5], "g" + std::to_string(i + 1)});
  }
}

Values run_f0(const Json& entry, SvgScene& fig) {
  const auto t0 = Clock::now();
  const Tuple t = tuple_of(entry);
  Values v;
  const LociReport r = classify(t, preset("quick"));
  v["exact_no_elliptic_or_identity"] = r.affine && r.affine->status == AffineStatus::Certified;
  const auto& w = r.semidiscrete.witness;
  const bool valid = w && revalidate(t.maps, *w);
  v["identity_approach_distance"] = valid ? w->distance : INFINITY;
  v["identity_approach_length"] = valid ? static_cast<double>(w->word.size()) : INFINITY;
  v["elementary_fixed_infinity"] =
      r.elementary.kind == ElementaryKind::CommonBoundaryFixed && at_infinity(r.elementary.point);
  v["inference_witness_point"] =
      r.semidiscrete.inference ? r.semidiscrete.inference->backward_point.point.to_real() : NAN;
  v["in_P"] = r.in_P.kind == PStatus::Kind::Yes;
  v["multicone_touch_at_infinity"] = r.in_H.kind == HStatus::Kind::CertifiedNo && r.in_H.negative &&
                                     r.in_H.negative->kind == NegativeCertificate::Kind::LimitSetIntersection &&
                                     at_infinity(r.in_H.negative->point);
  v["min_norm_root_L9"] = lower_spectral_estimate(t.maps, 9).per_length[8].second;
  v["consistent"] = sdc_crosscheck(r).consistent;
  v["runtime_seconds"] = seconds_since(t0);

  fig.title = "f0: axes of g1, g2, g3; forward hull of (g1, g2)";
  const std::vector<MoebiusMap> pair{t.maps[0], t.maps[1]};
  fig.layers.push_back(layer(forward_limit_set(pair, 10, 0.02).hull, "#f5b041", "forward limit set of (g1, g2)"));
  fig.markers.push_back({BoundaryPoint::from_real(1.0), "black", "repelling point of g3"});
  axes(fig, t);
  return v;
}

Values run_hump(const Json& entry, SvgScene& fig) {
  const Tuple t = tuple_of(entry);
  Values v;
  const auto rank = rank_one_test(t.maps);
  v["rank_one_interval"] = rank.has_value();
  const MulticoneResult mc = find_multicone(t.maps);
  v["multicone_touch_at_infinity"] = !mc.ok() && mc.failure->kind == MulticoneFailureKind::LimitSetsTouch &&
                                     at_infinity(mc.failure->point);
  SemidiscreteConfig sc;
  sc.max_len = 12;
  v["no_identity_approach"] = !refute_semidiscrete(t, sc).witness.has_value();
  const ExactAffine f(2, 0), g(Rational(1, 2), 1);
  const ExactAffine h3 = translation_accumulation(f, g, 3);
  v["translation_n3"] = h3.lambda() == 1 ? to_string(h3.kappa()) : std::string("not a translation");
  v["translation_limit_n60"] = translation_accumulation(f, g, 60).kappa().get_d();
  v["no_inference"] = !nonsd_search(t.maps, 10, 0.02, true).has_value();
  v["in_H_certified_no"] = classify(t, preset("quick")).in_H.kind == HStatus::Kind::CertifiedNo;

  fig.title = "hump pair: rank-one interval and axes";
  if (rank) fig.layers.push_back(layer(ArcUnion{{rank->interval}}, "#58d68d", "invariant interval " + to_string(rank->interval)));
  axes(fig, t);
  return v;
}

Values run_limitset(const Json& entry, SvgScene& fig) {
  const auto t0 = Clock::now();
  const Tuple t = tuple_of(entry);
  Values v;
  const LimitSetApprox ls = forward_limit_set(t.maps, 14, 0.02);
  const bool single = ls.hull.arcs.size() == 1 && !ls.hull.arcs[0].point_like && !ls.hull.is_full();
  v["single_arc"] = single;
  v["lower_endpoint_error_rad"] = single ? arc_lower_error(ls.hull.arcs[0], 2.0) : INFINITY;
  v["upper_endpoint_error_rad"] = single ? arc_upper_error(ls.hull.arcs[0], kInf) : INFINITY;
  v["runtime_seconds"] = seconds_since(t0);
  v["closed_form_lower"] = to_string(affine_limit_interval(ExactAffine(2, 0), ExactAffine(Rational(1, 2), 1)).lower);

  fig.title = "forward limit set of (2z, z/2 + 1), depth 14";
  fig.layers.push_back(layer(ls.hull, "#f5b041", "hull"));
  fig.markers.push_back({BoundaryPoint::from_real(2.0), "black", "2"});
  axes(fig, t);
  return v;
}

Values run_ls_inter(const Json& entry, SvgScene& fig) {
  const auto t0 = Clock::now();
  const Tuple full = tuple_of(entry);
  const Tuple holed = parse_tuple("1 0 0 2\n1 2 0 3\n");
  Values v;
  v["full_branch_predicate"] = ls_inter_full_interval(full.maps[0], full.maps[1], 0.0, 1.0);
  std::vector<double> xs = reals_in(forward_limit_set(full.maps, 12, 0.01), 0.0, 1.0);
  xs.insert(xs.begin(), 0.0);
  xs.push_back(1.0);
  double max_gap = 0.0;
  for (std::size_t k = 1; k < xs.size(); ++k) max_gap = std::max(max_gap, xs[k] - xs[k - 1]);
  v["full_branch_max_gap"] = max_gap;

  v["gap_branch_predicate_false"] = !ls_inter_full_interval(holed.maps[0], holed.maps[1], 0.0, 1.0);
  const LimitSetApprox hl = forward_limit_set(holed.maps, 12, 0.01);
  const std::vector<double> ys = reals_in(hl, 0.0, 1.0);
  const bool empty_inside = std::none_of(ys.begin(), ys.end(), [](double y) { return y > 0.55 && y < 0.62; });
  const bool both_sides = std::any_of(ys.begin(), ys.end(), [](double y) { return y <= 0.55; }) &&
                          std::any_of(ys.begin(), ys.end(), [](double y) { return y >= 0.62; });
  v["gap_branch_hole_covers_055_062"] = empty_inside && both_sides;

  const RationalMatrix f = rm("1", "0", "0", "2"), g = rm("1", "1", "0", "2");
  const bool equal = *g.apply(0) == *f.apply(1);
  v["boundary_equality_counts_as_full"] = equal && ls_inter_full_interval(f, g, Rational(0), Rational(1));
  v["runtime_seconds"] = seconds_since(t0);

  fig.title = "forward limit sets of {z/2, (z+1)/2} and {z/2, (z+2)/3}";
  fig.layers.push_back(layer(forward_limit_set(full.maps, 12, 0.01).hull, "#f5b041", "full interval [0, 1]"));
  fig.layers.push_back(layer(hl.hull, "#5dade2", "hull with a hole near (1/2, 2/3)"));
  return v;
}

Values run_jorgensen(const Json& entry, SvgScene& fig) {
  const Tuple t = tuple_of(entry);
  const Tuple ap = parse_tuple("10 12 3 10\n5 -3 -3 5\n");
  Values v;
  v["hump_value"] = to_string(jorgensen_exact((*t.exact)[0], (*t.exact)[1]));
  v["hump_not_satisfied"] = !jorgensen_check(t.maps[0], t.maps[1]).satisfied;
  v["hump_rank_one"] = rank_one_test(t.maps).has_value();
  v["antiparallel_no_rank_one"] = !rank_one_test(ap.maps).has_value();
  v["diag_parabolic_commutator_value"] = to_string(jorgensen_exact(rm("4", "0", "0", "1"), rm("1", "1", "0", "1")));
  v["identity_value"] = to_string(jorgensen_exact(rm("1", "0", "0", "1"), rm("2", "1", "1", "1")));

  fig.title = "Jorgensen: hump pair (rank one) and antiparallel pair";
  axes(fig, t);
  if (auto r = rank_one_test(t.maps)) fig.layers.push_back(layer(ArcUnion{{r->interval}}, "#58d68d", "rank-one interval"));
  return v;
}

Values run_antiparallel(const Json& entry, SvgScene& fig) {
  const Tuple t = tuple_of(entry);
  Values v;
  v["antiparallel_pair"] = antiparallel_check(t.maps[0], t.maps[1]);
  const Tuple par = parse_tuple("2 0 0 1\n7 -6 3 -2\n");
  v["parallel_pair_false"] = !antiparallel_check(par.maps[0], par.maps[1]);
  bool rejected = false;
  try {
    antiparallel_check(MoebiusMap::affine(2, 0), MoebiusMap::affine(3, 0));
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::CommonFixedPoint;
  }
  v["common_fixed_point_rejected"] = rejected;

  fig.title = "antiparallel pair: axes";
  axes(fig, t);
  return v;
}

bool closures_meet(const Arc& a, const Arc& b) {
  return a.closure_contains(b.start_point()) || a.closure_contains(b.end_point()) ||
         b.closure_contains(a.start_point()) || b.closure_contains(a.end_point());
}

Values run_cores(const Json& entry, SvgScene& fig) {
  const Tuple uh = tuple_of(entry);
  const Tuple hump = parse_tuple("2 0 0 1\n1 2 0 2\n");
  const Tuple f0 = parse_tuple("2 1 0 1\n1 0 0 3\n5 -4 0 1\n");
  Values v;
  const CoreSet cu = compute_cores(forward_limit_set(uh.maps, 12, 0.02), backward_limit_set(uh.maps, 12, 0.02));
  bool disjoint = true;
  for (const Arc& a : cu.forward.arcs) {
    for (const Arc& b : cu.backward.arcs) disjoint = disjoint && !closures_meet(a, b);
  }
  v["uh_cores_disjoint"] = disjoint;

  const CoreSet ch = compute_cores(forward_limit_set(hump.maps, 12, 0.02), backward_limit_set(hump.maps, 12, 0.02));
  v["hump_forward_core_lower_error_rad"] =
      ch.forward.arcs.size() == 1 ? arc_lower_error(ch.forward.arcs[0], 2.0) : INFINITY;
  // Sample the forward core; any point also in the backward core must sit at infinity.
  bool only_inf = !ch.forward.empty();
  for (const Arc& a : ch.forward.arcs) {
    for (int k = 0; k <= 20000; ++k) {
      const BoundaryPoint p(a.start + a.length * k / 20000.0);
      if (ch.backward.closure_contains(p) && !p.is_infinity(0.02)) only_inf = false;
    }
  }
  v["hump_cores_meet_only_at_infinity"] = only_inf;
  v["f0_forward_hull_whole_circle"] = forward_limit_set(f0.maps, 10, 0.02).hull.is_full();

  fig.title = "cores of (4z, (5z+4)/(4z+5))";
  fig.layers.push_back(layer(cu.forward, "#f5b041", "forward core"));
  fig.layers.push_back(layer(cu.backward, "#5dade2", "backward core"));
  axes(fig, uh);
  return v;
}

std::string show(const Measured& m) {
  if (auto b = std::get_if<bool>(&m)) return *b ? "true" : "false";
  if (auto s = std::get_if<std::string>(&m)) return *s;
  std::ostringstream out;
  out << std::setprecision(10) << std::get<double>(m);
  return out.str();
}

CheckResult grade(const Json& check, const Values& values) {
  CheckResult c;
  c.id = check.at("id").get<std::string>();
  c.op = check.at("op").get<std::string>();
  c.basis = check.value("basis", "");
  auto it = values.find(c.id);
  if (it == values.end()) {
    c.measured = "missing";
    return c;
  }
  const Measured& m = it->second;
  c.measured = show(m);
  if (c.op == "true") {
    c.expected = "true";
    c.pass = std::holds_alternative<bool>(m) && std::get<bool>(m);
  } else if (c.op == "eq_exact") {
    c.expected = check.at("value").get<std::string>();
    c.pass = std::holds_alternative<std::string>(m) && std::get<std::string>(m) == c.expected;
  } else if (std::holds_alternative<double>(m)) {
    const double x = std::get<double>(m), target = check.at("value").get<double>();
    std::ostringstream e;
    e << std::setprecision(10) << target;
    if (c.op == "le") {
      c.pass = x <= target;
      c.expected = "<= " + e.str();
    } else if (c.op == "ge") {
      c.pass = x >= target;
      c.expected = ">= " + e.str();
    } else if (c.op == "near") {
      const double tol = check.at("tol").get<double>();
      c.pass = std::abs(x - target) <= tol;
      std::ostringstream te;
      te << tol;
      c.expected = e.str() + " +- " + te.str();
    }
  }
  return c;
}

}  // namespace

bool ScenarioResult::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const Json& manifest() {
  static const Json m = Json::parse(kManifestJson);
  return m;
}

std::vector<std::string> scenario_names() {
  return {"f0", "hump", "limitset", "ls-inter", "jorgensen-rank1", "antiparallel", "cores"};
}

ScenarioResult run_scenario(const std::string& name) {
  const auto& all = manifest().at("scenarios");
  if (!all.contains(name)) throw Error(ErrorCode::UnknownScenario, "no scenario '" + name + "'");
  const Json& entry = all.at(name);
  ScenarioResult r;
  r.name = name;
  Values v;
  if (name == "f0") v = run_f0(entry, r.figure);
  else if (name == "hump") v = run_hump(entry, r.figure);
  else if (name == "limitset") v = run_limitset(entry, r.figure);
  else if (name == "ls-inter") v = run_ls_inter(entry, r.figure);
  else if (name == "jorgensen-rank1") v = run_jorgensen(entry, r.figure);
  else if (name == "antiparallel") v = run_antiparallel(entry, r.figure);
  else if (name == "cores") v = run_cores(entry, r.figure);
  for (const auto& check : entry.at("checks")) r.checks.push_back(grade(check, v));
  return r;
}

void print_table(std::ostream& out, const ScenarioResult& r) {
  out << "scenario " << r.name << "\n";
  for (const auto& c : r.checks) {
    out << "  " << (c.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(36) << c.id << " measured "
        << std::setw(16) << c.measured << " expected " << c.expected;
    if (!c.basis.empty()) out << "  [" << c.basis << "]";
    out << "\n";
  }
  out << (r.pass() ? "all checks passed" : "some checks FAILED") << "\n";
}

}  // namespace mobius::tools
