// Copyright 2026 The padiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "padiclab/serialize.hpp"

#include <sstream>

namespace padiclab {

void put_rational(Json& j, const std::string& key, const Rational& q) {
  j[key] = fraction_string(q);
  j[key + "_decimal"] = decimal_string(q);
}

namespace {

Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(fraction_string(q));
  return a;
}

Json decimals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(decimal_string(q));
  return a;
}

Json shape_json(const ShapeCheck& s) {
  return Json{{"kind", s.kind},
              {"value", s.value},
              {"threshold", s.threshold},
              {"threshold_is_engineering_choice", true},
              {"pass", s.pass}};
}

Json disc_json(const Disc& d) { return Json{{"center", to_string(d.center)}, {"k", d.radius_exp}}; }

template <class Report>
Json common_summary(const Report& r) {
  Json j;
  j["psi"] = r.psi.spec();
  j["n"] = r.n;
  j["p"] = r.p;
  j["m"] = r.m;
  j["working_precision"] = r.working_precision;
  j["h_grid"] = r.h_grid;
  j["seed"] = r.seed;
  j["rng"] = r.rng;
  j["samples"] = r.omegas.size();
  j["mean_curve"] = rationals(r.mean_curve);
  j["mean_curve_decimal"] = decimals(r.mean_curve);
  return j;
}

template <class Report>
std::string lines(const Report& r) {
  std::string out;
  for (std::size_t i = 0; i < r.omegas.size(); ++i) {
    Json j{{"sample", i}, {"omega", r.omegas[i].get_str()}, {"omega_digits", r.working_precision},
           {"counts", r.counts[i]}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

template <class Report>
std::string csv(const Report& r) {
  std::ostringstream os;
  os << "H,mean_count,mean_count_decimal\n";
  for (std::size_t i = 0; i < r.h_grid.size(); ++i)
    os << r.h_grid[i] << ',' << fraction_string(r.mean_curve[i]) << ',' << decimal_string(r.mean_curve[i]) << '\n';
  return os.str();
}

}  // namespace

Json to_json(const PadicInt& x) { return to_string(x); }

Json to_json(const Valuation& v) { return v.to_string(); }

Json to_json(const RootSet& r) {
  Json roots = Json::array();
  for (const auto& a : r.roots) roots.push_back(Json{{"residue", a.residue().get_str()}, {"padic", to_string(a)}});
  const Context& ctx = r.roots.empty() ? nullptr : r.roots.front().context();
  Json j{{"poly", to_string(r.poly)}};
  if (ctx) {
    j["p"] = ctx->prime();
    j["m"] = ctx->precision();
  }
  j["roots"] = roots;
  j["complete_in_Zp"] = r.complete_in_Zp;
  return j;
}

Json to_json(const RootSearch& r) {
  Json j = to_json(r.set);
  Json u = Json::array();
  for (const auto& b : r.unresolved) u.push_back(b.get_str());
  j["unresolved"] = u;
  return j;
}

Json to_json(const Lemma4Record& r) {
  return Json{{"poly", to_string(r.poly)},     {"omega", to_string(r.omega)},
              {"alpha", to_string(r.alpha)},   {"lhs_val", r.lhs_val.to_string()},
              {"rhs_val", r.rhs_val.to_string()}, {"holds", r.holds}};
}

Json to_json(const RootSeparationProfile& r) {
  Json j;
  j["poly"] = to_string(r.roots.poly);
  j["height"] = r.height.get_str();
  j["T"] = r.grid_T;
  j["eps1"] = fraction_string(r.eps1);
  j["alpha1"] = to_string(r.roots.roots.at(r.alpha1_index));
  Json others = Json::array();
  for (std::size_t i = 0; i < r.order.size(); ++i) {
    Json o{{"alpha", to_string(r.roots.roots.at(r.order[i]))}, {"distance_val", r.distance[i]}, {"rho", r.rho[i]}};
    if (r.rho_exact[i]) o["rho_exact"] = fraction_string(*r.rho_exact[i]);
    o["l"] = r.l[i];
    others.push_back(o);
  }
  j["others"] = others;
  j["r"] = rationals(r.r);
  return j;
}

Json to_json(const Lemma5Record& r) {
  return Json{{"derivative_val", r.derivative_val}, {"log_abs_derivative", r.log_abs_derivative},
              {"log_lower", r.log_lower},           {"log_upper", r.log_upper},
              {"lower_ratio", r.lower_ratio},       {"upper_ratio", r.upper_ratio}};
}

Json to_json(const AlgebraicNumber& a) {
  return Json{{"minpoly", to_string(a.minpoly)}, {"root", to_string(a.root)}, {"height", a.height.get_str()}};
}

Json to_json(const DirichletResult& r) {
  return Json{{"poly", to_string(r.poly)},
              {"height", height(r.poly).get_str()},
              {"threshold_val", r.threshold_exp},
              {"box_bound", r.box_bound.get_str()},
              {"pigeonhole_guaranteed", r.pigeonhole_guaranteed}};
}

Json to_json(const ApproxResult& r) {
  Json j;
  j["found"] = r.alpha.has_value();
  if (r.alpha) j["alpha"] = to_json(*r.alpha);
  if (r.rejected) j["rejected"] = std::string(reject_reason_name(*r.rejected));
  if (r.source) j["source"] = to_string(*r.source);
  if (r.alpha) j["distance_val"] = r.distance.to_string();
  j["candidates_tried"] = r.candidates_tried;
  j["derivative_failures"] = r.derivative_failures;
  j["reducible_failures"] = r.reducible_failures;
  return j;
}

Json to_json(const RegularSystemReport& r) {
  Json j;
  j["p"] = r.p;
  j["m"] = r.m;
  j["n"] = r.n;
  j["T"] = r.T.get_str();
  j["disc"] = disc_json(r.disc);
  j["t"] = r.points.size();
  put_rational(j, "density_constant", r.density_constant);
  j["candidates"] = r.candidates;
  j["separation_ok"] = r.separation_ok;
  j["maximality_ok"] = r.maximality_ok;
  Json pts = Json::array();
  for (const auto& a : r.points) pts.push_back(to_json(a));
  j["points"] = pts;
  return j;
}

Json to_json(const MeasureEstimate& m) {
  Json j;
  put_rational(j, "measure", m.value);
  j["exact"] = m.exact;
  j["resolution"] = m.resolution_exp;
  put_rational(j, "unresolved_measure", m.unresolved_measure);
  put_rational(j, "no_root_measure", m.no_root_measure);
  j["polynomials"] = m.polynomials;
  return j;
}

Json to_json(const ResultantRecord& r) {
  return Json{{"resultant", r.resultant.get_str()}, {"p_valuation", r.p_valuation}, {"holds", r.holds}};
}

Json to_json(const CheckReport& r) {
  Json j;
  j["p"] = r.config.p;
  j["m"] = r.config.m;
  j["n"] = r.config.n;
  j["height_max"] = r.config.height_max;
  j["seed"] = r.config.seed;
  Json secs = Json::array();
  for (const auto& s : r.sections) {
    Json o{{"name", s.name},       {"diagnostic", s.diagnostic}, {"checked", s.checked},
           {"violations", s.violations}, {"skipped", s.skipped}, {"examples", s.examples}};
    Json st = Json::object();
    for (const auto& [k, v] : s.stats) st[k] = v;
    o["stats"] = st;
    secs.push_back(o);
  }
  j["sections"] = secs;
  j["violations"] = r.total_violations();
  return j;
}

Json summary_json(const DichotomyReport& r) {
  Json j = common_summary(r);
  j["shape"] = shape_json(r.shape);
  return j;
}

Json summary_json(const Thm2Report& r) {
  Json j = common_summary(r);
  j["mass"] = rationals(r.mass);
  j["mass_decimal"] = decimals(r.mass);
  j["psi_sum"] = r.psi_sum;
  j["kappa"] = r.kappa;
  j["shape"] = shape_json(r.shape);
  return j;
}

std::string sample_lines(const DichotomyReport& r) { return lines(r); }
std::string sample_lines(const Thm2Report& r) { return lines(r); }
std::string mean_curve_csv(const DichotomyReport& r) { return csv(r); }
std::string mean_curve_csv(const Thm2Report& r) { return csv(r); }

}  // namespace padiclab
