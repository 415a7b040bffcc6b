// nilgo: exact homogeneous-geodesic analysis on metric nilpotent Lie algebras.
//
// Exit codes: 0 success, 1 mathematical negative (failed --expect or invalid
// algebra), 2 input/usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nilgo/derivations.hpp"
#include "nilgo/fixtures.hpp"
#include "nilgo/flow.hpp"
#include "nilgo/geodesic.hpp"
#include "nilgo/io.hpp"
#include "nilgo/paper6.hpp"

using namespace nilgo;
using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoadedAlgebra {
  MetricNilAlgebra alg;
  std::string canonical_bytes;
  std::string input_digest;
};

LoadedAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  AlgebraFile f = parse_algebra_file(ss.str());
  std::string canon = serialize_algebra_file(f);
  return {f.to_algebra(), canon, digest(canon)};
}

RatVec parse_vector(const std::string& csv, std::size_t dim) {
  RatVec v;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(Rational::parse(tok));
  if (v.size() != dim)
    throw UsageError("--vector needs " + std::to_string(dim) + " comma-separated rationals");
  return v;
}

std::string rat_list(const RatVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s;
}

ordered_json rat_array(const RatVec& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ordered_json report_skeleton(const std::string& command, const LoadedAlgebra& la) {
  ordered_json r;
  r["command"] = command;
  r["input_digest"] = la.input_digest;
  r["tool_version"] = kToolVersion;
  return r;
}

void emit(const ordered_json& r, bool json) {
  if (json) std::cout << r.dump(2) << "\n";
}

/// Skew derivations, aligned to the reference {T,H,E,F} basis when the
/// algebra carries it (the 6-dim pseudo-H-type fixture in the e-basis).
DerivationAlgebra skew_derivations_aligned(const MetricNilAlgebra& alg) {
  DerivationAlgebra dera = skew_derivation_space(alg);
  if (alg.dim() == 6 && dera.dim() == 4) {
    try {
      return dera.with_basis(fixtures::thef_basis());
    } catch (const std::invalid_argument&) {
    }
  }
  return dera;
}

int check_expect(const std::string& expect, const std::string& got, bool json,
                 ordered_json& rep) {
  if (expect.empty()) return 0;
  rep["expected"] = expect;
  rep["expect_met"] = expect == got;
  if (expect == got) return 0;
  if (!json) std::cout << "expected " << expect << ", got " << got << "\n";
  return 1;
}

int cmd_validate(const std::string& file, bool json) {
  LoadedAlgebra la = load_algebra(file);
  ValidationReport v = la.alg.validate();
  ordered_json rep = report_skeleton("validate", la);
  rep["name"] = la.alg.name();
  rep["valid"] = v.ok();
  rep["nilpotency_class"] = v.nilpotency_class;
  rep["issues"] = v.issues;
  emit(rep, json);
  if (!json) {
    std::cout << (v.ok() ? "valid" : "INVALID") << " (" << la.alg.name() << ")\n";
    for (const auto& s : v.issues) std::cout << "  issue: " << s << "\n";
    if (v.ok()) std::cout << "  nilpotency class " << v.nilpotency_class << "\n";
  }
  return v.ok() ? 0 : 1;
}

int cmd_info(const std::string& file, bool json) {
  LoadedAlgebra la = load_algebra(file);
  const MetricNilAlgebra& alg = la.alg;
  ordered_json rep = report_skeleton("info", la);
  rep["name"] = alg.name();
  rep["dim"] = alg.dim();
  auto cls = alg.nilpotency_class();
  rep["nilpotency_class"] = cls ? ordered_json(*cls) : ordered_json(nullptr);
  Subspace z = alg.center();
  rep["center_dim"] = z.dim();
  ordered_json zb = ordered_json::array();
  for (const auto& b : z.basis) zb.push_back(rat_array(b));
  rep["center_basis"] = zb;
  std::string split_status;
  bool htype = false;
  try {
    CenterSplit cs = alg.split_v_z();
    split_status = "nondegenerate";
    rep["v_dim"] = cs.v.dim();
    htype = alg.is_pseudo_H_type(cs);
    rep["pseudo_H_type"] = htype;
  } catch (const DegenerateCenter&) {
    split_status = "degenerate";
  }
  rep["center_metric"] = split_status;
  rep["ad_invariant_metric"] = alg.is_ad_invariant().invariant;
  emit(rep, json);
  if (!json) {
    std::cout << alg.name() << ": dim " << alg.dim() << ", center dim " << z.dim()
              << ", center metric " << split_status;
    if (cls) std::cout << ", class " << *cls;
    if (split_status == "nondegenerate")
      std::cout << ", pseudo-H-type: " << (htype ? "yes" : "no");
    std::cout << ", bi-invariant: " << (alg.is_ad_invariant().invariant ? "yes" : "no")
              << "\n";
  }
  return 0;
}

int cmd_derivations(const std::string& file, bool json) {
  LoadedAlgebra la = load_algebra(file);
  auto der = derivation_space(la.alg);
  DerivationAlgebra dera = skew_derivations_aligned(la.alg);
  ordered_json rep = report_skeleton("derivations", la);
  rep["der_dim"] = der.size();
  rep["skew_der_dim"] = dera.dim();
  ordered_json basis = ordered_json::array();
  for (const auto& d : dera.basis()) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < d.matrix.rows(); ++i) {
      RatVec row(d.matrix.cols());
      for (std::size_t j = 0; j < d.matrix.cols(); ++j) row[j] = d.matrix(i, j);
      rows.push_back(rat_array(row));
    }
    basis.push_back(rows);
  }
  rep["skew_basis"] = basis;
  ordered_json brackets = ordered_json::array();
  for (std::size_t a = 0; a < dera.dim(); ++a)
    for (std::size_t b = a + 1; b < dera.dim(); ++b)
      if (!is_zero(dera.bracket_coords(a, b))) {
        ordered_json e;
        e["a"] = a + 1;
        e["b"] = b + 1;
        e["coords"] = rat_array(dera.bracket_coords(a, b));
        brackets.push_back(e);
      }
  rep["skew_brackets"] = brackets;
  emit(rep, json);
  if (!json) {
    std::cout << "dim Der = " << der.size() << ", dim Der^a = " << dera.dim() << "\n";
    for (std::size_t a = 0; a < dera.dim(); ++a)
      for (std::size_t b = a + 1; b < dera.dim(); ++b)
        if (!is_zero(dera.bracket_coords(a, b)))
          std::cout << "  [D" << a + 1 << ",D" << b + 1 << "] = ("
                    << rat_list(dera.bracket_coords(a, b)) << ")\n";
  }
  return 0;
}

int cmd_geodesic(const std::string& file, const std::string& vec, const std::string& pres,
                 const std::string& expect, bool json) {
  LoadedAlgebra la = load_algebra(file);
  RatVec y = parse_vector(vec, la.alg.dim());
  ordered_json rep = report_skeleton("geodesic", la);
  rep["vector"] = rat_array(y);
  rep["presentation"] = pres;
  std::string status;
  if (pres == "trivial") {
    auto k = trivial_geodesic_constant(la.alg, y);
    status = k ? "Geodesic" : "NotGeodesic";
    rep["status"] = status;
    if (k) rep["k"] = k->str();
    emit(rep, json);
    if (!json) {
      std::cout << status;
      if (k) std::cout << ", k = " << *k;
      std::cout << "\n";
    }
  } else if (pres == "iso") {
    CenterSplit split = la.alg.split_v_z();
    DerivationAlgebra dera = skew_derivations_aligned(la.alg);
    GeodesicSolution s = solve_geodesic_system(la.alg, split, dera, y);
    status = s.status == GeodesicStatus::NotGeodesic ? "NotGeodesic"
             : s.status == GeodesicStatus::Unique    ? "Unique"
                                                     : "Family";
    rep["status"] = status;
    if (s.status != GeodesicStatus::NotGeodesic) {
      rep["xi"] = rat_array(s.xi);
      rep["k"] = s.k.str();
      ordered_json fam = ordered_json::array();
      for (const auto& d : s.family_basis) fam.push_back(rat_array(d));
      rep["family_basis"] = fam;
      rep["family_shares_k"] = s.family_shares_k;
    }
    emit(rep, json);
    if (!json) {
      std::cout << status;
      if (s.status != GeodesicStatus::NotGeodesic)
        std::cout << ", xi = (" << rat_list(s.xi) << "), k = " << s.k;
      std::cout << "\n";
    }
  } else {
    throw UsageError("--presentation must be iso or trivial");
  }
  int rc = check_expect(expect, status, json, rep);
  if (rc && json) std::cout << rep.dump(2) << "\n";
  return rc;
}

int cmd_classify(const std::string& file, std::size_t samples, std::size_t null_samples,
                 std::uint64_t seed, const std::string& expect, bool json) {
  LoadedAlgebra la = load_algebra(file);
  SamplerConfig cfg{samples, null_samples, seed};
  SpaceVerdict v;
  try {
    CenterSplit split = la.alg.split_v_z();
    DerivationAlgebra dera = skew_derivations_aligned(la.alg);
    v = classify_space(la.alg, split, dera, cfg);
  } catch (const DegenerateCenter&) {
    // isotropy machinery needs a nondegenerate center; fall back to the
    // trivial presentation (bi-invariance decides g.o.)
    v = classify_trivial(la.alg, cfg);
  }
  ordered_json rep = report_skeleton("classify", la);
  rep["seed"] = seed;
  rep["verdict"] = to_string(v.verdict);
  rep["null_verdict"] = to_string(v.null_verdict);
  ordered_json stats;
  stats["generic"] = {v.stats.generic_solved, v.stats.generic_total};
  stats["boundary"] = {v.stats.boundary_solved, v.stats.boundary_total};
  stats["null"] = {v.stats.null_solved, v.stats.null_total};
  rep["stats"] = stats;
  ordered_json sw = ordered_json::array();
  for (const auto& w : v.solvable_witnesses) {
    ordered_json e;
    e["y"] = rat_array(w.y);
    e["k"] = w.k->str();
    sw.push_back(e);
  }
  rep["solvable_witnesses"] = sw;
  ordered_json uw = ordered_json::array();
  for (const auto& w : v.unsolvable_witnesses) uw.push_back(rat_array(w));
  rep["unsolvable_witnesses"] = uw;
  emit(rep, json);
  if (!json) {
    std::cout << to_string(v.verdict) << " (null: " << to_string(v.null_verdict) << ")\n";
    std::cout << "  generic " << v.stats.generic_solved << "/" << v.stats.generic_total
              << ", boundary " << v.stats.boundary_solved << "/" << v.stats.boundary_total
              << ", null " << v.stats.null_solved << "/" << v.stats.null_total << "\n";
    for (const auto& w : v.unsolvable_witnesses)
      std::cout << "  unsolvable: (" << rat_list(w) << ")\n";
  }
  return check_expect(expect, to_string(v.verdict), json, rep);
}

int cmd_flow_compare(const std::string& file, const std::string& vec, double dt, double T,
                     double tol, bool json) {
  LoadedAlgebra la = load_algebra(file);
  RatVec y = parse_vector(vec, la.alg.dim());
  CenterSplit split = la.alg.split_v_z();
  DerivationAlgebra dera = skew_derivations_aligned(la.alg);
  GeodesicSolution s = solve_geodesic_system(la.alg, split, dera, y);
  ordered_json rep = report_skeleton("flow compare", la);
  rep["vector"] = rat_array(y);
  if (s.status == GeodesicStatus::NotGeodesic) {
    rep["status"] = "NotGeodesic";
    emit(rep, json);
    if (!json) std::cout << "NotGeodesic: no derivation to compare against\n";
    return 1;
  }
  CompareReport c = compare_orbit_geodesic(la.alg, dera.element(s.xi), y, s.k, T, dt, tol);
  rep["k"] = s.k.str();
  rep["xi"] = rat_array(s.xi);
  rep["dt"] = fmt_double(dt);
  rep["T"] = fmt_double(T);
  rep["max_deviation"] = fmt_double(c.max_deviation);
  rep["worst_t"] = fmt_double(c.worst_t);
  rep["tolerance"] = fmt_double(tol);
  rep["within_tolerance"] = c.ok();
  emit(rep, json);
  if (!json)
    std::cout << (c.ok() ? "OK" : "EXCEEDED") << ": max deviation " << c.max_deviation
              << " at t = " << c.worst_t << " (tol " << tol << ")\n";
  return c.ok() ? 0 : 1;
}

int cmd_limit_scan(const std::string& file, const std::string& vec, bool json) {
  LoadedAlgebra la = load_algebra(file);
  RatVec y = parse_vector(vec, la.alg.dim());
  if (la.alg.dim() != 6) throw UsageError("limit-scan targets the 6-dim fixture family");
  ordered_json rep = report_skeleton("limit-scan", la);
  rep["vector"] = rat_array(y);
  if (!paper6::v_norm(y).is_zero())
    throw UsageError("limit-scan needs a base point on the singular stratum (<X,X> = 0)");
  ordered_json rows = ordered_json::array();
  if (!json) std::cout << "t, xi3(gamma(t))\n";
  for (long e = 1; e <= 6; ++e) {
    Rational t(1, 1);
    for (long i = 0; i < e; ++i) t = t / Rational(10);
    Rational xi3 = paper6::xi3_on_curve(y, t);
    ordered_json row;
    row["t"] = t.str();
    row["xi3"] = xi3.str();
    rows.push_back(row);
    if (!json) std::cout << t << ", " << xi3 << "\n";
  }
  rep["scan"] = rows;
  emit(rep, json);
  return 0;
}

int cmd_catalog(const std::string& name, bool json) {
  if (!name.empty()) {
    std::cout << serialize_algebra_file(fixtures::catalog_entry(name));
    return 0;
  }
  if (json) {
    ordered_json rep = ordered_json::array();
    for (const auto& f : fixtures::catalog()) rep.push_back(f.name);
    std::cout << rep.dump(2) << "\n";
  } else {
    for (const auto& f : fixtures::catalog()) std::cout << f.name << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homogeneous geodesics on metric nilpotent Lie algebras"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit machine-readable reports");

  std::string file, vec, expect;
  std::string pres = "iso";
  std::size_t samples = 1000, null_samples = 500;
  std::uint64_t seed = 0;
  double dt = 1e-3, T = 1.0, tol = 1e-6;
  std::string cat_name;

  auto* c_validate = app.add_subcommand("validate", "check an algebra file");
  c_validate->add_option("file", file)->required();

  auto* c_info = app.add_subcommand("info", "center, class, split, pseudo-H-type");
  c_info->add_option("file", file)->required();

  auto* c_der = app.add_subcommand("derivations", "Der and Der^a bases and brackets");
  c_der->add_option("file", file)->required();

  auto* c_geo = app.add_subcommand("geodesic", "decide whether a vector is geodesic");
  c_geo->add_option("file", file)->required();
  c_geo->add_option("--vector", vec)->required();
  c_geo->add_option("--presentation", pres)->check(CLI::IsMember({"iso", "trivial"}));
  c_geo->add_option("--expect", expect);

  auto* c_cls = app.add_subcommand("classify", "g.o. / almost g.o. / n.g.o. by sampling");
  c_cls->add_option("file", file)->required();
  c_cls->add_option("--samples", samples);
  c_cls->add_option("--null-samples", null_samples);
  c_cls->add_option("--seed", seed);
  c_cls->add_option("--expect", expect);

  auto* c_flow = app.add_subcommand("flow", "numeric integration");
  auto* c_cmp = c_flow->add_subcommand("compare", "orbit vs geodesic");
  c_cmp->add_option("file", file)->required();
  c_cmp->add_option("--vector", vec)->required();
  c_cmp->add_option("--dt", dt);
  c_cmp->add_option("--T", T);
  c_cmp->add_option("--tol", tol);

  auto* c_scan = app.add_subcommand("limit-scan", "geodesic graph blow-up along the curve");
  c_scan->add_option("file", file)->required();
  c_scan->add_option("--vector", vec)->required();

  auto* c_cat = app.add_subcommand("catalog", "emit built-in fixtures");
  c_cat->add_option("name", cat_name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*c_validate) return cmd_validate(file, json);
    if (*c_info) return cmd_info(file, json);
    if (*c_der) return cmd_derivations(file, json);
    if (*c_geo) return cmd_geodesic(file, vec, pres, expect, json);
    if (*c_cls) return cmd_classify(file, samples, null_samples, seed, expect, json);
    if (*c_cmp) return cmd_flow_compare(file, vec, dt, T, tol, json);
    if (*c_scan) return cmd_limit_scan(file, vec, json);
    if (*c_cat) return cmd_catalog(cat_name, json);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateCenter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
