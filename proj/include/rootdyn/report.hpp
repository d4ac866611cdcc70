#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rootdyn/fixed_points.hpp"
#include "rootdyn/operators.hpp"
#include "rootdyn/orbit.hpp"
#include "rootdyn/stability.hpp"

namespace rootdyn {

/// A parameter value at which a fixed point is known to be superattracting.
struct SuperattractingFixture {
  std::string label;
  Parametrization family = Parametrization::a_general;
  int n = 4;
  int k = 1;
  Complex parameter;
  FixedPointKind point = FixedPointKind::z1;
};

inline std::vector<SuperattractingFixture> superattracting_fixtures() {
  using P = Parametrization;
  using K = FixedPointKind;
  const double s5 = std::sqrt(5.0);
  const double s10 = std::sqrt(10.0);
  const double r1 = std::sqrt(10.0 - 2.0 * s5);
  const double r2 = std::sqrt(10.0 + 2.0 * s5);
  std::vector<SuperattractingFixture> out = {
      {"b = -7 + 2 sqrt 10", P::b_behl, 4, 1, -7.0 + 2.0 * s10, K::zm1},
      {"b = -7 - 2 sqrt 10", P::b_behl, 4, 1, -7.0 - 2.0 * s10, K::zm1},
      {"b = -2", P::b_behl, 4, 1, -2.0, K::z1},
      {"b = 3", P::b_behl, 4, 1, 3.0, K::z1},
      {"b = -2 + sqrt 5 + sqrt(10 - 2 sqrt 5)", P::b_behl, 4, 1, -2.0 + s5 + r1, K::zpm},
      {"b = -2 + sqrt 5 - sqrt(10 - 2 sqrt 5)", P::b_behl, 4, 1, -2.0 + s5 - r1, K::zpm},
      {"b = -2 - sqrt 5 + sqrt(10 + 2 sqrt 5)", P::b_behl, 4, 1, -2.0 - s5 + r2, K::zpm},
      {"b = -2 - sqrt 5 - sqrt(10 + 2 sqrt 5)", P::b_behl, 4, 1, -2.0 - s5 - r2, K::zpm},
      {"a = 5/3", P::a_general, 4, 1, 5.0 / 3.0, K::z1},
      {"a = -5/3", P::a_general, 4, 1, -5.0 / 3.0, K::zm1},
      {"a = sqrt 5", P::a_general, 4, 1, s5, K::zpm},
      {"a = -sqrt 5", P::a_general, 4, 1, -s5, K::zpm},
  };
  for (auto [n, k] : {std::pair{4, 1}, {6, 2}, {5, 2}, {7, 2}}) {
    out.push_back({"a = (n+k)/(n-k), (n,k) = (" + std::to_string(n) + "," + std::to_string(k) + ")", P::a_general,
                   n, k, static_cast<double>(n + k) / (n - k), K::z1});
  }
  return out;
}

/// The fixed point a fixture refers to (z+ for the z+- pair).
inline ExtendedComplex fixture_point(const SuperattractingFixture& f) {
  switch (f.point) {
    case FixedPointKind::z1: return ExtendedComplex(1.0);
    case FixedPointKind::zm1: return ExtendedComplex(-1.0);
    case FixedPointKind::zpm:
      return ExtendedComplex(f.family == Parametrization::b_behl ? strange_fixed_zpm_b(f.parameter).plus
                                                                 : strange_fixed_zpm_a(f.parameter).plus);
  }
  return {};
}

inline Complex fixture_multiplier(const SuperattractingFixture& f) {
  const ExtendedComplex z = fixture_point(f);
  if (f.family == Parametrization::b_behl) return map_derivative(BehlParams{f.parameter}, z);
  return map_derivative(GeneralParams{f.parameter, f.n, f.k}, z);
}

namespace detail {

inline nlohmann::json point_json(const ExtendedComplex& z) {
  if (z.is_infinity()) return "infinity";
  const Complex c = z.to_complex();
  return {{"re", c.real()}, {"im", c.imag()}};
}

inline nlohmann::json complex_json(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

inline nlohmann::json fixed_points_json(const std::vector<FixedPointReport>& fps) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : fps) {
    arr.push_back({{"location", point_json(f.location)},
                   {"multiplier", complex_json(f.multiplier)},
                   {"abs_multiplier", std::abs(f.multiplier)},
                   {"stability", to_string(f.stability)},
                   {"strange", f.strange},
                   {"multiplicity", f.multiplicity}});
  }
  return arr;
}

inline nlohmann::json nearest_fixtures_json(Parametrization family, int n, int k, Complex parameter,
                                            std::size_t count) {
  std::vector<std::pair<double, SuperattractingFixture>> near;
  for (const auto& f : superattracting_fixtures()) {
    if (f.family != family || f.n != n || f.k != k) continue;
    near.emplace_back(std::abs(f.parameter - parameter), f);
  }
  std::stable_sort(near.begin(), near.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < std::min(count, near.size()); ++i) {
    arr.push_back({{"fixture", near[i].second.label},
                   {"point", to_string(near[i].second.point)},
                   {"distance", near[i].first}});
  }
  return arr;
}

inline nlohmann::json orbit_json(const OrbitClassification& c) {
  return {{"outcome", to_string(c.outcome)}, {"iterations", c.iterations}, {"witness", point_json(c.witness)},
          {"degenerate", c.degenerate}};
}

}  // namespace detail

inline nlohmann::json build_report(const GeneralParams& p, const EscapeConfig& cfg = {}) {
  p.validate();
  nlohmann::json r;
  r["family"] = "general";
  r["a"] = detail::complex_json(p.a);
  r["n"] = p.n;
  r["k"] = p.k;
  switch (degeneracy(p)) {
    case Degeneracy::monomial: r["degeneracy"] = "a = 0: monomial z^(n+k)"; break;
    case Degeneracy::reduced_at_plus: r["degeneracy"] = "a = 1: reduced to (-1)^k z^n"; break;
    case Degeneracy::reduced_at_minus: r["degeneracy"] = "a = -1: reduced to z^n"; break;
    case Degeneracy::none: r["degeneracy"] = nullptr; break;
  }
  r["fixed_points"] = detail::fixed_points_json(fixed_points_ank(p));

  const CriticalSet cs = critical_set_ank(p);
  nlohmann::json crit = nlohmann::json::array();
  for (const auto& c : cs.fixed_critical) {
    crit.push_back({{"location", detail::point_json(c.location)}, {"multiplicity", c.multiplicity}, {"kind", "fixed"}});
  }
  for (const auto& c : cs.preimage_critical) {
    crit.push_back({{"location", detail::point_json(c.location)}, {"multiplicity", c.multiplicity}, {"kind", "preimage"}});
  }
  if (cs.free) {
    crit.push_back({{"location", detail::complex_json(cs.free->plus)}, {"multiplicity", 1}, {"kind", "free c+"}});
    crit.push_back({{"location", detail::complex_json(cs.free->minus)}, {"multiplicity", 1}, {"kind", "free c-"}});
  }
  r["critical_points"] = crit;
  r["critical_total_multiplicity"] = cs.total_multiplicity();

  nlohmann::json regions;
  regions["z1"] = to_string(region_z1_ank(p.a, p.n, p.k));
  regions["zm1"] = to_string(region_zm1_ank(p.a, p.n, p.k));
  if (p.n == 4 && p.k == 1) regions["zpm"] = to_string(region_zpm_a(p.a));
  r["regions"] = regions;

  if (p.n != p.k) {
    const AntennaIntervals ant = antenna_intervals(p.n, p.k);
    r["antenna"] = {{"real_parameter", p.a.imag() == 0.0},
                    {"inside", p.a.imag() == 0.0 && ant.contains(p.a.real())},
                    {"bound", std::abs(static_cast<double>(p.n + p.k) / (p.n - p.k))}};
  } else {
    r["antenna"] = {{"real_parameter", p.a.imag() == 0.0}, {"inside", nullptr}, {"bound", nullptr}};
  }
  r["critical_orbit"] = detail::orbit_json(classify_critical_orbit(p, cfg));
  r["nearest_fixtures"] = detail::nearest_fixtures_json(Parametrization::a_general, p.n, p.k, p.a, 3);
  return r;
}

inline nlohmann::json build_report(const BehlParams& p, const EscapeConfig& cfg = {}) {
  nlohmann::json r;
  r["family"] = "behl";
  r["b"] = detail::complex_json(p.b);
  switch (degeneracy(p)) {
    case BehlDegeneracy::cubic: r["degeneracy"] = "b in {1, -3}: reduced to z^3"; break;
    case BehlDegeneracy::quartic: r["degeneracy"] = "b = -1: reduced to z^4"; break;
    case BehlDegeneracy::quartic_negated: r["degeneracy"] = "b = 1 +- 2 sqrt 2: reduced to -z^4"; break;
    case BehlDegeneracy::none: r["degeneracy"] = nullptr; break;
  }
  try {
    r["a_of_b"] = detail::complex_json(reparam_a_of_b(p.b));
  } catch (const DynamicsError&) {
    r["a_of_b"] = nullptr;
  }
  r["fixed_points"] = detail::fixed_points_json(fixed_points_b(p));
  if (const auto pair = free_critical_pair(p)) {
    r["critical_points"] = {{{"location", detail::complex_json(pair->plus)}, {"kind", "free c+"}},
                            {{"location", detail::complex_json(pair->minus)}, {"kind", "free c-"}}};
  } else {
    r["critical_points"] = nlohmann::json::array();
  }
  nlohmann::json regions;
  for (FixedPointKind which : {FixedPointKind::z1, FixedPointKind::zm1, FixedPointKind::zpm}) {
    regions[to_string(which)] = to_string(classify_region({which, Parametrization::b_behl, 4, 1, p.b}));
  }
  const BehlCurveValues curves = behl_curve_values(p.b);
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  regions["curve_values"] = {{"v_m1", opt(curves.v_m1)}, {"v_p1", opt(curves.v_p1)}, {"v_pm", opt(curves.v_pm)}};
  r["regions"] = regions;
  r["antenna"] = {{"real_parameter", p.b.imag() == 0.0},
                  {"inside", p.b.imag() == 0.0 && antenna_b_image().contains(p.b.real())}};
  r["critical_orbit"] = detail::orbit_json(classify_critical_orbit(p, cfg));
  r["nearest_fixtures"] = detail::nearest_fixtures_json(Parametrization::b_behl, 4, 1, p.b, 3);
  return r;
}

/// Human-readable rendering of a report document.
inline std::string report_text(const nlohmann::json& r) {
  std::ostringstream out;
  out << std::setprecision(12);
  auto cplx = [](const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    std::ostringstream s;
    s << std::setprecision(12) << v["re"].get<double>() << (v["im"].get<double>() < 0 ? " - " : " + ")
      << std::abs(v["im"].get<double>()) << "i";
    return s.str();
  };
  if (!r["degeneracy"].is_null()) out << "*** degenerate parameter: " << r["degeneracy"].get<std::string>() << " ***\n";
  if (r["family"] == "general") {
    out << "operator O_{a,n,k}  a = " << cplx(r["a"]) << "  n = " << r["n"] << "  k = " << r["k"] << "\n";
  } else {
    out << "operator O_b  b = " << cplx(r["b"]) << "\n";
    out << "a(b) = " << (r["a_of_b"].is_null() ? std::string("undefined") : cplx(r["a_of_b"])) << "\n";
  }
  out << "\nfixed points\n";
  for (const auto& f : r["fixed_points"]) {
    out << "  z = " << cplx(f["location"]) << "  |lambda| = " << f["abs_multiplier"].get<double>() << "  "
        << f["stability"].get<std::string>() << (f["strange"].get<bool>() ? "  (strange)" : "");
    if (f["multiplicity"].get<int>() > 1) out << "  multiplicity " << f["multiplicity"];
    out << "\n";
  }
  out << "\ncritical points\n";
  for (const auto& c : r["critical_points"]) {
    out << "  " << c["kind"].get<std::string>() << ": " << cplx(c["location"]);
    if (c.contains("multiplicity")) out << "  multiplicity " << c["multiplicity"];
    out << "\n";
  }
  out << "\nstability regions\n";
  for (auto it = r["regions"].begin(); it != r["regions"].end(); ++it) {
    if (it.value().is_string()) out << "  " << it.key() << ": " << it.value().get<std::string>() << "\n";
  }
  out << "\nantenna: "
      << (r["antenna"]["inside"].is_null() ? std::string("no finite antenna")
                                           : (r["antenna"]["inside"].get<bool>() ? "inside" : "outside"))
      << "\n";
  const auto& orbit = r["critical_orbit"];
  out << "critical orbit: " << orbit["outcome"].get<std::string>() << " after " << orbit["iterations"]
      << " iterations\n";
  out << "\nnearest superattracting fixtures\n";
  for (const auto& f : r["nearest_fixtures"]) {
    out << "  " << f["fixture"].get<std::string>() << " (" << f["point"].get<std::string>()
        << ")  distance " << f["distance"].get<double>() << "\n";
  }
  return out.str();
}

}  // namespace rootdyn
