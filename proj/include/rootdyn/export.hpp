#pragma once

#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rootdyn/stability.hpp"

namespace rootdyn {

/// One `re,im` row per boundary point, components in order.
inline std::string boundary_csv(const BoundaryTrace& trace) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "re,im\n";
  for (const auto& component : trace.components) {
    for (Complex z : component) out << z.real() << ',' << z.imag() << '\n';
  }
  return out.str();
}

inline nlohmann::json boundary_json(const StabilityRegionQuery& q, const BoundaryTrace& trace, int samples) {
  nlohmann::json doc;
  doc["point"] = to_string(q.which);
  doc["family"] = q.family == Parametrization::a_general ? "general" : "behl";
  if (q.family == Parametrization::a_general) {
    doc["n"] = q.n;
    doc["k"] = q.k;
  }
  doc["samples"] = samples;
  doc["meaning"] = "indifference curve |multiplier| = 1";
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& component : trace.components) {
    nlohmann::json pts = nlohmann::json::array();
    for (Complex z : component) pts.push_back({z.real(), z.imag()});
    comps.push_back(std::move(pts));
  }
  doc["components"] = std::move(comps);
  return doc;
}

}  // namespace rootdyn
