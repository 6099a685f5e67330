#pragma once

// Machine-readable run reports.
//
// A p-adic value serializes as
//   {"p": 5, "valuation": "1/1", "digits": [d0, d1, ...], "precision": K}
// with little-endian base-p digits of the unit part. Zero carries
// "zero": true, an empty digit list and its absolute precision.

#include <padic/analytic.hpp>
#include <padic/core.hpp>

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <string>

namespace padic::report {

using json = nlohmann::ordered_json;

inline std::string rational_str(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

inline json to_json(const PadicNumber& x) {
  json j;
  j["p"] = x.prime();
  if (x.is_zero()) {
    j["zero"] = true;
    j["valuation"] = rational_str(Rational(x.valuation()));
    j["digits"] = json::array();
    j["precision"] = x.valuation();
    return j;
  }
  j["valuation"] = rational_str(Rational(x.valuation()));
  j["digits"] = x.unit_digits();
  j["precision"] = x.precision();
  return j;
}

inline json to_json(const FlatValue& f) {
  json j = to_json(f.u);
  j["valuation"] = rational_str(f.v);
  return j;
}

/// Command, parameters, results, verdict and timing. Everything except
/// timing is a function of the parameters and seed.
struct RunReport {
  std::string command;
  json parameters = json::object();
  json results = json::object();
  bool pass = true;
  double seconds = 0;

  json to_json(bool with_timing = true) const {
    json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["results"] = results;
    j["pass"] = pass;
    if (with_timing) j["timing_ms"] = static_cast<long>(seconds * 1000);
    return j;
  }
};

namespace detail {

inline std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + scalar(v[i]);
    return s;
  }
  return v.dump();
}

inline void flatten(const json& v, const std::string& prefix, std::ostringstream& os) {
  bool leaf_array = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (v.is_array() && !leaf_array) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), os);
  } else {
    os << prefix << "\t" << scalar(v) << "\n";
  }
}

}  // namespace detail

/// One "key<TAB>value" line per leaf; arrays of scalars are comma-joined.
inline std::string to_tsv(const json& j) {
  std::ostringstream os;
  detail::flatten(j, "", os);
  return os.str();
}

}  // namespace padic::report
