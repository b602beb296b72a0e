// Textual body / density / run-config descriptions. The accepted syntax is
// JSON with the relaxation that bare identifiers need no quotes, so
// {type: lp_ball, n: 4, p: 1.5} parses as written.
#ifndef CVGEOM_BODYSPEC_HPP
#define CVGEOM_BODYSPEC_HPP

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvgeom/bodies.hpp"
#include "cvgeom/density.hpp"
#include "cvgeom/verify.hpp"

namespace cvgeom {

// quote bare words (and numeric object keys) so nlohmann can parse the
// relaxed form
inline std::string lenient_json_text(const std::string& in) {
  std::string out;
  out.reserve(in.size() + 16);
  std::size_t i = 0;
  auto next_nonspace = [&](std::size_t j) {
    while (j < in.size() && std::isspace(static_cast<unsigned char>(in[j]))) ++j;
    return j;
  };
  while (i < in.size()) {
    const char c = in[i];
    if (c == '"') {  // copy strings verbatim
      out += c;
      ++i;
      while (i < in.size()) {
        out += in[i];
        if (in[i] == '\\' && i + 1 < in.size()) {
          out += in[i + 1];
          i += 2;
          continue;
        }
        if (in[i] == '"') {
          ++i;
          break;
        }
        ++i;
      }
      continue;
    }
    const bool num_start = std::isdigit(static_cast<unsigned char>(c)) ||
                           ((c == '-' || c == '+' || c == '.') && i + 1 < in.size() &&
                            std::isdigit(static_cast<unsigned char>(in[i + 1])));
    if (num_start) {  // full number token, including exponents
      std::size_t j = i;
      if (in[j] == '-' || in[j] == '+') ++j;
      while (j < in.size() && (std::isdigit(static_cast<unsigned char>(in[j])) || in[j] == '.'))
        ++j;
      if (j < in.size() && (in[j] == 'e' || in[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < in.size() && (in[k] == '-' || in[k] == '+')) ++k;
        if (k < in.size() && std::isdigit(static_cast<unsigned char>(in[k]))) {
          j = k;
          while (j < in.size() && std::isdigit(static_cast<unsigned char>(in[j]))) ++j;
        }
      }
      const std::string num = in.substr(i, j - i);
      // numbers in key position still need quoting for JSON
      if (next_nonspace(j) < in.size() && in[next_nonspace(j)] == ':')
        out += '"' + num + '"';
      else
        out += num;
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < in.size() && (std::isalnum(static_cast<unsigned char>(in[j])) ||
                               in[j] == '_' || in[j] == '-' || in[j] == '.'))
        ++j;
      const std::string word = in.substr(i, j - i);
      if (word == "true" || word == "false" || word == "null") out += word;
      else out += '"' + word + '"';
      i = j;
      continue;
    }
    out += c;
    ++i;
  }
  return out;
}

inline nlohmann::json parse_relaxed(const std::string& text) {
  try {
    return nlohmann::json::parse(lenient_json_text(text));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("cannot parse spec: ") + e.what());
  }
}

namespace detail {

inline double num_field(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) throw std::invalid_argument("missing field '" + key + "'");
  const auto& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    try {
      return std::stod(s);
    } catch (...) {
    }
  }
  throw std::invalid_argument("field '" + key + "' is not a number");
}

inline Vec vec_field(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of numbers");
  Vec v;
  for (const auto& x : j) v.push_back(x.get<double>());
  return v;
}

}  // namespace detail

inline StarBody body_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw std::invalid_argument("body spec needs a 'type' field");
  const std::string type = j.at("type").get<std::string>();
  if (type == "dilate")
    return dilate(body_from_json(j.at("body")), detail::num_field(j, "beta"));
  if (type == "radial_sum")
    return radial_sum(body_from_json(j.at("left")), body_from_json(j.at("right")));
  if (type == "minkowski_sum")
    return minkowski_sum(body_from_json(j.at("left")), body_from_json(j.at("right")));

  const int n = static_cast<int>(detail::num_field(j, "n"));
  if (type == "ball") return make_ball(n, j.contains("r") ? detail::num_field(j, "r") : 1.0);
  if (type == "lp_ball") return make_lp_ball(n, detail::num_field(j, "p"));
  if (type == "ellipsoid") return make_ellipsoid(n, detail::vec_field(j.at("axes")));
  if (type == "cube")
    return make_cube(n, j.contains("half") ? detail::num_field(j, "half") : 1.0);
  if (type == "zonotope") {
    std::vector<Vec> gens;
    for (const auto& g : j.at("generators")) gens.push_back(detail::vec_field(g));
    return make_zonotope(n, std::move(gens));
  }
  if (type == "polytope") {
    std::vector<Vec> normals;
    std::vector<double> offsets;
    for (const auto& f : j.at("facets")) {
      normals.push_back(detail::vec_field(f.at("normal")));
      offsets.push_back(detail::num_field(f, "offset"));
    }
    return make_polytope(n, std::move(normals), std::move(offsets));
  }
  if (type == "zonal_ball") {
    std::map<int, double> coeffs;
    for (const auto& [k, v] : j.at("coeffs").items())
      coeffs[std::stoi(k)] = v.get<double>();
    return make_zonal_ball(n, j.contains("r0") ? detail::num_field(j, "r0") : 1.0,
                           std::move(coeffs));
  }
  throw std::invalid_argument("unknown body type '" + type + "'");
}

inline StarBody parse_body(const std::string& text) { return body_from_json(parse_relaxed(text)); }

inline Density density_from_json(const nlohmann::json& j, int n) {
  if (!j.is_object() || !j.contains("type"))
    throw std::invalid_argument("density spec needs a 'type' field");
  const std::string type = j.at("type").get<std::string>();
  if (j.contains("n")) n = static_cast<int>(detail::num_field(j, "n"));
  if (n <= 0) throw std::invalid_argument("density needs a dimension");
  if (type == "constant")
    return Density::constant(n, j.contains("c") ? detail::num_field(j, "c") : 1.0);
  if (type == "gaussian")
    return Density::gaussian(n, j.contains("sigma") ? detail::num_field(j, "sigma") : 1.0);
  if (type == "radial_power") return Density::radial_power(n, detail::num_field(j, "s"));
  if (type == "shell")
    return Density::shell(n, detail::num_field(j, "r0"), detail::num_field(j, "width"));
  throw std::invalid_argument("unknown density type '" + type + "'");
}

inline Density parse_density(const std::string& text, int n) {
  return density_from_json(parse_relaxed(text), n);
}

// suite configuration; throws with the offending key path
inline RunConfig parse_run_config(const std::string& text) {
  nlohmann::json j = parse_relaxed(text);
  RunConfig cfg;
  try {
    if (j.contains("quad")) cfg.level = parse_quad_level(j.at("quad").get<std::string>());
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
    if (j.contains("cutoff")) cfg.cutoff = j.at("cutoff").get<int>();
    if (j.contains("tol_abs")) cfg.tol_abs = j.at("tol_abs").get<double>();
    if (j.contains("tol_rel")) cfg.tol_rel = j.at("tol_rel").get<double>();
    if (j.contains("inconclusive_quota"))
      cfg.inconclusive_quota = j.at("inconclusive_quota").get<double>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.contains("cases") || !j.at("cases").is_array())
    throw std::invalid_argument("config: 'cases' must be an array");
  int idx = 0;
  for (const auto& cj : j.at("cases")) {
    const std::string path = "cases[" + std::to_string(idx++) + "]";
    SuiteCaseConfig sc;
    try {
      sc.case_id = cj.at("case").get<std::string>();
    } catch (...) {
      throw std::invalid_argument("config: " + path + ".case missing");
    }
    const InequalityCase& C = find_case(sc.case_id);  // rejects unknown ids
    if (cj.contains("count")) sc.count = cj.at("count").get<int>();
    if (sc.count <= 0) throw std::invalid_argument("config: " + path + ".count must be positive");
    if (cj.contains("dims")) {
      sc.dims.clear();
      for (const auto& d : cj.at("dims")) sc.dims.push_back(d.get<int>());
    }
    for (int d : sc.dims) {
      if (d < 2) throw std::invalid_argument("config: " + path + ".dims entries must be >= 2");
      if (d < C.min_dim)
        throw std::invalid_argument("config: " + path + ".dims: case '" + sc.case_id +
                                    "' needs n >= " + std::to_string(C.min_dim));
    }
    if (cj.contains("alpha")) {
      const auto& a = cj.at("alpha");
      if (!a.is_array() || a.size() != 2)
        throw std::invalid_argument("config: " + path + ".alpha must be [lo, hi]");
      sc.alpha_lo = a[0].get<double>();
      sc.alpha_hi = a[1].get<double>();
      for (int d : sc.dims) {
        const double lo = C.family == "fractional-section" ? d - 4.0 : static_cast<double>(d);
        const double hi = C.family == "fractional-section" ? d - 1.0 : d + 1.0;
        if (C.needs_alpha && (sc.alpha_lo < lo || sc.alpha_hi > hi))
          throw std::invalid_argument("config: " + path + ".alpha outside the validity window [" +
                                      std::to_string(lo) + ", " + std::to_string(hi) +
                                      ") for n = " + std::to_string(d));
      }
    }
    if (cj.contains("densities")) {
      sc.densities.clear();
      for (const auto& d : cj.at("densities")) sc.densities.push_back(d.get<std::string>());
    }
    if (cj.contains("require_hypothesis"))
      sc.require_hypothesis = cj.at("require_hypothesis").get<bool>();
    cfg.cases.push_back(std::move(sc));
  }
  return cfg;
}

}  // namespace cvgeom

#endif
