// Serialization of check reports: one schema-versioned JSON document, a flat
// CSV, and a gnuplot-ready slack histogram. Number formatting is shortest
// round-trip so identical runs produce byte-identical files.
#ifndef CVGEOM_REPORTING_HPP
#define CVGEOM_REPORTING_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvgeom/verify.hpp"

namespace cvgeom {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline nlohmann::json report_to_json(const CheckReport& r) {
  nlohmann::json j;
  j["case"] = r.case_id;
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["bodyK"] = r.bodyK;
  if (!r.bodyL.empty()) j["bodyL"] = r.bodyL;
  if (!std::isnan(r.alpha)) j["alpha"] = r.alpha;
  if (!r.density.empty()) j["density"] = r.density;
  if (!std::isnan(r.epsilon)) {
    j["epsilon"] = r.epsilon;
    j["epsilon_margin"] = r.epsilon_margin;
  }
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["margin"] = r.margin;
  if (!r.witness.empty()) j["witness"] = r.witness;
  j["hypothesis_mode"] = to_string(r.hyp_mode);
  j["status"] = to_string(r.status);
  j["quad"] = to_string(r.level);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline CheckReport report_from_json(const nlohmann::json& j) {
  CheckReport r;
  r.case_id = j.at("case").get<std::string>();
  r.n = j.at("n").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.bodyK = j.at("bodyK").get<std::string>();
  r.bodyL = j.value("bodyL", std::string{});
  r.alpha = j.contains("alpha") ? j["alpha"].get<double>() : std::nan("");
  r.density = j.value("density", std::string{});
  if (j.contains("epsilon")) {
    r.epsilon = j["epsilon"].get<double>();
    r.eps_margin_set(j.value("epsilon_margin", 0.0));
  }
  r.lhs = j.at("lhs").get<double>();
  r.rhs = j.at("rhs").get<double>();
  r.slack = j.at("slack").get<double>();
  r.margin = j.at("margin").get<double>();
  if (j.contains("witness")) r.witness = j["witness"].get<Vec>();
  r.hyp_mode = hypothesis_mode_from_string(j.at("hypothesis_mode").get<std::string>());
  r.status = case_status_from_string(j.at("status").get<std::string>());
  r.level = parse_quad_level(j.at("quad").get<std::string>());
  r.note = j.value("note", std::string{});
  return r;
}

// columns fixed by the interface contract
inline std::string reports_csv(const std::vector<CheckReport>& reports) {
  std::string out = "case,seed,n,epsilon,lhs,rhs,slack,mode,status\n";
  for (const CheckReport& r : reports) {
    out += r.case_id;
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += std::isnan(r.epsilon) ? "" : format_double(r.epsilon);
    out += ',';
    out += format_double(r.lhs);
    out += ',';
    out += format_double(r.rhs);
    out += ',';
    out += format_double(r.slack);
    out += ',';
    out += to_string(r.hyp_mode);
    out += ',';
    out += to_string(r.status);
    out += '\n';
  }
  return out;
}

// two-column text: bin center, count
inline std::string slack_histogram(const std::vector<CheckReport>& reports, int bins = 32) {
  std::vector<double> slacks;
  for (const CheckReport& r : reports)
    if (std::isfinite(r.slack)) slacks.push_back(r.slack);
  std::string out;
  if (slacks.empty()) return "0 0\n";
  double lo = slacks[0], hi = slacks[0];
  for (double s : slacks) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  if (hi - lo < 1e-300) {
    out = format_double(lo) + " " + std::to_string(slacks.size()) + "\n";
    return out;
  }
  std::vector<int> counts(static_cast<std::size_t>(bins), 0);
  for (double s : slacks) {
    int b = static_cast<int>((s - lo) / (hi - lo) * bins);
    if (b >= bins) b = bins - 1;
    counts[static_cast<std::size_t>(b)]++;
  }
  for (int b = 0; b < bins; ++b) {
    const double center = lo + (b + 0.5) * (hi - lo) / bins;
    out += format_double(center) + " " + std::to_string(counts[static_cast<std::size_t>(b)]) + "\n";
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

}  // namespace cvgeom

#endif
