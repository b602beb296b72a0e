// cvgeom command-line interface: constants tables, body capability listing,
// functional evaluation, membership certificates, single inequality checks,
// and randomized suites with report emission.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvgeom/bodyspec.hpp"
#include "cvgeom/reporting.hpp"
#include "cvgeom/spectral.hpp"
#include "cvgeom/verify.hpp"

namespace {

using namespace cvgeom;

QuadLevel default_level() {
  if (const char* env = std::getenv("CVGEOM_QUAD")) return parse_quad_level(env);
  return QuadLevel::standard;
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto pos = s.find("..");
  if (pos == std::string::npos) {
    const int n = std::stoi(s);
    return {n, n};
  }
  return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
}

int cmd_constants(const std::string& range, std::optional<double> alpha,
                  const std::string& name) {
  auto [lo, hi] = parse_range(range);
  std::string out = "name,n,alpha,value\n";
  auto row = [&](const std::string& nm, int n, std::optional<double> a, double v) {
    out += nm + "," + std::to_string(n) + "," + (a ? format_double(*a) : "") + "," +
           format_double(v) + "\n";
  };
  for (int n = lo; n <= hi; ++n) {
    if (!name.empty()) {
      row(name, n, alpha, named_constant(name, n, alpha));
      continue;
    }
    row("ball_volume", n, {}, ball_volume(n));
    if (n >= 2) {
      row("sphere_area", n, {}, sphere_area(n));
      row("c_n", n, {}, cn_constant(n));
    }
  }
  std::fputs(out.c_str(), stdout);
  return 0;
}

int cmd_bodies_list() {
  std::puts("variant        radial support surface_measure exact_volume zonal  flags");
  std::puts("ball           yes    yes     yes(density)    yes          yes    intersection,projection");
  std::puts("lp_ball        yes    p>=1    no              yes          p=2    intersection(p<=2)");
  std::puts("ellipsoid      yes    yes     yes(density)    yes          maybe  intersection,projection");
  std::puts("polytope       yes    yes     n<=3(facets)    n<=3         no     -");
  std::puts("cube           yes    yes     yes(facets)     yes          no     projection (zonotope form)");
  std::puts("zonotope       yes    yes     yes(facets)     yes          no     projection");
  std::puts("zonal_ball     yes    convex  no              yes          yes    - (certificate decides)");
  std::puts("dilate         yes    inherit inherit         inherit      inherit inherit");
  std::puts("radial_sum     yes    no      no              no           coaxial intersection (both flagged)");
  std::puts("minkowski_sum  slow   yes     no              no           coaxial projection (both flagged)");
  std::puts("sampled        yes    no      no              no           no     -");
  return 0;
}

int cmd_eval(const std::string& body_text, const std::string& functional,
             const std::string& direction, const std::string& body2_text,
             const std::string& density_text, QuadLevel level) {
  StarBody K = parse_body(body_text);
  const int n = K.dim();
  auto need_dir = [&]() {
    if (direction.empty()) throw std::invalid_argument("--direction required");
    Vec xi;
    std::stringstream ss(direction);
    std::string part;
    while (std::getline(ss, part, ',')) xi.push_back(std::stod(part));
    if (static_cast<int>(xi.size()) != n)
      throw std::invalid_argument("direction has wrong dimension");
    return normalized(xi);
  };
  double value;
  if (functional == "volume") value = volume_auto(K, level);
  else if (functional == "section") value = section_volume(K, need_dir(), level);
  else if (functional == "projection") value = projection_volume(K, need_dir());
  else if (functional == "as") value = avg_section(K, level);
  else if (functional == "ap") value = avg_projection(K, level);
  else if (functional == "surface") value = surface_area(K, level);
  else if (functional == "v1") {
    if (body2_text.empty()) throw std::invalid_argument("v1 needs --bodyL");
    value = mixed_volume_v1(K, parse_body(body2_text), level);
  } else if (functional == "mu") {
    if (density_text.empty()) throw std::invalid_argument("mu needs --density");
    Density mu = parse_density(density_text, n);
    value = direction.empty() ? measure_volume(K, mu, level)
                              : measure_section(K, mu, need_dir(), level);
  } else {
    throw std::invalid_argument("unknown functional '" + functional + "'");
  }
  std::printf("%s\n", format_double(value).c_str());
  return 0;
}

int cmd_certify(const std::string& body_text, const std::string& test, int cutoff,
                QuadLevel level) {
  StarBody K = parse_body(body_text);
  Certificate cert;
  if (test == "intersection") cert = is_intersection_body(K, cutoff, level);
  else if (test == "projection") cert = is_projection_body(K, cutoff, level);
  else throw std::invalid_argument("--test must be intersection or projection");
  nlohmann::json j;
  j["test"] = test;
  j["body"] = K.describe();
  j["verdict"] = to_string(cert.verdict);
  j["extremal_value"] = cert.extremal_value;
  j["cutoff"] = cert.cutoff;
  j["truncation_error"] = cert.truncation_error;
  j["witness"] = cert.witness;
  j["smoothed"] = cert.smoothed;
  std::printf("%s\n", j.dump(2).c_str());
  return 0;
}

int status_exit(CaseStatus s) {
  switch (s) {
    case CaseStatus::pass: return 0;
    case CaseStatus::fail: return 1;
    case CaseStatus::hypothesis_unmet: return 2;
    default: return 4;
  }
}

int cmd_check(const std::string& id, const std::string& bodyK_text,
              const std::string& bodyL_text, std::optional<double> alpha,
              const std::string& density_text, QuadLevel level, int cutoff, double tol) {
  StarBody K = parse_body(bodyK_text);
  std::optional<StarBody> L;
  if (!bodyL_text.empty()) L = parse_body(bodyL_text);
  CheckParams p;
  p.level = level;
  p.cutoff = cutoff;
  if (tol > 0) p.tol_abs = tol;
  if (alpha) p.alpha = *alpha;
  if (!density_text.empty()) p.density = parse_density(density_text, K.dim());
  CheckReport r = check_case(id, K, L, p);
  std::printf("%s\n", report_to_json(r).dump(2).c_str());
  return status_exit(r.status);
}

int cmd_suite(const std::string& config_path, std::optional<std::uint64_t> seed,
              const std::string& out_dir, std::optional<int> workers,
              std::optional<std::string> quad) {
  std::ifstream f(config_path);
  if (!f) {
    std::fprintf(stderr, "cannot open config '%s'\n", config_path.c_str());
    return 3;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  RunConfig cfg = parse_run_config(ss.str());
  if (seed) cfg.seed = *seed;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (workers) cfg.workers = *workers;
  if (quad) cfg.level = parse_quad_level(*quad);
  if (cfg.out_dir.empty()) cfg.out_dir = ".";
  std::filesystem::create_directories(cfg.out_dir);

  SuiteResult res = run_suite(cfg);

  nlohmann::json doc;
  doc["schema"] = "cvgeom-report/1";
  doc["seed"] = cfg.seed;
  doc["quad"] = to_string(cfg.level);
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckReport& r : res.reports) arr.push_back(report_to_json(r));
  doc["reports"] = arr;
  doc["summary"] = {{"total", res.summary.total},
                    {"passed", res.summary.passed},
                    {"failed", res.summary.failed},
                    {"hypothesis_unmet", res.summary.hypothesis_unmet},
                    {"inconclusive", res.summary.inconclusive},
                    {"assumed_quarantined", res.summary.assumed_quarantined}};
  write_file(cfg.out_dir + "/reports.json", doc.dump(2) + "\n");
  write_file(cfg.out_dir + "/reports.csv", reports_csv(res.reports));
  write_file(cfg.out_dir + "/slack-histogram.dat", slack_histogram(res.reports));

  std::printf("total %d: %d pass, %d fail, %d hypothesis-unmet, %d inconclusive (%d assumed)\n",
              res.summary.total, res.summary.passed, res.summary.failed,
              res.summary.hypothesis_unmet, res.summary.inconclusive,
              res.summary.assumed_quarantined);
  return suite_exit_code(res.summary);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computational convex geometry: sections, projections, and "
               "inequality verification"};
  app.require_subcommand(1);

  std::string quad_str = to_string(default_level());
  app.add_option("--quad", quad_str, "quadrature level: low|standard|high")
      ->envname("CVGEOM_QUAD");

  // constants
  auto* c_cmd = app.add_subcommand("constants", "emit dimensional constants as CSV");
  std::string range = "2..5", cname;
  double calpha = std::nan("");
  c_cmd->add_option("--n", range, "dimension or range A..B")->required();
  c_cmd->add_option("--alpha", calpha, "fractional order for named constants");
  c_cmd->add_option("--name", cname, "registry name: thm3|thm4-factor|thm2-factor|"
                                     "thm6-factor|thm7-factor|cor2|meas-factor");

  // bodies
  auto* b_cmd = app.add_subcommand("bodies", "body variant utilities");
  auto* b_list = b_cmd->add_subcommand("list", "print the capability matrix");

  // eval
  auto* e_cmd = app.add_subcommand("eval", "evaluate a functional of a body");
  std::string e_body, e_functional, e_direction, e_body2, e_density;
  e_cmd->add_option("--body", e_body, "body spec")->required();
  e_cmd->add_option("--functional", e_functional,
                    "volume|section|projection|as|ap|surface|v1|mu")->required();
  e_cmd->add_option("--direction", e_direction, "comma-separated unit direction");
  e_cmd->add_option("--bodyL", e_body2, "second body (v1)");
  e_cmd->add_option("--density", e_density, "density spec (mu)");

  // certify
  auto* cf_cmd = app.add_subcommand("certify", "membership certificate");
  std::string cf_body, cf_test;
  int cf_cutoff = 0;
  cf_cmd->add_option("--body", cf_body, "body spec")->required();
  cf_cmd->add_option("--test", cf_test, "intersection|projection")->required();
  cf_cmd->add_option("--cutoff", cf_cutoff, "harmonic cutoff (0: default)");

  // check
  auto* ck_cmd = app.add_subcommand("check", "run one inequality case");
  std::string ck_case, ck_bodyK, ck_bodyL, ck_density;
  double ck_alpha = std::nan("");
  double ck_tol = 0.0;
  int ck_cutoff = 40;
  ck_cmd->add_option("--case", ck_case, "case id from the registry")->required();
  ck_cmd->add_option("--bodyK", ck_bodyK, "body spec")->required();
  ck_cmd->add_option("--bodyL", ck_bodyL, "second body spec");
  ck_cmd->add_option("--alpha", ck_alpha, "fractional order");
  ck_cmd->add_option("--density", ck_density, "density spec (measure cases)");
  ck_cmd->add_option("--tol", ck_tol, "absolute slack tolerance");
  ck_cmd->add_option("--cutoff", ck_cutoff, "harmonic cutoff");

  // suite
  auto* s_cmd = app.add_subcommand("suite", "run a randomized suite from a config");
  std::string s_config, s_out;
  std::uint64_t s_seed = 0;
  int s_workers = 0;
  bool s_seed_set = false, s_workers_set = false;
  s_cmd->add_option("--config", s_config, "config file")->required();
  auto* seed_opt = s_cmd->add_option("--seed", s_seed, "master seed");
  s_cmd->add_option("--out", s_out, "output directory");
  auto* workers_opt = s_cmd->add_option("--workers", s_workers, "worker thread count");

  CLI11_PARSE(app, argc, argv);
  s_seed_set = seed_opt->count() > 0;
  s_workers_set = workers_opt->count() > 0;

  try {
    const QuadLevel level = parse_quad_level(quad_str);
    if (c_cmd->parsed())
      return cmd_constants(range, std::isnan(calpha) ? std::nullopt
                                                     : std::optional<double>(calpha),
                           cname);
    if (b_cmd->parsed()) {
      if (b_list->parsed()) return cmd_bodies_list();
      std::fprintf(stderr, "usage: bodies list\n");
      return 3;
    }
    if (e_cmd->parsed())
      return cmd_eval(e_body, e_functional, e_direction, e_body2, e_density, level);
    if (cf_cmd->parsed()) return cmd_certify(cf_body, cf_test, cf_cutoff, level);
    if (ck_cmd->parsed())
      return cmd_check(ck_case, ck_bodyK, ck_bodyL,
                       std::isnan(ck_alpha) ? std::nullopt : std::optional<double>(ck_alpha),
                       ck_density, level, ck_cutoff, ck_tol);
    if (s_cmd->parsed())
      return cmd_suite(s_config,
                       s_seed_set ? std::optional<std::uint64_t>(s_seed) : std::nullopt, s_out,
                       s_workers_set ? std::optional<int>(s_workers) : std::nullopt,
                       app.get_option("--quad")->count() > 0 || std::getenv("CVGEOM_QUAD")
                           ? std::optional<std::string>(quad_str)
                           : std::nullopt);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 3;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 3;
}
