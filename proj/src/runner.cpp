#include "hardydisc/runner.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hardydisc/duality.hpp"
#include "hardydisc/presets.hpp"
#include "hardydisc/version.hpp"

namespace hdisc::runner {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

[[noreturn]] void fail_at(int line, const std::string& what) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

int parse_grid_size(const std::string& v, int line, const char* key) {
  int n = 0;
  try {
    n = std::stoi(v);
  } catch (...) {
    fail_at(line, std::string(key) + " is not an integer");
  }
  if (n < 8 || n > 4096 || !is_power_of_two(n))
    fail_at(line, std::string(key) + " must be a power of two in [8, 4096]");
  return n;
}

Scenario parse_scenario(const std::string& v, int line) {
  if (v == "weight") return Scenario::Weight;
  if (v == "exhaust") return Scenario::Exhaust;
  if (v == "verify-dlj") return Scenario::VerifyDlj;
  if (v == "factorize") return Scenario::Factorize;
  if (v == "extremal") return Scenario::Extremal;
  if (v == "convergence") return Scenario::Convergence;
  fail_at(line, "unknown scenario '" + v + "'");
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

DiskField make_v_squared(const PolarGrid& g) {
  std::vector<double> vals(static_cast<size_t>(g.n_radii) * g.n_angles);
  for (int j = 0; j < g.n_radii; ++j) {
    const double r2 = g.radius(j) * g.radius(j);
    for (int k = 0; k < g.n_angles; ++k) vals[static_cast<size_t>(j) * g.n_angles + k] = r2;
  }
  return DiskField(g, std::move(vals), 0.0);
}

struct Csv {
  std::ostringstream out;
  void header(const std::string& h) { out << h << "\n"; }
  void row(const std::vector<double>& vals) {
    for (size_t i = 0; i < vals.size(); ++i) out << (i ? "," : "") << fmt17(vals[i]);
    out << "\n";
  }
};

CheckRow make_check(const std::string& name, double computed, double reference, double tol) {
  CheckRow c{name, computed, reference, tol, false};
  c.pass = std::isfinite(computed) && std::abs(computed - reference) <= tol;
  return c;
}

}  // namespace

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Weight: return "weight";
    case Scenario::Exhaust: return "exhaust";
    case Scenario::VerifyDlj: return "verify-dlj";
    case Scenario::Factorize: return "factorize";
    case Scenario::Extremal: return "extremal";
    case Scenario::Convergence: return "convergence";
  }
  return "?";
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (const auto h = s.find('#'); h != std::string::npos) s = trim(s.substr(0, h));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail_at(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key == "scenario") {
      cfg.scenario = parse_scenario(val, line);
    } else if (key == "preset") {
      cfg.preset = val;
    } else if (key == "n_angles") {
      cfg.n_angles = parse_grid_size(val, line, "n_angles");
    } else if (key == "n_radii") {
      cfg.n_radii = parse_grid_size(val, line, "n_radii");
    } else if (key == "p") {
      try {
        cfg.p = std::stod(val);
      } catch (...) {
        fail_at(line, "p is not a number");
      }
      if (cfg.p < 1.0 || cfg.p > 16.0) fail_at(line, "p must lie in [1, 16]");
    } else if (key == "degree") {
      cfg.degree = std::stoi(val);
      if (cfg.degree < 1 || cfg.degree > 1024) fail_at(line, "degree must lie in [1, 1024]");
    } else if (key == "iterations") {
      cfg.iterations = std::stoi(val);
      if (cfg.iterations < 1 || cfg.iterations > 10000000) fail_at(line, "iterations out of range");
    } else if (key == "depth") {
      cfg.depth = std::stoi(val);
      if (cfg.depth < 1 || cfg.depth > 12) fail_at(line, "depth must lie in [1, 12]");
    } else if (key == "seed") {
      cfg.seed = static_cast<unsigned>(std::stoul(val));
    } else if (key == "out") {
      cfg.out_dir = val;
    } else if (key == "trig_coeffs") {
      cfg.trig_coeffs.clear();
      std::istringstream cs(val);
      std::string tok;
      while (std::getline(cs, tok, ',')) {
        try {
          cfg.trig_coeffs.push_back(std::stod(trim(tok)));
        } catch (...) {
          fail_at(line, "trig_coeffs entry '" + tok + "' is not a number");
        }
      }
    } else {
      fail_at(line, "unknown key '" + key + "'");
    }
  }
  if (const char* env = std::getenv("HARDY_DISC_SEED")) cfg.seed = static_cast<unsigned>(std::stoul(env));
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

void scenario_weight(const ExperimentConfig& cfg, Csv& csv, std::vector<CheckRow>& checks) {
  auto named = presets::make_exhaustion(cfg.preset, cfg.n_angles, cfg.trig_coeffs);
  CircleFunction V = weight_balayage(named.exhaustion);
  csv.header("theta,value,reference,abs_error");
  double sup = 0.0;
  for (int k = 0; k < V.size(); ++k) {
    const double v = V.value(k).real();
    const double ref = named.reference_weight.value(k).real();
    sup = std::max(sup, std::abs(v - ref));
    csv.row({V.theta(k), v, ref, std::abs(v - ref)});
  }
  checks.push_back(make_check("weight_sup_error", sup, 0.0, named.weight_tolerance));
  const double mass = riesz_mass(named.exhaustion);
  checks.push_back(make_check("mass_budget", boundary_integral(V).real() - mass, 0.0, 1e-6));
}

void scenario_exhaust(const ExperimentConfig& cfg, Csv& csv, std::vector<CheckRow>& checks) {
  AngleGrid grid(cfg.n_angles);
  CircleFunction psi = [&]() {
    if (cfg.preset == "exp-weight") return presets::weight_exp(grid);
    if (cfg.preset == "trig-weight")
      return presets::weight_trig(grid, cfg.trig_coeffs.empty() ? std::vector<double>{2.0, 1.0}
                                                                : cfg.trig_coeffs);
    return CircleFunction::constant(grid, 1.0);  // inverse problem for the flat weight
  }();
  Exhaustion e = construct_exhaustion_c2(psi);
  CircleFunction V = weight_balayage(e);
  csv.header("theta,value,reference,abs_error");
  double sup = 0.0, umax = -1e300;
  for (int k = 0; k < V.size(); ++k) {
    const double v = V.value(k).real();
    const double ref = psi.value(k).real();
    sup = std::max(sup, std::abs(v - ref));
    csv.row({V.theta(k), v, ref, std::abs(v - ref)});
  }
  for (double x : e.u.values()) umax = std::max(umax, x);
  checks.push_back(make_check("prescription_fidelity", sup, 0.0, 1e-3));
  checks.push_back(make_check("u_nonpositive", std::max(umax, 0.0), 0.0, 1e-12));
  checks.push_back(
      make_check("mass_budget", boundary_integral(V).real() - riesz_mass(e), 0.0, 1e-6));
}

void scenario_dlj(const ExperimentConfig& cfg, Csv& csv, std::vector<CheckRow>& checks) {
  auto named = presets::make_exhaustion(cfg.preset, cfg.n_angles, cfg.trig_coeffs);
  const Exhaustion& e = named.exhaustion;
  DiskField v = make_v_squared(e.grid);
  DiskField vlap = DiskField::constant(e.grid, 4.0);
  std::vector<double> levels;
  if (e.tag == ExhaustionTag::green) {
    levels = {-1.5, -1.0, -0.5, -0.1};
  } else {
    double umin = e.u.center();
    for (double f : {0.75, 0.5, 0.25, 0.1}) levels.push_back(umin * f);
  }
  const double tol = e.tag == ExhaustionTag::green ? 1e-6 : 1e-4;
  csv.header("c,lhs,rhs,abs_error");
  for (double c : levels) {
    const double lhs = demailly_pairing(e, c, v);
    const double rhs = dlj_rhs(e, c, v, vlap);
    csv.row({c, lhs, rhs, std::abs(lhs - rhs)});
    checks.push_back(make_check("dlj_c=" + fmt17(c), lhs - rhs, 0.0, tol));
    if (e.tag == ExhaustionTag::green)
      checks.push_back(make_check("dlj_reference_c=" + fmt17(c), lhs, std::exp(2.0 * c), tol));
  }
}

void scenario_factorize(const ExperimentConfig& cfg, Csv& csv, std::vector<CheckRow>& checks) {
  AngleGrid grid(cfg.n_angles);
  HardyContext ctx = context_from_weight(presets::weight_exp(grid), cfg.p);
  std::mt19937 rng(cfg.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  csv.header("trial,norm_deviation,recovery_error");
  double worst_norm = 0.0, worst_rec = 0.0;
  const int trials = 10;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::complex<double>> zeros;
    const int nz = 1 + static_cast<int>(uni(rng) * 2.0);
    for (int i = 0; i < nz; ++i)
      zeros.push_back(std::polar(0.15 + 0.6 * uni(rng), 2.0 * std::numbers::pi * uni(rng)));
    std::vector<std::pair<double, double>> atoms;
    const int na = static_cast<int>(uni(rng) * 2.0);
    for (int i = 0; i < na; ++i)
      atoms.emplace_back(grid.theta(static_cast<int>(uni(rng) * grid.n)) + 0.37 * grid.spacing(),
                         0.2 + 0.8 * uni(rng));
    std::vector<double> trig{0.0, 0.3 * (uni(rng) - 0.5), 0.3 * (uni(rng) - 0.5),
                             0.3 * (uni(rng) - 0.5)};
    CircleFunction w = CircleFunction::sample_real(grid, [&](double th) {
      double s = 0.0;
      for (size_t j = 1; j < trig.size(); ++j) s += trig[j] * std::cos(j * th);
      return std::exp(s);
    });
    AnalyticFunction F = outer_from_modulus(w);
    AnalyticFunction B = blaschke(zeros, grid);
    AnalyticFunction S = singular_inner(atoms, grid);
    AnalyticFunction f = compose_factorization(B, S, ctx, F);
    const double dev = std::abs(weighted_norm(f, ctx) - lq_norm(F.boundary(), cfg.p));
    auto rec = recover_outer_part(f, B, S, ctx);
    double recerr = 0.0;
    for (int k = 0; k < grid.n; ++k)
      recerr = std::max(recerr, std::abs(rec.F.boundary().value(k) - F.boundary().value(k)));
    worst_norm = std::max(worst_norm, dev);
    worst_rec = std::max(worst_rec, recerr);
    csv.row({static_cast<double>(t), dev, recerr});
  }
  checks.push_back(make_check("norm_equality", worst_norm, 0.0, 1e-7));
  checks.push_back(make_check("outer_recovery", worst_rec, 0.0, 1e-7));
}

void scenario_extremal(const ExperimentConfig& cfg, Csv& csv, std::vector<CheckRow>& checks) {
  AngleGrid grid(cfg.n_angles);
  CircleFunction V = cfg.preset == "exp-weight" ? presets::weight_exp(grid)
                                                : CircleFunction::constant(grid, 1.0);
  auto ctx = std::make_shared<const HardyContext>(context_from_weight(V, cfg.p));
  std::vector<double> neg = cfg.trig_coeffs.empty() ? std::vector<double>{1.0, 0.3} : cfg.trig_coeffs;
  CircleFunction G = CircleFunction::sample(grid, [&](double th) {
    std::complex<double> s = 0.0;
    for (size_t j = 0; j < neg.size(); ++j)
      s += neg[j] * std::polar(1.0, -(static_cast<double>(j) + 1.0) * th);
    return s;
  });
  BoundaryFunctional bf = functional_from_classical(G, ctx);
  csv.header("degree,lambda,gamma,gap");
  std::vector<int> degrees{std::max(2, cfg.degree / 4), std::max(4, cfg.degree / 2), cfg.degree};
  double prev_gap = 1e300;
  bool monotone = true, weak = true;
  double final_gap = 0.0;
  for (int N : degrees) {
    ExtremalSolution sol = duality_certificate(bf, N, cfg.iterations, cfg.seed);
    csv.row({static_cast<double>(N), sol.lambda_value, sol.gamma_value, sol.gap});
    weak = weak && sol.weak_duality_ok;
    monotone = monotone && sol.gap <= prev_gap + 1e-9;
    prev_gap = sol.gap;
    final_gap = sol.gap;
  }
  const double gap_tol = cfg.p == 2.0 ? 1e-8 : 1e-2;
  checks.push_back(make_check("duality_gap", final_gap, 0.0, gap_tol));
  checks.push_back(make_check("weak_duality", weak ? 0.0 : 1.0, 0.0, 0.5));
  checks.push_back(make_check("gap_monotone", monotone ? 0.0 : 1.0, 0.0, 0.5));
}

double preset_weight_tolerance(const ExperimentConfig& cfg) {
  if (cfg.preset == "green-disk") return 1e-10;
  if (cfg.preset == "exp-weight") return 1e-3;
  if (cfg.preset == "trig-weight") return 1e-4;
  return 1e-6;
}

void scenario_convergence(const ExperimentConfig& cfg, Csv& csv, std::vector<CheckRow>& checks) {
  csv.header("n_angles,sup_error");
  // the exp weight's level set needs at least 256 angles to resolve
  const int min_n = cfg.preset == "exp-weight" ? 256 : 64;
  std::vector<int> sizes{std::max(min_n, cfg.n_angles / 4), std::max(min_n, cfg.n_angles / 2),
                         cfg.n_angles};
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  std::vector<double> errs;
  for (int n : sizes) {
    auto named = presets::make_exhaustion(cfg.preset, n, cfg.trig_coeffs);
    CircleFunction V = weight_balayage(named.exhaustion);
    double sup = 0.0;
    for (int k = 0; k < V.size(); ++k)
      sup = std::max(sup, std::abs(V.value(k).real() - named.reference_weight.value(k).real()));
    errs.push_back(sup);
    csv.row({static_cast<double>(n), sup});
  }
  checks.push_back(make_check("final_error", errs.back(), 0.0, preset_weight_tolerance(cfg)));
  for (size_t i = 1; i < errs.size(); ++i) {
    const double bound = std::max(errs[i - 1] / 4.0, 1e-6);
    checks.push_back(make_check("order_step_" + std::to_string(i),
                                std::max(errs[i] - bound, 0.0), 0.0, 0.0));
  }
}

}  // namespace

ResultRecord run(const ExperimentConfig& cfg, bool quiet) {
  const auto t0 = std::chrono::steady_clock::now();
  ResultRecord rec;
  rec.scenario = scenario_name(cfg.scenario);
  rec.library_version = kVersion;

  Csv csv;
  switch (cfg.scenario) {
    case Scenario::Weight: scenario_weight(cfg, csv, rec.checks); break;
    case Scenario::Exhaust: scenario_exhaust(cfg, csv, rec.checks); break;
    case Scenario::VerifyDlj: scenario_dlj(cfg, csv, rec.checks); break;
    case Scenario::Factorize: scenario_factorize(cfg, csv, rec.checks); break;
    case Scenario::Extremal: scenario_extremal(cfg, csv, rec.checks); break;
    case Scenario::Convergence: scenario_convergence(cfg, csv, rec.checks); break;
  }

  rec.all_pass = true;
  for (const auto& c : rec.checks) rec.all_pass = rec.all_pass && c.pass;
  rec.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::filesystem::create_directories(cfg.out_dir);
  rec.csv_path = cfg.out_dir + "/" + rec.scenario + ".csv";
  rec.json_path = cfg.out_dir + "/" + rec.scenario + ".json";
  {
    std::ofstream f(rec.csv_path);
    f << csv.out.str();
  }
  {
    nlohmann::json j;
    j["scenario"] = rec.scenario;
    j["preset"] = cfg.preset;
    j["n_angles"] = cfg.n_angles;
    j["n_radii"] = cfg.n_radii;
    j["p"] = cfg.p;
    j["degree"] = cfg.degree;
    j["iterations"] = cfg.iterations;
    j["seed"] = cfg.seed;
    j["runtime_seconds"] = rec.runtime_seconds;
    j["library_version"] = rec.library_version;
    j["all_pass"] = rec.all_pass;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : rec.checks) {
      rows.push_back({{"name", c.name},
                      {"computed", c.computed},
                      {"reference", c.reference},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
    }
    j["checks"] = rows;
    std::ofstream f(rec.json_path);
    f << j.dump(2) << "\n";
  }
  if (!quiet) {
    for (const auto& c : rec.checks)
      std::printf("[%s] %s  computed=%.6g reference=%.6g tol=%.2g\n", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.computed, c.reference, c.tolerance);
  }
  return rec;
}

}  // namespace hdisc::runner
