// conelag: evaluate the special functions of the library, run the identity
// suites, and emit tables and JSON-lines reports.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "CLI11.hpp"

#include "conelag/conelag.hpp"

using namespace conelag;
using conelag::jordan::JordanElement;
using conelag::jordan::TubeElement;
using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Small parsing helpers
// ---------------------------------------------------------------------------

Complex parse_complex(const std::string& s) {
  // forms: "a", "a+bi", "a-bi", "bi"
  std::string t = s;
  if (t.empty()) throw ConfigError("empty complex literal");
  if (t.back() == 'i') {
    t.pop_back();
    size_t split = t.find_last_of("+-");
    if (split == std::string::npos || split == 0) {
      if (t.empty() || t == "+" || t == "-") t += "1";
      return Complex(0.0, std::stod(t));
    }
    std::string re = t.substr(0, split);
    std::string im = t.substr(split);
    if (im == "+" || im == "-") im += "1";
    return Complex(std::stod(re), std::stod(im));
  }
  return Complex(std::stod(t), 0.0);
}

std::vector<Complex> parse_complex_list(const std::string& s) {
  std::vector<Complex> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

/// "3", "3/2", and finite decimals like "2.5" become exact rationals.
Rational parse_rational(const std::string& s) {
  if (auto slash = s.find('/'); slash != std::string::npos) {
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    int frac = int(s.size() - dot - 1);
    Rational den = 1;
    for (int i = 0; i < frac; ++i) den *= 10;
    return Rational(BigInt(digits)) / den;
  }
  return Rational(BigInt(s));
}

/// Element literals: "0.7" (rank 1), "diag:a,b", "sym:p,q,s",
/// "herm:d1,d2,re,im".
JordanElement parse_element(const std::string& s, const ConeStructure& cone) {
  if (s.rfind("diag:", 0) == 0)
    return JordanElement::diagonal(cone, parse_double_list(s.substr(5)));
  if (s.rfind("sym:", 0) == 0) {
    auto v = parse_double_list(s.substr(4));
    if (cone.rank != 2 || v.size() != 3)
      throw ConfigError("sym: wants rank 2 and three entries p,q,s");
    Eigen::Matrix2d m;
    m << v[0], v[1], v[1], v[2];
    return JordanElement::from_real(cone, m);
  }
  if (s.rfind("herm:", 0) == 0) {
    auto v = parse_double_list(s.substr(5));
    if (cone.rank != 2 || v.size() != 4)
      throw ConfigError("herm: wants rank 2 and four entries d1,d2,re,im");
    Eigen::Matrix2cd m;
    m << Complex(v[0], 0), Complex(v[2], v[3]), Complex(v[2], -v[3]), Complex(v[1], 0);
    return JordanElement(cone, m);
  }
  if (cone.rank != 1) throw ConfigError("scalar element literal needs rank 1");
  return JordanElement::scalar(cone, std::stod(s));
}

TubeElement parse_tube(const std::string& s, const ConeStructure& cone) {
  if (s.rfind("diag:", 0) == 0) {
    auto d = parse_complex_list(s.substr(5));
    return TubeElement::diagonal(cone, d);
  }
  if (cone.rank == 1) return TubeElement::diagonal(cone, {parse_complex(s)});
  throw ConfigError("tube literal: use diag:z1,z2 for rank 2");
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

struct RunConfig {
  int rank = 1;
  int mult = 1;
  double nu = 2.0;
  std::string nu_str = "2";
  int max_weight = 2;
  std::uint64_t seed = 2026;
  int points = 10;
  std::string format = "pretty";
  int rho_sign = -1;
  QuadratureSpec quad;
  std::map<std::string, double> tol;

  ConeStructure cone() const { return ConeStructure(rank, mult); }
  double tolerance(const std::string& key, double fallback) const {
    auto it = tol.find(key);
    return it == tol.end() ? fallback : it->second;
  }
};

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  ordered_json j = ordered_json::parse(in, nullptr, true);
  if (j.contains("rank")) cfg.rank = j["rank"];
  if (j.contains("multiplicity")) cfg.mult = j["multiplicity"];
  if (j.contains("nu")) {
    if (j["nu"].is_string()) {
      cfg.nu_str = j["nu"];
    } else {
      cfg.nu_str = ordered_json(j["nu"]).dump();
    }
  }
  if (j.contains("max_weight")) cfg.max_weight = j["max_weight"];
  if (j.contains("seed")) cfg.seed = j["seed"];
  if (j.contains("points")) cfg.points = j["points"];
  if (j.contains("format")) cfg.format = j["format"];
  if (j.contains("rho_sign")) cfg.rho_sign = j["rho_sign"];
  if (j.contains("tolerances"))
    for (auto& [k, v] : j["tolerances"].items()) cfg.tol[k] = v;
  if (j.contains("quadrature")) {
    auto& q = j["quadrature"];
    if (q.contains("rank1_nodes")) cfg.quad.rank1_nodes = q["rank1_nodes"];
    if (q.contains("radial_nodes")) cfg.quad.radial_nodes = q["radial_nodes"];
    if (q.contains("angle_nodes")) cfg.quad.angle_nodes = q["angle_nodes"];
    if (q.contains("torus_points")) cfg.quad.torus_points = q["torus_points"];
    if (q.contains("torus_radius")) cfg.quad.torus_radius = q["torus_radius"];
  }
}

// ---------------------------------------------------------------------------
// Parallel sample evaluation (deterministic merge by index)
// ---------------------------------------------------------------------------

void parallel_for(int n, const std::function<void(int)>& body) {
  unsigned hw = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("CONELAG_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) hw = std::min<unsigned>(hw, unsigned(cap));
  }
  int nt = int(std::min<unsigned>(std::max(1u, hw), unsigned(std::max(1, n))));
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < n;) body(i);
    });
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Seeded sample points
// ---------------------------------------------------------------------------

JordanElement sample_cone_point(std::mt19937_64& rng, const ConeStructure& cone) {
  std::uniform_real_distribution<double> eig(0.3, 2.0), ang(0.0, 6.283185307179586);
  if (cone.rank == 1) return JordanElement::scalar(cone, eig(rng));
  double l1 = eig(rng), l2 = eig(rng);
  if (std::abs(l1 - l2) < 0.1) l2 += 0.15;  // keep spectra separated
  if (cone.mult == 1) {
    double th = ang(rng);
    Eigen::Matrix2d k;
    k << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    Eigen::Matrix2d d = Eigen::Vector2d(l1, l2).asDiagonal();
    return JordanElement::from_real(cone, k * d * k.transpose());
  }
  double th = ang(rng), ph = ang(rng);
  Eigen::Matrix2cd u;
  u << std::cos(th), -std::sin(th) * std::exp(Complex(0, ph)),
      std::sin(th) * std::exp(Complex(0, -ph)), std::cos(th);
  Eigen::Matrix2cd d = Eigen::Vector2cd(Complex(l1, 0), Complex(l2, 0)).asDiagonal();
  return JordanElement(cone, u * d * u.adjoint());
}

// ---------------------------------------------------------------------------
// Check suites
// ---------------------------------------------------------------------------

using Reports = std::vector<IdentityReport>;

Reports run_recurrence(const RunConfig& cfg) {
  const auto cone = cfg.cone();
  Reports out;
  // exact three-term recurrence of the rank-1 polynomials
  Rational nuq = parse_rational(cfg.nu_str);
  for (int n = 0; n <= cfg.max_weight; ++n)
    out.push_back(meixner::check_mp_rank1_relations(nuq, n).first);
  // Euler-operator recurrence at seeded cone points
  auto parts = partitions_up_to(cone.rank, std::min(cfg.max_weight, 4));
  std::mt19937_64 rng(cfg.seed);
  std::vector<JordanElement> pts;
  for (int i = 0; i < cfg.points; ++i) pts.push_back(sample_cone_point(rng, cone));
  diffops::FiniteDiffSpec fd;
  double tol = cfg.tolerance("recurrence", cone.rank == 1 ? 1e-8 : 1e-6);
  std::vector<Reports> per(pts.size());
  parallel_for(int(pts.size()), [&](int i) {
    for (auto& m : parts) {
      laguerre::LaguerreSpec spec(cfg.nu, m, cone);
      auto [rec, cls] = laguerre::check_euler_recurrence(spec, pts[i], fd, tol);
      per[i].push_back(rec);
      if (cone.rank == 1) per[i].push_back(cls);
    }
  });
  for (auto& reps : per)
    for (auto& r : reps) out.push_back(std::move(r));
  return out;
}

Reports run_difference(const RunConfig& cfg) {
  const auto cone = cfg.cone();
  Reports out;
  Rational nuq = parse_rational(cfg.nu_str);
  for (int n = 0; n <= cfg.max_weight; ++n)
    out.push_back(meixner::check_mp_rank1_relations(nuq, n).second);
  if (cone.rank == 1) return out;
  if (cone.mult != 1)
    throw ConfigError("difference suite at rank 2 needs multiplicity 1");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> ul(-1.0, 1.0);
  auto parts = partitions_up_to(cone.rank, std::min(cfg.max_weight, 2));
  struct Sample {
    std::vector<Complex> lambda;
    Partition m;
  };
  std::vector<Sample> samples;
  for (int i = 0; i < cfg.points; ++i) {
    std::vector<Complex> lam = {Complex(ul(rng), 0.0), Complex(ul(rng), 0.0)};
    samples.push_back({lam, parts[i % parts.size()]});
  }
  double tol = cfg.tolerance("difference", 1e-5);
  std::vector<Reports> per(samples.size());
  parallel_for(int(samples.size()), [&](int i) {
    per[i].push_back(meixner::check_mp_difference(cfg.nu, samples[i].m,
                                                  samples[i].lambda, cfg.rho_sign,
                                                  cone, cfg.quad, tol));
    per[i].push_back(meixner::check_mp_spectral_difference(
        cfg.nu, samples[i].m, samples[i].lambda, cfg.rho_sign, cone, cfg.quad, true,
        tol));
  });
  for (auto& reps : per)
    for (auto& r : reps) out.push_back(std::move(r));
  return out;
}

Reports run_diffops(const RunConfig& cfg) {
  const auto cone = cfg.cone();
  if (cone.mult != 2) throw ConfigError("diffops requires multiplicity 2");
  Reports out;
  diffops::FiniteDiffSpec fd;
  std::mt19937_64 rng(cfg.seed);
  auto parts = partitions_up_to(cone.rank, std::min(cfg.max_weight, 2));
  std::vector<JordanElement> pts;
  for (int i = 0; i < cfg.points; ++i) pts.push_back(sample_cone_point(rng, cone));
  double tol = cfg.tolerance("diffops", cone.rank == 1 ? 1e-7 : 1e-5);
  std::vector<Reports> per(pts.size());
  parallel_for(int(pts.size()), [&](int i) {
    for (auto& m : parts) {
      laguerre::LaguerreSpec spec(cfg.nu, m, cone);
      for (auto& r : laguerre::check_hermitian_diffops(spec, pts[i], fd, tol))
        per[i].push_back(r);
    }
  });
  for (auto& reps : per)
    for (auto& r : reps) out.push_back(std::move(r));
  return out;
}

Reports run_laplace(const RunConfig& cfg) {
  const auto cone = cfg.cone();
  if (cone.rank == 2 && cone.mult != 1)
    throw ConfigError("laplace suite at rank 2 needs multiplicity 1");
  Reports out;
  auto parts = partitions_up_to(cone.rank, std::min(cfg.max_weight, 2));
  std::vector<TubeElement> zs;
  if (cone.rank == 1) {
    zs.push_back(TubeElement::diagonal(cone, {Complex(1.5, 0.0)}));
    zs.push_back(TubeElement::diagonal(cone, {Complex(2.0, 1.0)}));
  } else {
    zs.push_back(TubeElement::diagonal(cone, {Complex(2.0, 0.0), Complex(1.5, 0.0)}));
    zs.push_back(TubeElement::diagonal(cone, {Complex(2.0, 0.5), Complex(1.5, 0.5)}));
  }
  double tol = cfg.tolerance("laplace", cone.rank == 1 ? 1e-10 : 1e-3);
  for (auto& m : parts)
    for (auto& z : zs)
      out.push_back(transforms::check_laplace_identity(cfg.nu, m, z, cfg.quad, tol));
  return out;
}

Reports run_orthogonality(const RunConfig& cfg) {
  const auto cone = cfg.cone();
  if (cone.rank == 2 && cone.mult != 1)
    throw ConfigError("orthogonality suite at rank 2 needs multiplicity 1");
  Reports out;
  auto parts = partitions_up_to(cone.rank, cone.rank == 1 ? cfg.max_weight : 2);
  double tol = cfg.tolerance("orthogonality", cone.rank == 1 ? 1e-8 : 1e-3);
  std::vector<double> diag(parts.size());
  for (size_t i = 0; i < parts.size(); ++i)
    diag[i] = laguerre::laguerre_norm_sq(laguerre::LaguerreSpec(cfg.nu, parts[i], cone));
  for (size_t i = 0; i < parts.size(); ++i) {
    for (size_t j = i; j < parts.size(); ++j) {
      laguerre::LaguerreSpec si(cfg.nu, parts[i], cone), sj(cfg.nu, parts[j], cone);
      transforms::Integrand f = [&](const JordanElement& x) {
        return Complex(laguerre::laguerre_fn(si, x) * laguerre::laguerre_fn(sj, x));
      };
      double val =
          transforms::cone_quadrature(cone, cfg.nu, f, cfg.quad, 2.0, true).real();
      ordered_json pt;
      pt["m"] = parts[i].parts();
      pt["n"] = parts[j].parts();
      pt["nu"] = cfg.nu;
      if (i == j) {
        out.push_back(IdentityReport::make("laguerre-norm", pt, val, diag[i], tol));
      } else {
        double bound = std::sqrt(diag[i] * diag[j]);
        out.push_back(
            IdentityReport::make("laguerre-orthogonality", pt, val, 0.0, tol, bound));
      }
    }
  }
  return out;
}

Reports run_generating(const RunConfig& cfg) {
  const auto cone = cfg.cone();
  if (cone.rank == 2 && cone.mult != 1)
    throw ConfigError("generating suite at rank 2 needs multiplicity 1");
  Reports out;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uw(-0.3, 0.3), uw2(-0.15, 0.15);
  for (int i = 0; i < cfg.points; ++i) {
    auto x = sample_cone_point(rng, cone);
    if (cone.rank == 1) {
      double w = uw(rng);
      auto res = transforms::generating_series(cfg.nu, JordanElement::scalar(cone, w),
                                               x, 15, cfg.quad);
      ordered_json pt;
      pt["w"] = w;
      pt["x"] = x.scalar_value();
      double tol = cfg.tolerance("generating", 1e-8);
      IdentityReport rep;
      rep.identity = "generating-series";
      rep.point = pt;
      rep.lhs = res.lhs;
      rep.rhs = res.partial_sum;
      rep.abs_residual = std::abs(res.lhs - res.partial_sum);
      rep.rel_residual = rep.abs_residual;  // absolute truncation residual
      rep.status = rep.abs_residual <= tol ? CheckStatus::Pass : CheckStatus::Fail;
      rep.note = "absolute truncation residual at N=15";
      out.push_back(rep);
    } else {
      double s = uw2(rng);
      auto w = JordanElement::diagonal(cone, {s, 0.6 * s});
      auto r8 = transforms::generating_series(cfg.nu, w, x, 8, cfg.quad);
      ordered_json pt;
      pt["w_diag"] = std::vector<double>{s, 0.6 * s};
      pt["x_eigs"] = x.eigenvalues();
      double tol = cfg.tolerance("generating", 1e-4);
      out.push_back(
          IdentityReport::make("generating-series", pt, r8.lhs, r8.partial_sum, tol));
      auto r4 = transforms::generating_series(cfg.nu, w, x, 4, cfg.quad);
      auto r6 = transforms::generating_series(cfg.nu, w, x, 6, cfg.quad);
      bool decays = r6.residual <= 0.75 * r4.residual + 1e-14 &&
                    r8.residual <= 0.75 * r6.residual + 1e-14;
      ordered_json pt2 = pt;
      pt2["residuals"] = std::vector<double>{r4.residual, r6.residual, r8.residual};
      IdentityReport dec;
      dec.identity = "generating-series-decay";
      dec.point = pt2;
      dec.status = decays ? CheckStatus::Pass : CheckStatus::Fail;
      dec.note = "geometric decay across N = 4, 6, 8";
      out.push_back(dec);
    }
  }
  return out;
}

Reports run_suite(const std::string& suite, const RunConfig& cfg) {
  if (suite == "recurrence") return run_recurrence(cfg);
  if (suite == "difference") return run_difference(cfg);
  if (suite == "diffops") return run_diffops(cfg);
  if (suite == "laplace") return run_laplace(cfg);
  if (suite == "orthogonality") return run_orthogonality(cfg);
  if (suite == "generating") return run_generating(cfg);
  if (suite == "all") {
    Reports out;
    std::vector<std::string> suites = {"recurrence"};
    if (cfg.rank == 1 || cfg.mult == 1) {
      // transform-side suites need the rank-2 quadrature, which covers the
      // real symmetric cone only
      suites.insert(suites.end(),
                    {"difference", "laplace", "orthogonality", "generating"});
    }
    if (cfg.mult == 2) suites.push_back("diffops");
    for (auto& s : suites)
      for (auto& r : run_suite(s, cfg)) out.push_back(std::move(r));
    return out;
  }
  throw ConfigError("unknown suite " + suite);
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

std::string format_value(Complex v, const std::string& format) {
  std::ostringstream os;
  if (format == "pretty") {
    os.precision(12);
    os << v.real();
    if (v.imag() != 0.0) os << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
    return os.str();
  }
  ordered_json j;
  if (v.imag() == 0.0)
    j = v.real();
  else
    j = {{"re", v.real()}, {"im", v.imag()}};
  return j.dump();
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"special functions and identity suites on symmetric cones"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path, out_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "RunConfig JSON file");
    sub->add_option("--rank", cfg.rank, "cone rank r");
    sub->add_option("--a", cfg.mult, "multiplicity a (1 or 2)");
    sub->add_option("--nu", cfg.nu_str, "weight nu (rational like 5/2 accepted)");
    sub->add_option("--max-weight", cfg.max_weight, "largest partition weight");
    sub->add_option("--seed", cfg.seed, "sample seed");
    sub->add_option("--points", cfg.points, "sample point count");
    sub->add_option("--format", cfg.format, "json | csv | pretty");
    sub->add_option("--rho-sign", cfg.rho_sign, "sign of the rho convention");
    sub->add_option("--out", out_path, "write output to a file");
    sub->add_option("--angle-nodes", cfg.quad.angle_nodes, "circle quadrature points");
    sub->add_option("--radial-nodes", cfg.quad.radial_nodes, "radial quadrature points");
  };

  auto* eval = app.add_subcommand("eval", "evaluate one function at one point");
  std::string fn, x_str = "1", z_str = "diag:2,1.5", lambda_str = "0";
  std::string m_str = "0";
  int n_deg = 0;
  eval->add_option("function", fn,
                   "laguerre | laguerre-fn | spherical | mp | q-basis | gamma")
      ->required();
  add_common(eval);
  eval->add_option("--m", m_str, "partition, comma separated");
  eval->add_option("--n", n_deg, "rank-1 degree (mp)");
  eval->add_option("--x", x_str, "cone point");
  eval->add_option("--z", z_str, "tube point (complex entries allowed)");
  eval->add_option("--lambda", lambda_str, "spectral parameter tuple");

  auto* check = app.add_subcommand("check", "run an identity suite");
  std::string suite;
  check
      ->add_option("suite", suite,
                   "recurrence | difference | diffops | laplace | orthogonality | "
                   "generating | all")
      ->required();
  add_common(check);

  auto* table = app.add_subcommand("table", "emit a coefficient or norm table");
  std::string which;
  table->add_option("kind", which, "norms | orthogonality | mp-coeffs | binomials")
      ->required();
  add_common(table);
  table->add_option("--m", m_str, "partition, comma separated");
  table->add_option("--n", n_deg, "rank-1 degree (mp-coeffs)");

  auto* nodes = app.add_subcommand("dump-nodes", "quadrature nodes as CSV (debug)");
  add_common(nodes);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    if (code == 0) return 0;
    return (check->parsed() || (argc > 1 && std::string(argv[1]) == "check")) ? 3 : 2;
  }

  const bool in_check = check->parsed();
  try {
    if (!config_path.empty()) {
      RunConfig file_cfg = cfg;
      apply_config_file(file_cfg, config_path);
      // explicit flags win over the config file
      for (CLI::App* sub : {eval, check, table, nodes}) {
        if (!sub->parsed()) continue;
        if (!sub->count("--rank")) cfg.rank = file_cfg.rank;
        if (!sub->count("--a")) cfg.mult = file_cfg.mult;
        if (!sub->count("--nu")) cfg.nu_str = file_cfg.nu_str;
        if (!sub->count("--max-weight")) cfg.max_weight = file_cfg.max_weight;
        if (!sub->count("--seed")) cfg.seed = file_cfg.seed;
        if (!sub->count("--points")) cfg.points = file_cfg.points;
        if (!sub->count("--format")) cfg.format = file_cfg.format;
        if (!sub->count("--rho-sign")) cfg.rho_sign = file_cfg.rho_sign;
        if (!sub->count("--angle-nodes")) cfg.quad.angle_nodes = file_cfg.quad.angle_nodes;
        if (!sub->count("--radial-nodes"))
          cfg.quad.radial_nodes = file_cfg.quad.radial_nodes;
      }
      cfg.tol = file_cfg.tol;
      cfg.quad.rank1_nodes = file_cfg.quad.rank1_nodes;
      cfg.quad.torus_points = file_cfg.quad.torus_points;
      cfg.quad.torus_radius = file_cfg.quad.torus_radius;
    }
    cfg.nu = to_double(parse_rational(cfg.nu_str));
    const auto cone = cfg.cone();

    if (eval->parsed()) {
      Partition m(parse_int_list(m_str), cone.rank);
      Complex value;
      std::string path;
      if (fn == "laguerre") {
        value = laguerre::laguerre_poly(laguerre::LaguerreSpec(cfg.nu, m, cone),
                                        parse_element(x_str, cone));
        path = "binomial-expansion/jack-power-sums";
      } else if (fn == "laguerre-fn") {
        value = laguerre::laguerre_fn(laguerre::LaguerreSpec(cfg.nu, m, cone),
                                      parse_element(x_str, cone));
        path = "binomial-expansion/jack-power-sums";
      } else if (fn == "spherical") {
        value = spherical::spherical_poly(m, parse_element(x_str, cone), cone);
        path = "jack-power-sums";
      } else if (fn == "mp") {
        auto lam = parse_complex_list(lambda_str);
        if (cone.rank == 1) {
          value = meixner::mp_rank1(parse_rational(cfg.nu_str), n_deg).value(lam[0]);
          path = "taylor-series-exact";
        } else {
          value = meixner::mp_general(cfg.nu, m, lam,
                                      meixner::rho_vector(cone, cfg.rho_sign), cone,
                                      cfg.quad);
          path = "polytorus-extraction";
        }
      } else if (fn == "q-basis") {
        value = transforms::q_basis(cfg.nu, m, parse_tube(z_str, cone));
        path = "cayley/principal-branch";
      } else if (fn == "gamma") {
        value = spherical::gindikin_gamma(parse_complex_list(lambda_str), cone);
        path = "product-formula";
      } else {
        throw ConfigError("unknown function " + fn);
      }
      if (cfg.format == "json") {
        ordered_json j;
        j["function"] = fn;
        j["value"] = value.imag() == 0.0
                         ? ordered_json(value.real())
                         : ordered_json{{"re", value.real()}, {"im", value.imag()}};
        j["path"] = path;
        return emit(j.dump() + "\n", out_path);
      }
      return emit(format_value(value, cfg.format) + "\n", out_path);
    }

    if (nodes->parsed()) {
      return emit(transforms::dump_nodes_csv(cone, cfg.nu, cfg.quad), out_path);
    }

    if (table->parsed()) {
      std::ostringstream os;
      if (which == "binomials") {
        Partition m(parse_int_list(m_str), cone.rank);
        const auto& t = spherical::binomial_coeffs(m, cone);
        if (cfg.format == "json") {
          os << t.to_json().dump() << "\n";
        } else {
          os << "partition,num,den\n";
          for (auto& [n, q] : t.entries)
            os << "\"" << n.str() << "\"," << numerator(q) << "," << denominator(q)
               << "\n";
        }
      } else if (which == "norms") {
        if (cfg.format == "json") {
          ordered_json arr = ordered_json::array();
          for (auto& m : partitions_up_to(cone.rank, cfg.max_weight)) {
            ordered_json e;
            e["partition"] = m.parts();
            e["norm_sq"] =
                laguerre::laguerre_norm_sq(laguerre::LaguerreSpec(cfg.nu, m, cone));
            arr.push_back(e);
          }
          os << arr.dump() << "\n";
        } else {
          os << "partition,norm_sq\n";
          char buf[64];
          for (auto& m : partitions_up_to(cone.rank, cfg.max_weight)) {
            std::snprintf(
                buf, sizeof buf, "%.17g",
                laguerre::laguerre_norm_sq(laguerre::LaguerreSpec(cfg.nu, m, cone)));
            os << "\"" << m.str() << "\"," << buf << "\n";
          }
        }
      } else if (which == "orthogonality") {
        auto reps = run_orthogonality(cfg);
        if (cfg.format == "json") {
          for (auto& r : reps) os << r.to_json().dump() << "\n";
        } else {
          os << "m,n,integral,expected,rel_residual,status\n";
          char buf[200];
          for (auto& r : reps) {
            std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.17g,%.3e,%s\n",
                          r.point["m"].dump().c_str(), r.point["n"].dump().c_str(),
                          r.lhs.real(), r.rhs.real(), r.rel_residual,
                          to_string(r.status));
            os << buf;
          }
        }
      } else if (which == "mp-coeffs") {
        auto p = meixner::mp_rank1(parse_rational(cfg.nu_str), n_deg);
        if (cfg.format == "json") {
          os << p.to_json().dump() << "\n";
        } else {
          os << "power,re_num,re_den,im_num,im_den\n";
          auto j = p.to_json();
          int k = 0;
          for (auto& c : j["lambda_coefficients"]) {
            os << k++ << "," << std::string(c["re"]["num"]) << ","
               << std::string(c["re"]["den"]) << "," << std::string(c["im"]["num"])
               << "," << std::string(c["im"]["den"]) << "\n";
          }
        }
      } else {
        throw ConfigError("unknown table " + which);
      }
      return emit(os.str(), out_path);
    }

    if (check->parsed()) {
      Reports reps = run_suite(suite, cfg);
      auto sum = summarize(reps);
      std::ostringstream os;
      for (auto& r : reps) os << r.to_json().dump() << "\n";
      ordered_json s;
      s["summary"] = {{"suite", suite},       {"pass", sum.pass},
                      {"fail", sum.fail},     {"skipped", sum.skipped},
                      {"seed", cfg.seed},     {"rho_sign", cfg.rho_sign}};
      os << s.dump() << "\n";
      emit(os.str(), out_path);
      if (!out_path.empty())
        std::cout << "suite " << suite << ": pass=" << sum.pass
                  << " fail=" << sum.fail << " skipped=" << sum.skipped << "\n";
      return sum.ok() ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << ordered_json{{"error", "ConfigError"}, {"detail", e.what()}}.dump()
              << "\n";
    return in_check ? 3 : 2;
  } catch (const Error& e) {
    std::cerr << ordered_json{{"error", e.kind()}, {"detail", e.what()}}.dump() << "\n";
    return in_check ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << ordered_json{{"error", "InvalidArgument"}, {"detail", e.what()}}.dump()
              << "\n";
    return in_check ? 3 : 2;
  }
  return 0;
}
