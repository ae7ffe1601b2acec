#include "ineq/cli.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <set>

#include <json.hpp>

#include "ineq/errors.hpp"
#include "ineq/flow.hpp"
#include "ineq/grid_io.hpp"
#include "ineq/rearrange.hpp"
#include "ineq/sigma_lift.hpp"
#include "ineq/sphere_functionals.hpp"

namespace ineq {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Context {
  fs::path out_dir;
  std::uint64_t seed = 1;
  int threads = 1;
  json resolved;  // echoed into the CSV header
};

void check_keys(const json& j, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw config_error("unknown config key: " + it.key());
}

Real uniform(std::mt19937_64& rng) {
  return (rng() >> 11) * 0x1.0p-53;  // [0,1), platform independent
}

std::mt19937_64 row_rng(std::uint64_t seed, std::uint64_t row) {
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (row + 1)));
  rng.discard(8);
  return rng;
}

InterpolationParams params_from_json(int d, const json& p) {
  if (p.is_string()) {
    if (p.get<std::string>() == "log") return make_params_log(d);
    throw config_error("p: expected a number or \"log\"");
  }
  return make_params(d, p.get<Real>());
}

Real beta_from_json(const InterpolationParams& params, const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "star") return beta_star(params);
    throw config_error("beta: expected a number or \"star\"");
  }
  return j.get<Real>();
}

// Band-limited random profile 1 + amplitude * sum a_k c_k(z), a_k ~ U(-1,1).
SphereFunction random_bandlimited(GridPtr grid, std::mt19937_64& rng,
                                  Real amplitude, int k_min, int k_max) {
  Vector coeffs = Vector::Zero(grid->degree_cap() + 1);
  coeffs[0] = 1.0;
  k_max = std::min(k_max, grid->degree_cap());
  Real norm = 0.0;
  std::vector<Real> raw(k_max + 1, 0.0);
  for (int k = k_min; k <= k_max; ++k) {
    raw[k] = 2.0 * uniform(rng) - 1.0;
    norm += raw[k] * raw[k];
  }
  norm = std::sqrt(std::max(norm, 1e-300));
  for (int k = k_min; k <= k_max; ++k)
    coeffs[k] = amplitude * raw[k] / norm;
  return synthesize(grid, coeffs);
}

// Run rows on a small async pool; output order is by row index regardless of
// completion order.
template <class Fn>
std::vector<std::vector<std::string>> parallel_rows(Index n, int threads,
                                                    Fn&& fn) {
  std::vector<std::vector<std::string>> rows(n);
  if (threads <= 1) {
    for (Index i = 0; i < n; ++i) rows[i] = fn(i);
    return rows;
  }
  std::atomic<Index> next{0};
  auto worker = [&]() {
    for (;;) {
      const Index i = next.fetch_add(1);
      if (i >= n) return;
      rows[i] = fn(i);
    }
  };
  std::vector<std::future<void>> futures;
  for (int t = 0; t < threads; ++t)
    futures.push_back(std::async(std::launch::async, worker));
  for (auto& f : futures) f.get();
  return rows;
}

std::string nn(Real v) { return CsvWriter::num(v); }

// ---------------------------------------------------------------------------
// deficit-scan
int cmd_deficit_scan(const json& cfg, Context& ctx) {
  check_keys(cfg, {"experiment", "d", "p_values", "grid_n", "family",
                   "eps_values", "n_random", "amplitude", "degree_min",
                   "degree_max", "improved", "seed", "out_dir", "threads"});
  const int d = cfg.at("d").get<int>();
  const int grid_n = cfg.value("grid_n", 64);
  const std::string family = cfg.value("family", std::string("random"));
  const bool improved = cfg.value("improved", true);
  const Real amplitude = cfg.value("amplitude", 0.25);
  const int k_min = cfg.value("degree_min", 1);
  const int k_max = cfg.value("degree_max", 8);

  GridPtr grid = build_grid(d, grid_n);

  // Assemble the test family once (deterministic under the seed).
  std::vector<std::pair<std::string, SphereFunction>> members;
  if (family == "constants") {
    std::vector<Real> levels = {0.5, 1.0, 2.0};
    if (cfg.contains("eps_values"))
      levels = cfg.at("eps_values").get<std::vector<Real>>();
    for (Real c : levels)
      members.emplace_back("const-" + nn(c), constant_function(grid, c));
  } else if (family == "eps-axis") {
    for (Real eps : cfg.at("eps_values").get<std::vector<Real>>())
      members.emplace_back(
          "axis-" + nn(eps),
          sample(grid, [eps](Real z) { return 1.0 + eps * z; }));
  } else if (family == "random") {
    const int n_random = cfg.value("n_random", 100);
    for (int i = 0; i < n_random; ++i) {
      auto rng = row_rng(ctx.seed, i);
      members.emplace_back("rand-" + std::to_string(i),
                           random_bandlimited(grid, rng, amplitude, k_min, k_max));
    }
  } else {
    throw config_error("family must be constants|eps-axis|random");
  }

  std::vector<InterpolationParams> plist;
  for (const json& pj : cfg.at("p_values")) plist.push_back(params_from_json(d, pj));

  CsvWriter csv((ctx.out_dir / "deficit_scan.csv").string(),
                ctx.resolved.dump(),
                {"family_id", "d", "p", "i", "e", "deficit",
                 "improved_deficit", "status"});
  bool numerical_failure = false;
  for (const InterpolationParams& params : plist) {
    std::optional<ImprovedCurve> curve;
    if (improved && !params.critical()) {
      Real e_max = 0.0;
      for (auto& [id, u] : members) e_max = std::max(e_max, entropy_e(u, params));
      const Real p_eff = params.log_case ? 2.0 : params.p;
      Real s_max = 1.2 * e_max + 1e-3;
      if (p_eff > 2.0) s_max = std::min(s_max, 0.95 / (p_eff - 2.0));
      FlowExponents exps = flow_exponents(params, Beta{beta_star(params)});
      if (exps.gamma > 0.0) curve = solve_phi(params, exps, s_max);
    }
    const Index n = members.size();
    auto rows = parallel_rows(n, ctx.threads, [&](Index idx) {
      const auto& [id, u] = members[idx];
      std::vector<std::string> cells;
      try {
        DeficitReport rep = gns_deficit(u, params, curve ? &*curve : nullptr);
        cells = {id,
                 std::to_string(d),
                 params.log_case ? "log" : nn(params.p),
                 nn(rep.i),
                 nn(rep.e),
                 nn(rep.deficit),
                 rep.has_improved ? nn(rep.improved_deficit) : "nan",
                 "ok"};
      } catch (const error& err) {
        cells = {id, std::to_string(d),
                 params.log_case ? "log" : nn(params.p),
                 "nan", "nan", "nan", "nan",
                 std::string("failed:") + err.what()};
      }
      return cells;
    });
    for (auto& r : rows) {
      if (r.back() != "ok") numerical_failure = true;
      csv.row(r);
    }
  }
  csv.comment("status: " + std::string(numerical_failure ? "row-failures" : "ok"));
  return numerical_failure ? 3 : 0;
}

// ---------------------------------------------------------------------------
// flow-run
int cmd_flow_run(const json& cfg, Context& ctx) {
  check_keys(cfg, {"experiment", "d", "p", "grid_n", "beta", "dt0", "t_end",
                   "monitor_stride", "tol", "stop_deficit", "scheme",
                   "conserve_mass", "allow_m_outside", "u0", "seed", "out_dir",
                   "threads"});
  const int d = cfg.at("d").get<int>();
  InterpolationParams params = params_from_json(d, cfg.at("p"));

  FlowConfig fc;
  fc.params = params;
  fc.exps = flow_exponents(params, Beta{beta_from_json(params, cfg.value("beta", json("star")))});
  fc.dt0 = cfg.value("dt0", 1e-3);
  fc.t_end = cfg.value("t_end", 8.0);
  fc.monitor_stride = cfg.value("monitor_stride", 8);
  fc.tol = cfg.value("tol", 1e-9);
  fc.stop_deficit = cfg.value("stop_deficit", 1e-7);
  fc.conserve_mass = cfg.value("conserve_mass", true);
  fc.allow_m_outside = cfg.value("allow_m_outside", false);
  const std::string scheme = cfg.value("scheme", std::string("semi-implicit"));
  if (scheme == "semi-implicit")
    fc.scheme = FlowScheme::SemiImplicit;
  else if (scheme == "explicit-adaptive")
    fc.scheme = FlowScheme::ExplicitAdaptive;
  else
    throw config_error("scheme must be semi-implicit|explicit-adaptive");

  const int grid_n = cfg.value("grid_n", 48);
  GridPtr grid = build_grid(d, grid_n);
  SphereFunction u0 = constant_function(grid, 1.0);
  if (cfg.contains("u0")) {
    const json& uj = cfg.at("u0");
    check_keys(uj, {"kind", "eps", "amplitude", "degree_min", "degree_max",
                    "value"});
    const std::string kind = uj.at("kind").get<std::string>();
    if (kind == "constant") {
      u0 = constant_function(grid, uj.value("value", 1.0));
    } else if (kind == "one-plus-z") {
      const Real eps = uj.value("eps", 0.3);
      u0 = sample(grid, [eps](Real z) { return 1.0 + eps * z; });
    } else if (kind == "bandlimited-random") {
      auto rng = row_rng(ctx.seed, 0);
      u0 = random_bandlimited(grid, rng, uj.value("amplitude", 0.3),
                              uj.value("degree_min", 1),
                              uj.value("degree_max", 6));
    } else {
      throw config_error("u0.kind must be constant|one-plus-z|bandlimited-random");
    }
  }

  FlowTrace trace = run(u0, fc);

  CsvWriter csv((ctx.out_dir / "flow_trace.csv").string(), ctx.resolved.dump(),
                {"t", "i", "e", "mass", "deficit", "improved"});
  int deficit_up = 0, improved_up = 0;
  Real mass0 = trace.records.front().mass;
  Real mass_drift = 0.0;
  const Real scale = std::max(trace.records.front().i, Real(1));
  for (std::size_t k = 0; k < trace.records.size(); ++k) {
    const FlowRecord& rec = trace.records[k];
    csv.row({nn(rec.t), nn(rec.i), nn(rec.e), nn(rec.mass), nn(rec.deficit),
             nn(rec.improved)});
    if (k > 0) {
      if (rec.deficit > trace.records[k - 1].deficit + 1e-8 * scale)
        ++deficit_up;
      if (std::isfinite(rec.improved) &&
          rec.improved > trace.records[k - 1].improved + 1e-8 * scale)
        ++improved_up;
      mass_drift = std::max(mass_drift, std::abs(rec.mass - mass0) /
                                            std::abs(mass0));
    }
  }
  csv.comment("status: ok deficit_violations=" + std::to_string(deficit_up) +
              " improved_violations=" + std::to_string(improved_up) +
              " mass_drift=" + nn(mass_drift) +
              (trace.stopped_on_deficit ? " stopped=deficit" : " stopped=t_end"));
  return 0;
}

// ---------------------------------------------------------------------------
// improved-curve
int cmd_improved_curve(const json& cfg, Context& ctx) {
  check_keys(cfg, {"experiment", "d", "p", "beta", "s_max", "tol", "n_out",
                   "seed", "out_dir", "threads"});
  const int d = cfg.at("d").get<int>();
  InterpolationParams params = params_from_json(d, cfg.at("p"));
  const Real p_eff = params.log_case ? 2.0 : params.p;
  if (!params.log_case && (params.p <= 1.0 || params.critical()))
    throw config_error("improved-curve: requires p in (1,2] or (2,2*)");
  FlowExponents exps = flow_exponents(
      params, Beta{beta_from_json(params, cfg.value("beta", json("star")))});

  Real s_max;
  if (cfg.contains("s_max") && cfg.at("s_max").is_number())
    s_max = cfg.at("s_max").get<Real>();
  else
    s_max = p_eff > 2.0 ? 0.8 / (p_eff - 2.0) : 2.0;
  const Real tol = cfg.value("tol", 1e-10);
  const int n_out = cfg.value("n_out", 200);

  ImprovedCurve curve = solve_phi(params, exps, s_max, tol);
  CsvWriter csv((ctx.out_dir / "improved_curve.csv").string(),
                ctx.resolved.dump(), {"s", "phi", "psi"});
  for (int k = 0; k <= n_out; ++k) {
    const Real s = s_max * k / Real(n_out);
    csv.row({nn(s), nn(curve.phi(s)), nn(curve.psi(s))});
  }
  csv.comment("status: ok gamma=" + nn(exps.gamma) +
              " beta=" + nn(exps.beta) + " delta=" + nn(exps.delta));
  return 0;
}

// ---------------------------------------------------------------------------
// be-quotient
int cmd_be_quotient(const json& cfg, Context& ctx) {
  check_keys(cfg, {"experiment", "d", "k_values", "eps_values", "grid_n",
                   "disc_degree", "seed", "out_dir", "threads"});
  const int d = cfg.at("d").get<int>();
  const int grid_n = cfg.value("grid_n", 96);
  const int disc_degree = cfg.value("disc_degree", 36);
  std::vector<int> k_values = cfg.value("k_values", std::vector<int>{2});
  std::vector<Real> eps_values =
      cfg.value("eps_values", std::vector<Real>{3e-2, 1.5e-2, 7.5e-3});

  GridPtr grid = build_grid(d, grid_n);
  DiscGridPtr disc = build_disc_grid(d, disc_degree);
  InterpolationParams params = make_params(d, 2.0 * d / (d - 2.0));

  CsvWriter csv((ctx.out_dir / "be_quotient.csv").string(), ctx.resolved.dump(),
                {"k", "eps", "quotient", "limit_estimate", "reference",
                 "status"});
  bool failure = false;
  for (int k : k_values) {
    struct Point {
      Real eps, quotient;
      bool ok;
    };
    std::vector<Point> pts;
    for (Real eps : eps_values) {
      Point pt{eps, 0.0, true};
      try {
        Vector coeffs = Vector::Zero(grid->degree_cap() + 1);
        coeffs[0] = 1.0;
        coeffs[k] = eps;
        SphereFunction u = synthesize(grid, coeffs);
        DiscFunction f = embed_axis_profile(disc, push_to_plane(u));
        pt.quotient = stability_quotient(f);
      } catch (const error&) {
        pt.ok = false;
        failure = true;
      }
      pts.push_back(pt);
    }
    // Extrapolate eps -> 0 linearly from the two smallest eps.
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return a.eps < b.eps; });
    Real limit = std::numeric_limits<Real>::quiet_NaN();
    if (pts.size() >= 2 && pts[0].ok && pts[1].ok) {
      const Real e1 = pts[0].eps, e2 = pts[1].eps;
      limit = pts[0].quotient -
              e1 * (pts[1].quotient - pts[0].quotient) / (e2 - e1);
    } else if (!pts.empty() && pts[0].ok) {
      limit = pts[0].quotient;
    }
    const Real lambda_k = Real(k) * (k + d - 1);
    const Real reference =
        k >= 2 ? (lambda_k - d) / (lambda_k + params.A)
               : std::numeric_limits<Real>::quiet_NaN();
    for (const Point& pt : pts)
      csv.row({std::to_string(k), nn(pt.eps), nn(pt.quotient), nn(limit),
               nn(reference), pt.ok ? "ok" : "failed"});
  }
  csv.comment(std::string("status: ") + (failure ? "row-failures" : "ok"));
  return failure ? 3 : 0;
}

// ---------------------------------------------------------------------------
// lsi-quotient
int cmd_lsi_quotient(const json& cfg, Context& ctx) {
  check_keys(cfg, {"experiment", "gauss_n", "k_values", "eps_values", "seed",
                   "out_dir", "threads"});
  const int gauss_n = cfg.value("gauss_n", 96);
  std::vector<int> k_values = cfg.value("k_values", std::vector<int>{2, 3, 4});
  std::vector<Real> eps_values =
      cfg.value("eps_values", std::vector<Real>{4e-3, 2e-3, 1e-3});
  GaussianGridPtr grid = build_gaussian_grid(1, gauss_n);

  CsvWriter csv((ctx.out_dir / "lsi_quotient.csv").string(),
                ctx.resolved.dump(),
                {"k", "eps", "ratio", "limit_estimate", "reference"});
  for (int k : k_values) {
    std::vector<std::pair<Real, Real>> pts;
    for (Real eps : eps_values) {
      GaussianFunction h = hermite_function(grid, k);
      GaussianFunction u(grid, (1.0 + eps * h.values.array()).matrix());
      pts.emplace_back(eps, stability_ratio(u));
    }
    std::sort(pts.begin(), pts.end());
    Real limit = pts[0].second;
    if (pts.size() >= 2)
      limit = pts[0].second - pts[0].first *
                                  (pts[1].second - pts[0].second) /
                                  (pts[1].first - pts[0].first);
    for (auto& [eps, ratio] : pts)
      csv.row({std::to_string(k), nn(eps), nn(ratio), nn(limit),
               nn(2.0 * kPi * (k - 1))});
  }
  csv.comment("status: ok");
  return 0;
}

// ---------------------------------------------------------------------------
// competing
int cmd_competing(const json& cfg, Context& ctx) {
  check_keys(cfg, {"experiment", "mode", "d", "disc_degree", "gauss_n",
                   "n_functions", "n_max", "stop_tol", "seed", "out_dir",
                   "threads"});
  const std::string mode = cfg.value("mode", std::string("euclidean"));
  const int n_functions = cfg.value("n_functions", 10);
  const int n_max = cfg.value("n_max", 50);
  const Real stop_tol = cfg.value("stop_tol", 1e-3);

  CsvWriter csv((ctx.out_dir / "competing.csv").string(), ctx.resolved.dump(),
                {"function_id", "n", "distance", "energy"});
  if (mode == "euclidean") {
    const int d = cfg.value("d", 3);
    const int disc_degree = cfg.value("disc_degree", 36);
    DiscGridPtr disc = build_disc_grid(d, disc_degree);
    for (int id = 0; id < n_functions; ++id) {
      auto rng = row_rng(ctx.seed, id);
      const Real a1 = 0.5 + 1.5 * uniform(rng);
      const Real a2 = 0.5 + 1.5 * uniform(rng);
      const Real b1 = -0.7 + 1.4 * uniform(rng);
      const Real b2 = -0.7 + 1.4 * uniform(rng);
      const Real c2 = 0.3 + 0.7 * uniform(rng);
      auto f = [&](Real s, Real t) {
        return g_manifold_value(d, a1, b1, 1.0, s, t) +
               g_manifold_value(d, a2, b2, c2, s, t);
      };
      DiscFunction f0 = from_euclidean(disc, f);
      CompetingDiagnostics diag = competing_iterate(f0, n_max, stop_tol);
      for (const CompetingRecord& rec : diag.records)
        csv.row({std::to_string(id), std::to_string(rec.n), nn(rec.distance),
                 nn(rec.grad_norm)});
    }
  } else if (mode == "gaussian") {
    const int gauss_n = cfg.value("gauss_n", 96);
    GaussianGridPtr grid = build_gaussian_grid(1, gauss_n);
    for (int id = 0; id < n_functions; ++id) {
      auto rng = row_rng(ctx.seed, id);
      const Real amp = 0.2 + 0.5 * uniform(rng);
      const Real slope = 2.0 + 4.0 * uniform(rng);
      const Real center = -0.5 + uniform(rng);
      GaussianFunction u0 = sample1d(grid, [&](Real x) {
        return 1.0 + amp / (1.0 + std::exp(-slope * (x - center)));
      });
      GaussianCompetingDiagnostics diag =
          gaussian_competing_iterate(u0, n_max, stop_tol);
      for (const GaussianCompetingRecord& rec : diag.records)
        csv.row({std::to_string(id), std::to_string(rec.n), nn(rec.distance),
                 nn(rec.deficit)});
    }
  } else {
    throw config_error("mode must be euclidean|gaussian");
  }
  csv.comment("status: ok");
  return 0;
}

// ---------------------------------------------------------------------------
// lift
int cmd_lift(const json& cfg, Context& ctx) {
  check_keys(cfg, {"experiment", "d_values", "norm_d_values", "gauss_n",
                   "seed", "out_dir", "threads"});
  std::vector<int> d_values =
      cfg.value("d_values", std::vector<int>{100, 1000, 10000});
  std::vector<int> norm_d = cfg.value("norm_d_values", std::vector<int>{5, 10, 20});
  const int gauss_n = cfg.value("gauss_n", 80);

  CsvWriter csv((ctx.out_dir / "lift.csv").string(), ctx.resolved.dump(),
                {"check", "d", "value", "reference", "error"});
  for (int d : d_values) {
    MomentPair mp = lift_moments(d, {2});
    csv.row({"x1_sq_moment", std::to_string(d), nn(mp.sphere_value),
             nn(mp.gauss_value), nn(std::abs(mp.sphere_value - mp.gauss_value))});
    const Real quad = sigma_moment_quadrature(d, 2);
    csv.row({"x1_sq_quadrature", std::to_string(d), nn(quad),
             nn(mp.sphere_value), nn(std::abs(quad - mp.sphere_value))});
  }
  for (int d : norm_d) {
    const Real z = mu_d_normalization(d);
    csv.row({"mu_d_normalization", std::to_string(d), nn(z), nn(1.0),
             nn(std::abs(z - 1.0))});
  }
  GaussianGridPtr grid = build_gaussian_grid(1, gauss_n);
  for (int d : d_values) {
    GaussianFunction he2 = hermite_function(grid, 2);
    SigmaLiftFunction R = build_R_d(he2, d);
    OrthogonalityResiduals res = orthogonality_residuals(R);
    csv.row({"Rd_mean_residual", std::to_string(d), nn(res.mean), nn(0.0),
             nn(std::abs(res.mean))});
    csv.row({"Rd_coord_residual", std::to_string(d), nn(res.coordinate[0]),
             nn(0.0), nn(std::abs(res.coordinate[0]))});
  }
  GaussianFunction h = sample1d(grid, [](Real x) { return std::exp(x); });
  for (Real p : {1.02, 1.01}) {
    PToOneLimit lim = p_to_one_limit(h, p);
    csv.row({"p_to_one_gap", "0", nn(lim.gap), nn(0.0), nn(lim.gap)});
  }
  csv.comment("status: ok");
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  std::string usage =
      "usage: ineq-lab <deficit-scan|flow-run|improved-curve|be-quotient|"
      "lsi-quotient|competing|lift> --config <path> [--out <dir>] "
      "[--seed <u64>] [--threads <n>]";
  try {
    if (argc < 2) throw config_error(usage);
    const std::string sub = argv[1];
    std::string config_path;
    std::string out_override;
    std::optional<std::uint64_t> seed_override;
    int threads = 1;
    for (int i = 2; i < argc; ++i) {
      const std::string arg = argv[i];
      auto next = [&]() -> std::string {
        if (i + 1 >= argc) throw config_error("missing value after " + arg);
        return argv[++i];
      };
      if (arg == "--config")
        config_path = next();
      else if (arg == "--out")
        out_override = next();
      else if (arg == "--seed")
        seed_override = std::stoull(next());
      else if (arg == "--threads")
        threads = std::stoi(next());
      else
        throw config_error("unknown argument: " + arg);
    }
    if (config_path.empty()) throw config_error(usage);

    std::ifstream in(config_path);
    if (!in) throw config_error("cannot open config: " + config_path);
    json cfg;
    try {
      in >> cfg;
    } catch (const json::exception& e) {
      throw config_error(std::string("config parse error: ") + e.what());
    }
    if (cfg.contains("experiment") &&
        cfg.at("experiment").get<std::string>() != sub)
      throw config_error("config experiment does not match subcommand");

    Context ctx;
    const fs::path config_dir = fs::absolute(config_path).parent_path();
    fs::path out = cfg.value("out_dir", std::string("."));
    if (!out_override.empty()) out = out_override;
    ctx.out_dir = out.is_absolute() ? out : config_dir / out;
    fs::create_directories(ctx.out_dir);
    ctx.seed = seed_override.value_or(cfg.value("seed", 1));
    ctx.threads = std::max(threads, cfg.value("threads", 1));
    ctx.resolved = cfg;
    ctx.resolved["seed"] = ctx.seed;
    ctx.resolved["experiment"] = sub;

    if (sub == "deficit-scan") return cmd_deficit_scan(cfg, ctx);
    if (sub == "flow-run") return cmd_flow_run(cfg, ctx);
    if (sub == "improved-curve") return cmd_improved_curve(cfg, ctx);
    if (sub == "be-quotient") return cmd_be_quotient(cfg, ctx);
    if (sub == "lsi-quotient") return cmd_lsi_quotient(cfg, ctx);
    if (sub == "competing") return cmd_competing(cfg, ctx);
    if (sub == "lift") return cmd_lift(cfg, ctx);
    throw config_error("unknown subcommand: " + sub);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace ineq
