// Command-line driver: steady-layer construction, the three evolution
// drivers, the two convergence studies and the property-check suites.
// Exit codes: 0 success, 1 assertion failure, 2 configuration error,
// 3 runtime failure (blow-up or I/O).

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "morphlab/io.hpp"
#include "morphlab/singular.hpp"
#include "morphlab/verification.hpp"

using namespace morphlab;

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
  std::string config_path;
  unsigned long seed_override = 0;
  bool seed_set = false;
};

RunConfig resolve(const CommonOpts& opts) {
  RunConfig cfg = opts.config_path.empty() ? RunConfig{} : load_config(opts.config_path);
  if (opts.seed_set) cfg.seed = opts.seed_override;
  return cfg;
}

fs::path ensure_out_dir(const RunConfig& cfg) {
  const fs::path dir = resolve_out_dir(cfg);
  fs::create_directories(dir);
  return dir;
}

void print_report(const CheckReport& rep) {
  int active = 0, failed = 0;
  for (const auto& r : rep.rows) {
    if (r.skipped) continue;
    ++active;
    if (!r.pass) ++failed;
  }
  std::printf("[%s] %s: %d rows checked, %d failed (seed %lu, tol %g)\n",
              rep.passed() ? "PASS" : "FAIL", rep.name.c_str(), active, failed,
              rep.seed, rep.tolerance);
  for (const auto& r : rep.rows)
    if (!r.skipped && !r.pass)
      std::printf("    failed row: %s lhs=%.6g rhs=%.6g\n", r.label.c_str(), r.lhs,
                  r.rhs);
}

std::vector<double> read_samples_1d(const fs::path& p, int n1) {
  const Snapshot s = read_snapshot(p.string());
  if (s.meta.repr != "samples")
    throw std::runtime_error("initial data must use repr=samples: " + p.string());
  if (s.meta.shape != std::vector<int>{n1})
    throw std::runtime_error("initial data shape mismatch: " + p.string());
  return s.values;
}

UState load_initial_state(const std::string& dir, int n1, int n2) {
  const fs::path d = dir;
  const Snapshot s1 = read_snapshot((d / "u01.snap").string());
  if (s1.meta.repr != "samples" || s1.meta.shape != std::vector<int>{n1, n2})
    throw std::runtime_error("u01.snap must hold n1 x n2 samples");
  const CollocationGrid2D g2 = collocation_grid_2d(n1, n2);
  const CollocationGrid1D g1 = g2.gx;
  UState u;
  u.u1 = to_spectral(s1.values, g2, n1, n2);
  u.u2 = to_spectral(read_samples_1d(d / "u02.snap", n1), g1, n1);
  u.u3 = read_samples_1d(d / "u03.snap", n1);
  u.u4 = read_samples_1d(d / "u04.snap", n1);
  u.u5 = read_samples_1d(d / "u05.snap", n1);
  return u;
}

void write_samples(const fs::path& path, const std::vector<double>& v,
                   const std::string& component, const std::string& hash, double t) {
  SnapshotMeta meta;
  meta.component = component;
  meta.repr = "samples";
  meta.shape = {static_cast<int>(v.size())};
  meta.config_hash = hash;
  meta.time = t;
  write_snapshot(path.string(), meta, v);
}

int cmd_steady(const CommonOpts& opts, double s_exp, std::vector<double> h_list,
               std::vector<double> eps_list) {
  const RunConfig cfg = resolve(opts);
  cfg.params.validate();
  const fs::path out = ensure_out_dir(cfg);
  const std::string hash = cfg.hash();

  const SpectralField2D m = build_m_mu(cfg.params, cfg.h, cfg.epsilon, cfg.solver.n1,
                                       cfg.solver.n2);
  write_field((out / "m_mu.snap").string(), m, "m_mu", hash, cfg.h);
  const SpectralField1D m0 = build_m_zero(cfg.params, cfg.solver.n1);
  write_field((out / "m_zero.snap").string(), m0, "m_zero", hash);

  if (h_list.empty()) h_list = {1.0, 0.5, 0.25, 0.125};
  if (eps_list.empty()) eps_list = {0.4, 0.2, 0.1, 0.05, 0.0};
  const auto rows = swallow_diagnostics(cfg.params, h_list, eps_list, s_exp,
                                        4 * cfg.solver.n1, 4 * cfg.solver.n2);
  std::ofstream csv(out / "swallow.csv");
  csv << "# config_hash=" << hash << "\n";
  csv << "h,eps,dist_mu_mu0,eta_delta_norm,dist_mu0_Em0,lam01_pow\n";
  for (const auto& r : rows)
    csv << format_double(r.h) << ',' << format_double(r.eps) << ','
        << format_double(r.dist_mu_mu0) << ',' << format_double(r.eta_delta_norm)
        << ',' << format_double(r.dist_mu0_Em0) << ',' << format_double(r.lam01_pow)
        << "\n";
  std::printf("steady: wrote m_mu.snap, m_zero.snap, swallow.csv (%zu rows) to %s\n",
              rows.size(), out.string().c_str());
  return 0;
}

int cmd_evolve(const CommonOpts& opts, const std::string& system,
               const std::string& ic_dir) {
  const RunConfig cfg = resolve(opts);
  cfg.params.validate();
  const fs::path out = ensure_out_dir(cfg);
  const std::string hash = cfg.hash();
  const int n1 = cfg.solver.n1, n2 = cfg.solver.n2;

  if (system == "1d") {
    const UState1D u0 = ic_dir.empty() ? demo_state_1d(n1)
                                       : flatten_state(load_initial_state(ic_dir, n1, n2));
    const Trajectory1D traj = evolve_1d_limit(u0, cfg.params, cfg.solver);
    write_trajectory_csv((out / "trajectory.csv").string(), traj.diag, hash);
    const UState1D uf = recover_u(traj, traj.snapshots.size() - 1);
    write_field((out / "u1_final.snap").string(), uf.u1, "u1", hash, traj.times.back());
    write_field((out / "u2_final.snap").string(), uf.u2, "u2", hash, traj.times.back());
    write_samples(out / "u3_final.snap", uf.u3, "u3", hash, traj.times.back());
    write_samples(out / "u4_final.snap", uf.u4, "u4", hash, traj.times.back());
    write_samples(out / "u5_final.snap", uf.u5, "u5", hash, traj.times.back());
    write_field((out / "m_zero.snap").string(), traj.m0, "m_zero", hash);
  } else {
    const UState u0 =
        ic_dir.empty() ? demo_state_2d(n1, n2) : load_initial_state(ic_dir, n1, n2);
    Trajectory traj;
    if (system == "2d") {
      traj = evolve_2d(u0, cfg.params, cfg.h, cfg.epsilon, cfg.solver);
    } else if (system == "regular") {
      std::vector<double> omega(n1, 0.0);
      if (cfg.epsilon > 0.0) {
        const Mollifier eta{MollifierSpec{cfg.epsilon}};
        const CollocationGrid1D g = collocation_grid_I(n1);
        for (int k = 0; k < n1; ++k) omega[k] = cfg.params.p[0] * eta.eval(g.x[k]);
      }
      traj = evolve_regular(u0, cfg.params, cfg.h, omega, cfg.solver);
    } else {
      throw CLI::ValidationError("--system must be 2d, regular or 1d");
    }
    write_trajectory_csv((out / "trajectory.csv").string(), traj.diag, hash);
    const UState uf = recover_u(traj, traj.snapshots.size() - 1);
    write_field((out / "u1_final.snap").string(), uf.u1, "u1", hash, cfg.h,
                traj.times.back());
    write_field((out / "u2_final.snap").string(), uf.u2, "u2", hash, traj.times.back());
    write_samples(out / "u3_final.snap", uf.u3, "u3", hash, traj.times.back());
    write_samples(out / "u4_final.snap", uf.u4, "u4", hash, traj.times.back());
    write_samples(out / "u5_final.snap", uf.u5, "u5", hash, traj.times.back());
    write_field((out / "m_mu.snap").string(), traj.m, "m_mu", hash, cfg.h);
  }
  std::printf("evolve (%s): wrote trajectory.csv and final snapshots to %s\n",
              system.c_str(), out.string().c_str());
  return 0;
}

int cmd_reduce(const CommonOpts& opts, const std::string& study,
               double max_final_ratio) {
  const RunConfig cfg = resolve(opts);
  cfg.params.validate();
  const fs::path out = ensure_out_dir(cfg);
  const std::string hash = cfg.hash();
  const UState u0 = demo_state_2d(cfg.solver.n1, cfg.solver.n2);
  bool ok = true;

  if (study == "eps" || study == "both") {
    const std::vector<double> eps_list{0.4, 0.2, 0.1, 0.05};
    const RateTable tab =
        epsilon_limit_study(cfg.params, cfg.h, eps_list, cfg.solver.T, cfg.solver, u0);
    write_rate_table_csv((out / "eps_study.csv").string(), tab, hash);
    const bool mono = tab.strictly_decreasing(0);
    const double ratio = tab.columns[0].back() / tab.columns[0].front();
    std::printf("[%s] eps-study: monotone=%d final/first=%.3f (required < %.3f)\n",
                mono && ratio < max_final_ratio ? "PASS" : "FAIL", int(mono), ratio,
                max_final_ratio);
    ok = ok && mono && ratio < max_final_ratio;
  }
  if (study == "h" || study == "both") {
    const std::vector<double> h_list{1.0, 0.5, 0.25, 0.125};
    const RateTable tab =
        dimension_reduction_study(cfg.params, h_list, cfg.solver.T, cfg.solver, u0);
    write_rate_table_csv((out / "h_study.csv").string(), tab, hash);
    const bool mono = tab.strictly_decreasing(0);
    const double slope = tab.loglog_slope(0);
    const bool slope_ok = slope >= 0.8 * cfg.solver.theta;
    const auto sanity = dimension_reduction_sanity(h_list, cfg.solver);
    double worst = 0.0;
    for (double d : sanity) worst = std::max(worst, d);
    const bool sane = worst < 1e-8;
    std::printf(
        "[%s] h-study: monotone=%d slope=%.4f (required >= %.4f) sanity=%.3g\n",
        mono && slope_ok && sane ? "PASS" : "FAIL", int(mono), slope,
        0.8 * cfg.solver.theta, worst);
    ok = ok && mono && slope_ok && sane;
  }
  if (study != "eps" && study != "h" && study != "both")
    throw CLI::ValidationError("--study must be eps, h or both");
  return ok ? 0 : 1;
}

int cmd_mollify_check(const CommonOpts& opts, double s_exp, int modes) {
  const RunConfig cfg = resolve(opts);
  const fs::path out = ensure_out_dir(cfg);
  const std::vector<double> eps_list{0.4,   0.2,   0.1,   0.05,   0.02,   0.01,
                                     0.004, 0.002, 0.001, 0.0004, 0.0002, 0.0001};
  const RateTable tab = mollifier_convergence_study(s_exp, eps_list, modes);
  write_rate_table_csv((out / "mollify.csv").string(), tab, cfg.hash());

  const bool mono = tab.strictly_decreasing(0);
  const bool tenth = tab.columns[0].back() < 0.1 * tab.columns[0].front();
  bool trunc_ok = true;
  for (std::size_t r = 0; r < tab.param.size(); ++r) {
    if (tab.param[r] < 0.05) continue;  // truncation control applies to resolved rows
    const double rel = std::abs(tab.columns[1][r] - tab.columns[0][r]) / tab.columns[0][r];
    trunc_ok = trunc_ok && rel < 0.01;
  }
  std::printf("[%s] mollify-check: monotone=%d final<0.1*first=%d trunc<1%%=%d\n",
              mono && tenth && trunc_ok ? "PASS" : "FAIL", int(mono), int(tenth),
              int(trunc_ok));
  return mono && tenth && trunc_ok ? 0 : 1;
}

CheckReport check_identities(unsigned long seed) {
  CheckReport rep;
  rep.name = "spectral-identities";
  rep.seed = seed;
  rep.tolerance = 1e-12;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  const int n1 = 64, n2 = 32;
  double worst_pair = 0.0, worst_ident = 0.0, worst_comm = 0.0, worst_idem = 0.0;
  for (int rep_i = 0; rep_i < 100; ++rep_i) {
    SpectralField1D u(n1);
    for (double& v : u.a) v = dist(rng);
    SpectralField2D w(n1, n2);
    for (double& v : w.a) v = dist(rng);

    double dot_ep = 0.0;
    const SpectralField2D eu = extend_constant(u, n2);
    for (std::size_t k = 0; k < w.a.size(); ++k) dot_ep += eu.a[k] * w.a[k];
    const SpectralField1D pw = vertical_average(w);
    double dot_p = 0.0;
    for (int i = 0; i < n1; ++i) dot_p += u.a[i] * pw.a[i];
    worst_pair = std::max(worst_pair, std::abs(dot_ep - dot_p));

    const SpectralField1D pe = vertical_average(eu);
    const SpectralField1D te = bottom_trace(eu);
    for (int i = 0; i < n1; ++i) {
      worst_ident = std::max(worst_ident, std::abs(pe.a[i] - u.a[i]));
      worst_ident = std::max(worst_ident, std::abs(te.a[i] - u.a[i]));
    }

    const SpectralField2D c1 = resolvent_Omega(eu, 1.3, 0.45) -
                               extend_constant(resolvent_I(u, 1.3), n2);
    const SpectralField2D c2 =
        semigroup_Omega(eu, 0.21, 0.45) - extend_constant(semigroup_I(u, 0.21), n2);
    for (double v : c1.a) worst_comm = std::max(worst_comm, std::abs(v));
    for (double v : c2.a) worst_comm = std::max(worst_comm, std::abs(v));

    const SpectralField2D once = subtract_vertical_mean(w);
    const SpectralField2D twice = subtract_vertical_mean(once);
    for (std::size_t k = 0; k < once.a.size(); ++k)
      worst_idem = std::max(worst_idem, std::abs(once.a[k] - twice.a[k]));
  }
  rep.rows.push_back({"pairing E-P", worst_pair, 1e-12, worst_pair <= 1e-12, false});
  rep.rows.push_back(
      {"PE = TrE = identity", worst_ident, 1e-12, worst_ident <= 1e-12, false});
  rep.rows.push_back({"resolvent/semigroup commute with E", worst_comm, 1e-12,
                      worst_comm <= 1e-12, false});
  rep.rows.push_back(
      {"mean-removal idempotent", worst_idem, 1e-12, worst_idem <= 1e-12, false});
  return rep;
}

int cmd_verify(const CommonOpts& opts, const std::string& suite) {
  const RunConfig cfg = resolve(opts);
  const fs::path out = ensure_out_dir(cfg);
  std::vector<CheckReport> reports;

  const bool all = suite == "all";
  if (all || suite == "identities") reports.push_back(check_identities(cfg.seed));
  if (all || suite == "elementary") reports.push_back(check_elementary_inequalities());
  if (all || suite == "gronwall") {
    const std::vector<GronwallTuple> tuples{
        {1.0, 1.0, 0.0, 0.0, 1.0},  {2.0, 0.5, 0.0, 0.0, 2.0},
        {0.3, 2.0, 0.0, 0.0, 0.5},  {1.0, 1.0, 0.25, 0.5, 1.0},
        {0.5, 2.0, 0.1, 0.3, 0.5},  {1.0, 1.0, 0.0625, 0.75, 0.5},
        {1.0, 0.5, 0.5, 0.25, 1.0}, {2.0, 1.0, 0.3, 0.3, 1.0},
        {1.0, 2.0, 0.0, 0.5, 0.5},  {1.0, 2.0, 0.5, 0.0, 0.5},
    };
    reports.push_back(check_gronwall(tuples, 800));
  }
  if (all || suite == "trace")
    reports.push_back(check_trace_inequality(500, {0.3, 0.5, 0.75}, cfg.seed));
  if (all || suite == "iron") {
    IronConfig icfg;
    icfg.ss_list = {{0.0, 1.0},
                    {-0.25 - cfg.solver.theta, 0.5 + cfg.solver.theta},
                    {0.5, 0.5},
                    {0.0, 0.5}};
    reports.push_back(check_iron_estimates(icfg));
  }
  if (reports.empty())
    throw CLI::ValidationError(
        "--suite must be identities, elementary, gronwall, trace, iron or all");

  bool ok = true;
  for (const auto& rep : reports) {
    print_report(rep);
    std::string fname = rep.name.substr(0, rep.name.find(' '));
    for (char& c : fname)
      if (c == '/' || c == ' ') c = '_';
    write_check_report_csv((out / ("verify_" + fname + ".csv")).string(), rep);
    ok = ok && rep.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"morphlab: spectral solver and verification suite for the "
               "surface-bulk morphogen transport system"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "key=value configuration file");
    sub->add_option("--seed", opts.seed_override, "override the configured seed")
        ->each([&](const std::string&) { opts.seed_set = true; });
  };

  auto* steady = app.add_subcommand("steady", "build the steady boundary layers");
  double s_exp = 0.5;
  std::vector<double> h_list, eps_list;
  steady->add_option("--s", s_exp, "norm exponent for the collapse diagnostics");
  steady->add_option("--h-list", h_list, "aspect ratios for the diagnostics");
  steady->add_option("--eps-list", eps_list, "mollifier widths for the diagnostics");
  add_common(steady);

  auto* evolve = app.add_subcommand("evolve", "run one of the three solvers");
  std::string system = "2d";
  std::string ic_dir;
  evolve->add_option("--system", system, "2d, regular or 1d");
  evolve->add_option("--ic-dir", ic_dir, "directory with u01..u05 sample snapshots");
  add_common(evolve);

  auto* reduce = app.add_subcommand("reduce", "convergence studies");
  std::string study = "both";
  double max_final_ratio = 0.25;
  reduce->add_option("--study", study, "eps, h or both");
  reduce->add_option("--max-final-ratio", max_final_ratio,
                     "required final/first contraction for the eps study");
  add_common(reduce);

  auto* mollify = app.add_subcommand("mollify-check", "mollifier convergence study");
  double mollify_s = 0.25;
  int mollify_modes = 4096;
  mollify->add_option("--s", mollify_s, "dual-norm exponent");
  mollify->add_option("--modes", mollify_modes, "truncation for the dual norm");
  add_common(mollify);

  auto* verify = app.add_subcommand("verify", "property-check suites");
  std::string suite = "all";
  verify->add_option("--suite", suite,
                     "identities, elementary, gronwall, trace, iron or all");
  add_common(verify);

  CLI11_PARSE(app, argc, argv);

  try {
    if (steady->parsed()) return cmd_steady(opts, s_exp, h_list, eps_list);
    if (evolve->parsed()) return cmd_evolve(opts, system, ic_dir);
    if (reduce->parsed()) return cmd_reduce(opts, study, max_final_ratio);
    if (mollify->parsed()) return cmd_mollify_check(opts, mollify_s, mollify_modes);
    if (verify->parsed()) return cmd_verify(opts, suite);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const BlowUpError& e) {
    std::fprintf(stderr, "aborted: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "aborted: %s\n", e.what());
    return 3;
  }
  return 0;
}
