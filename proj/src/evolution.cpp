#include "morphlab/evolution.hpp"

#include <algorithm>
#include <cmath>

namespace morphlab {

void SolverConfig::validate() const {
  if (n1 <= 0 || n1 % 2 != 0)
    throw std::domain_error("SolverConfig: n1 must be positive and even");
  if (n2 <= 0) throw std::domain_error("SolverConfig: n2 must be positive");
  if (!(dt > 0.0) || !(T > dt))
    throw std::domain_error("SolverConfig: need 0 < dt < T");
  if (!(p_exp > 2.0)) throw std::domain_error("SolverConfig: p must exceed 2");
  const double theta_cap = std::min(1.0 / 16.0, 1.0 / (2.0 * p_exp));
  if (!(theta > 0.0 && theta < theta_cap))
    throw std::domain_error("SolverConfig: theta outside (0, min(1/16, 1/(2p)))");
  if (snapshot_stride <= 0)
    throw std::domain_error("SolverConfig: snapshot_stride must be positive");
}

double phi1(double x) {
  if (std::abs(x) < 1e-5) return 1.0 + x / 2.0 + x * x / 6.0;
  return std::expm1(x) / x;
}

double phi2(double x) {
  if (std::abs(x) < 1e-5) return 0.5 + x / 6.0 + x * x / 24.0;
  return (std::expm1(x) - x) / (x * x);
}

namespace {

void check_finite(const std::vector<double>& v, double t) {
  for (double x : v)
    if (!std::isfinite(x)) throw BlowUpError(t);
}

void check_finite_state(const ZState& z, double t) {
  check_finite(z.z1.a, t);
  check_finite(z.z2.a, t);
  check_finite(z.z3, t);
  check_finite(z.z4, t);
  check_finite(z.z5, t);
}

void check_finite_state(const ZState1D& z, double t) {
  check_finite(z.z1.a, t);
  check_finite(z.z2.a, t);
  check_finite(z.z3, t);
  check_finite(z.z4, t);
  check_finite(z.z5, t);
}

std::vector<double> clamp_nonneg(std::vector<double> v) {
  for (double& x : v) x = std::max(x, 0.0);
  return v;
}

double min_of(const std::vector<double>& v) {
  double m = v.empty() ? 0.0 : v[0];
  for (double x : v) m = std::min(m, x);
  return m;
}

// Exponential-step weights for a diagonal family: decay e^{dt l},
// w1 = dt phi1(dt l), w2 = dt phi2(dt l).
struct EtdWeights {
  std::vector<double> decay, w1, w2;
  void build(const std::vector<double>& l, double dt) {
    decay.resize(l.size());
    w1.resize(l.size());
    w2.resize(l.size());
    for (std::size_t k = 0; k < l.size(); ++k) {
      decay[k] = std::exp(dt * l[k]);
      w1[k] = dt * phi1(dt * l[k]);
      w2[k] = dt * phi2(dt * l[k]);
    }
  }
};

void axpy_weighted(std::vector<double>& x, const std::vector<double>& decay,
                   const std::vector<double>& w, const std::vector<double>& src) {
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = decay[k] * x[k] + w[k] * src[k];
}

void add_weighted(std::vector<double>& x, const std::vector<double>& w,
                  const std::vector<double>& src) {
  for (std::size_t k = 0; k < x.size(); ++k) x[k] += w[k] * src[k];
}

// Common pseudo-spectral plumbing for the three drivers.
struct Workspace {
  CollocationGrid1D base;
  CollocationGrid1D pad;   // product-evaluation grid (equals base when dealias off)
  CollocationGrid2D grid2; // n1 x n2 collocation grid
  bool dealias = false;
  int n1 = 0, n2 = 0;

  Workspace(const SolverConfig& cfg)
      : base(collocation_grid_I(cfg.n1)),
        pad(cfg.dealias ? collocation_grid_I(dealias_padding(cfg.n1)) : base),
        grid2(collocation_grid_2d(cfg.n1, cfg.n2)),
        dealias(cfg.dealias),
        n1(cfg.n1),
        n2(cfg.n2) {}

  // Values of nodal data on the product grid (identity when dealias is off).
  std::vector<double> lift(const std::vector<double>& nodal) const {
    if (!dealias) return nodal;
    return to_physical(to_spectral(nodal, base, n1), pad);
  }

  std::vector<double> synth_pad(const SpectralField1D& f) const {
    return to_physical(f, pad);
  }

  SpectralField1D analyze_pad(const std::vector<double>& samples) const {
    return to_spectral(samples, pad, n1);
  }
};

struct GEval {
  SpectralField1D g1hat, g2hat;     // boundary sources, n1 modes
  std::vector<double> g3, g4, g5;   // raw nodal values
};

// Evaluates the transformed reactions for a state whose surface trace values
// are already synthesised. m_base/m_pad carry the layer values on the two
// grids (zero vectors for the regular path in transformed form).
GEval eval_g(const Workspace& ws, const ModelParams& P, const SpectralField1D& tr1,
             const SpectralField1D& z2, const std::vector<double>& z3,
             const std::vector<double>& z4, const std::vector<double>& z5,
             const std::vector<double>& m_base, const std::vector<double>& m_pad) {
  GEval out;
  const int nb = ws.base.n();
  const std::vector<double> t1b = to_physical(tr1, ws.base);
  const std::vector<double> t2b = to_physical(z2, ws.base);
  out.g3.resize(nb);
  out.g4.resize(nb);
  out.g5.resize(nb);
  std::vector<double> g1b(nb), g2b(nb);
  for (int k = 0; k < nb; ++k) {
    const Vec5 g = reaction_g({t1b[k], t2b[k], z3[k], z4[k], z5[k]}, m_base[k], P);
    g1b[k] = g[0];
    g2b[k] = g[1];
    out.g3[k] = g[2];
    out.g4[k] = g[3];
    out.g5[k] = g[4];
  }
  if (!ws.dealias) {
    out.g1hat = to_spectral(g1b, ws.base, ws.n1);
    out.g2hat = to_spectral(g2b, ws.base, ws.n1);
    return out;
  }
  const int np = ws.pad.n();
  const std::vector<double> t1p = ws.synth_pad(tr1);
  const std::vector<double> t2p = ws.synth_pad(z2);
  const std::vector<double> z3p = ws.lift(z3);
  const std::vector<double> z4p = ws.lift(z4);
  const std::vector<double> z5p = ws.lift(z5);
  std::vector<double> g1p(np), g2p(np);
  for (int k = 0; k < np; ++k) {
    const Vec5 g = reaction_g({t1p[k], t2p[k], z3p[k], z4p[k], z5p[k]}, m_pad[k], P);
    g1p[k] = g[0];
    g2p[k] = g[1];
  }
  out.g1hat = ws.analyze_pad(g1p);
  out.g2hat = ws.analyze_pad(g2p);
  return out;
}

// Same for the original-variable reactions; omega enters the bulk source.
GEval eval_f(const Workspace& ws, const ModelParams& P, const SpectralField1D& tr1,
             const SpectralField1D& u2, const std::vector<double>& u3,
             const std::vector<double>& u4, const std::vector<double>& u5,
             const std::vector<double>& omega_base, const std::vector<double>& omega_pad) {
  GEval out;
  const int nb = ws.base.n();
  const std::vector<double> t1b = to_physical(tr1, ws.base);
  const std::vector<double> t2b = to_physical(u2, ws.base);
  out.g3.resize(nb);
  out.g4.resize(nb);
  out.g5.resize(nb);
  std::vector<double> f1b(nb), f2b(nb);
  for (int k = 0; k < nb; ++k) {
    const Vec5 f = reaction_f({t1b[k], t2b[k], u3[k], u4[k], u5[k]}, P);
    f1b[k] = f[0] + omega_base[k];
    f2b[k] = f[1];
    out.g3[k] = f[2];
    out.g4[k] = f[3];
    out.g5[k] = f[4];
  }
  if (!ws.dealias) {
    out.g1hat = to_spectral(f1b, ws.base, ws.n1);
    out.g2hat = to_spectral(f2b, ws.base, ws.n1);
    return out;
  }
  const int np = ws.pad.n();
  const std::vector<double> t1p = ws.synth_pad(tr1);
  const std::vector<double> t2p = ws.synth_pad(u2);
  const std::vector<double> u3p = ws.lift(u3);
  const std::vector<double> u4p = ws.lift(u4);
  const std::vector<double> u5p = ws.lift(u5);
  std::vector<double> f1p(np), f2p(np);
  for (int k = 0; k < np; ++k) {
    const Vec5 f = reaction_f({t1p[k], t2p[k], u3p[k], u4p[k], u5p[k]}, P);
    f1p[k] = f[0] + omega_pad[k];
    f2p[k] = f[1];
  }
  out.g1hat = ws.analyze_pad(f1p);
  out.g2hat = ws.analyze_pad(f2p);
  return out;
}

// Modewise linear factors per component.
struct LinearParts {
  EtdWeights z1;   // 2D, flattened row-major
  EtdWeights z2;   // 1D spectral
  EtdWeights z3;   // pointwise multiplier nodes
  double dt = 0.0;

  void build_2d(const ModelParams& P, double h, const SolverConfig& cfg,
                const std::vector<double>& trm_base) {
    dt = cfg.dt;
    std::vector<double> l1(static_cast<std::size_t>(cfg.n1) * cfg.n2);
    for (int i = 0; i < cfg.n1; ++i)
      for (int j = 0; j < cfg.n2; ++j)
        l1[static_cast<std::size_t>(i) * cfg.n2 + j] =
            eigenvalue_Omega(i, j, h) - P.b[0];
    z1.build(l1, dt);
    std::vector<double> l2(cfg.n1);
    for (int i = 0; i < cfg.n1; ++i) l2[i] = P.d * eigenvalue_I(i);
    z2.build(l2, dt);
    std::vector<double> l3(trm_base.size());
    for (std::size_t k = 0; k < trm_base.size(); ++k) l3[k] = -trm_base[k];
    z3.build(l3, dt);
  }

  void build_1d(const ModelParams& P, const SolverConfig& cfg,
                const std::vector<double>& m0_base) {
    dt = cfg.dt;
    std::vector<double> l1(cfg.n1);
    for (int i = 0; i < cfg.n1; ++i) l1[i] = eigenvalue_I(i) - P.b[0];
    z1.build(l1, dt);
    std::vector<double> l2(cfg.n1);
    for (int i = 0; i < cfg.n1; ++i) l2[i] = P.d * eigenvalue_I(i);
    z2.build(l2, dt);
    std::vector<double> l3(m0_base.size());
    for (std::size_t k = 0; k < m0_base.size(); ++k) l3[k] = -m0_base[k];
    z3.build(l3, dt);
  }
};

// One exponential step: state <- decay * state + w * source, explicit Euler
// (phi1 at zero eigenvalue) for the two integral-only components.
void apply_etd1(ZState& z, const LinearParts& lin, const GEval& G, int n2) {
  const SpectralField2D G1 = bottom_trace_adjoint(G.g1hat, n2);
  axpy_weighted(z.z1.a, lin.z1.decay, lin.z1.w1, G1.a);
  axpy_weighted(z.z2.a, lin.z2.decay, lin.z2.w1, G.g2hat.a);
  axpy_weighted(z.z3, lin.z3.decay, lin.z3.w1, G.g3);
  for (std::size_t k = 0; k < z.z4.size(); ++k) z.z4[k] += lin.dt * G.g4[k];
  for (std::size_t k = 0; k < z.z5.size(); ++k) z.z5[k] += lin.dt * G.g5[k];
}

void apply_rk2_correction(ZState& z, const LinearParts& lin, const GEval& G0,
                          const GEval& G1v, int n2) {
  const SpectralField2D d1 =
      bottom_trace_adjoint(G1v.g1hat, n2) - bottom_trace_adjoint(G0.g1hat, n2);
  add_weighted(z.z1.a, lin.z1.w2, d1.a);
  const SpectralField1D d2 = G1v.g2hat - G0.g2hat;
  add_weighted(z.z2.a, lin.z2.w2, d2.a);
  for (std::size_t k = 0; k < z.z3.size(); ++k)
    z.z3[k] += lin.z3.w2[k] * (G1v.g3[k] - G0.g3[k]);
  for (std::size_t k = 0; k < z.z4.size(); ++k)
    z.z4[k] += 0.5 * lin.dt * (G1v.g4[k] - G0.g4[k]);
  for (std::size_t k = 0; k < z.z5.size(); ++k)
    z.z5[k] += 0.5 * lin.dt * (G1v.g5[k] - G0.g5[k]);
}

void apply_etd1(ZState1D& z, const LinearParts& lin, const GEval& G) {
  axpy_weighted(z.z1.a, lin.z1.decay, lin.z1.w1, G.g1hat.a);
  axpy_weighted(z.z2.a, lin.z2.decay, lin.z2.w1, G.g2hat.a);
  axpy_weighted(z.z3, lin.z3.decay, lin.z3.w1, G.g3);
  for (std::size_t k = 0; k < z.z4.size(); ++k) z.z4[k] += lin.dt * G.g4[k];
  for (std::size_t k = 0; k < z.z5.size(); ++k) z.z5[k] += lin.dt * G.g5[k];
}

void apply_rk2_correction(ZState1D& z, const LinearParts& lin, const GEval& G0,
                          const GEval& G1v) {
  const SpectralField1D d1 = G1v.g1hat - G0.g1hat;
  add_weighted(z.z1.a, lin.z1.w2, d1.a);
  const SpectralField1D d2 = G1v.g2hat - G0.g2hat;
  add_weighted(z.z2.a, lin.z2.w2, d2.a);
  for (std::size_t k = 0; k < z.z3.size(); ++k)
    z.z3[k] += lin.z3.w2[k] * (G1v.g3[k] - G0.g3[k]);
  for (std::size_t k = 0; k < z.z4.size(); ++k)
    z.z4[k] += 0.5 * lin.dt * (G1v.g4[k] - G0.g4[k]);
  for (std::size_t k = 0; k < z.z5.size(); ++k)
    z.z5[k] += 0.5 * lin.dt * (G1v.g5[k] - G0.g5[k]);
}

void require_nonneg_samples(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (x < -1e-9)
      throw std::invalid_argument(std::string("negative initial data: ") + what);
}

void require_nonneg_u0(const UState& u0, const Workspace& ws) {
  require_nonneg_samples(to_physical(u0.u1, ws.grid2), "u1");
  require_nonneg_samples(to_physical(u0.u2, ws.base), "u2");
  require_nonneg_samples(u0.u3, "u3");
  require_nonneg_samples(u0.u4, "u4");
  require_nonneg_samples(u0.u5, "u5");
}

DiagRow make_diag_2d(const Trajectory& traj, const Workspace& ws, double t,
                     const ZState& z, double theta, double p) {
  DiagRow r;
  r.t = t;
  r.norm_z1_Z1 = xs_norm(z.z1, SobolevIndex{0.5 - theta});
  r.wnorm_z1_Z1plus = std::pow(t, 2.0 * theta) * xs_norm(z.z1, SobolevIndex{0.5 + theta});
  r.norm_z2 = xs_norm(z.z2, SobolevIndex{0.5});
  r.norm_z3_Lp = lp_norm(z.z3, p, ws.base);
  r.norm_z3_inf = sup_norm(z.z3);
  r.norm_z4_Lp = lp_norm(z.z4, p, ws.base);
  r.norm_z5_Lp = lp_norm(z.z5, p, ws.base);

  const UState u = from_z(z, traj.m);
  const std::vector<double> u1v = to_physical(u.u1, ws.grid2);
  const std::vector<double> u2v = to_physical(u.u2, ws.base);
  double mn = std::min(min_of(u1v), min_of(u2v));
  mn = std::min(mn, std::min(min_of(u.u3), std::min(min_of(u.u4), min_of(u.u5))));
  r.min_u_all = mn;
  double mx = 0.0;
  for (std::size_t k = 0; k < u.u3.size(); ++k)
    mx = std::max(mx, u.u3[k] + u.u4[k] + u.u5[k]);
  r.ode_sum_max = mx;
  return r;
}

DiagRow make_diag_1d(const Trajectory1D& traj, const Workspace& ws, double t,
                     const ZState1D& z, double theta, double p) {
  DiagRow r;
  r.t = t;
  r.norm_z1_Z1 = xs_norm(z.z1, SobolevIndex{0.5 - theta});
  r.wnorm_z1_Z1plus = std::pow(t, 2.0 * theta) * xs_norm(z.z1, SobolevIndex{0.5 + theta});
  r.norm_z2 = xs_norm(z.z2, SobolevIndex{0.5});
  r.norm_z3_Lp = lp_norm(z.z3, p, ws.base);
  r.norm_z3_inf = sup_norm(z.z3);
  r.norm_z4_Lp = lp_norm(z.z4, p, ws.base);
  r.norm_z5_Lp = lp_norm(z.z5, p, ws.base);

  const SpectralField1D u1 = z.z1 + traj.m0;
  const std::vector<double> u1v = to_physical(u1, ws.base);
  const std::vector<double> u2v = to_physical(z.z2, ws.base);
  std::vector<double> u4(z.z3.size()), u5(z.z3.size());
  for (std::size_t k = 0; k < u4.size(); ++k) {
    u4[k] = z.z4[k] - z.z3[k];
    u5[k] = z.z5[k] - z.z4[k];
  }
  double mn = std::min(min_of(u1v), min_of(u2v));
  mn = std::min(mn, std::min(min_of(z.z3), std::min(min_of(u4), min_of(u5))));
  r.min_u_all = mn;
  double mx = 0.0;
  for (std::size_t k = 0; k < z.z3.size(); ++k) mx = std::max(mx, z.z5[k]);
  r.ode_sum_max = mx;
  return r;
}

long step_count(const SolverConfig& cfg) {
  return std::lround(cfg.T / cfg.dt);
}

}  // namespace

Trajectory evolve_2d(const UState& u0, const ModelParams& P, double h, double eps,
                     const SolverConfig& cfg) {
  cfg.validate();
  const Workspace ws(cfg);
  require_nonneg_u0(u0, ws);

  Trajectory traj;
  traj.params = P;
  traj.config = cfg;
  traj.h = h;
  traj.eps = eps;
  traj.m = build_m_mu(P, h, eps, cfg.n1, cfg.n2);

  const std::vector<double> trm_base = clamp_nonneg(trace_of_m(traj.m, ws.base));
  const std::vector<double> trm_pad =
      cfg.dealias ? clamp_nonneg(trace_of_m(traj.m, ws.pad)) : trm_base;

  LinearParts lin;
  lin.build_2d(P, h, cfg, trm_base);

  ZState z = to_z(u0, traj.m);
  const long n_steps = step_count(cfg);

  auto eval_state = [&](const ZState& s) {
    return eval_g(ws, P, bottom_trace(s.z1), s.z2, s.z3, s.z4, s.z5, trm_base, trm_pad);
  };
  auto snapshot = [&](long step) {
    const double t = step * cfg.dt;
    traj.times.push_back(t);
    traj.snapshots.push_back(z);
    traj.diag.push_back(make_diag_2d(traj, ws, t, z, cfg.theta, cfg.p_exp));
  };

  snapshot(0);
  for (long s = 0; s < n_steps; ++s) {
    const GEval G0 = eval_state(z);
    if (cfg.scheme == Scheme::Etd1) {
      apply_etd1(z, lin, G0, cfg.n2);
    } else {
      ZState a = z;
      apply_etd1(a, lin, G0, cfg.n2);
      const GEval G1v = eval_state(a);
      z = a;
      apply_rk2_correction(z, lin, G0, G1v, cfg.n2);
    }
    check_finite_state(z, s * cfg.dt);
    if ((s + 1) % cfg.snapshot_stride == 0 || s + 1 == n_steps) snapshot(s + 1);
  }
  return traj;
}

Trajectory evolve_regular(const UState& u0, const ModelParams& P, double h,
                          const std::vector<double>& omega_samples,
                          const SolverConfig& cfg) {
  cfg.validate();
  const Workspace ws(cfg);
  require_nonneg_u0(u0, ws);
  if (static_cast<int>(omega_samples.size()) != cfg.n1)
    throw std::invalid_argument("evolve_regular: omega sample count must equal n1");
  for (double w : omega_samples)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("evolve_regular: omega must be nonnegative and bounded");

  Trajectory traj;
  traj.params = P;
  traj.config = cfg;
  traj.h = h;
  traj.eps = -1.0;  // marks the regular path
  traj.m = SpectralField2D(cfg.n1, cfg.n2);

  const std::vector<double> omega_pad = ws.lift(omega_samples);

  LinearParts lin;
  // The original bulk variable sees the same diagonal part as the transformed
  // one; the surface components have no exponential factor here.
  lin.build_2d(P, h, cfg, std::vector<double>(cfg.n1, 0.0));

  // State carried in transformed layout with zero layer: z mirrors u.
  ZState z = to_z(u0, traj.m);
  // u3..u5 advance directly (not the cumulative sums).
  z.z3 = u0.u3;
  z.z4 = u0.u4;
  z.z5 = u0.u5;

  const long n_steps = step_count(cfg);
  auto eval_state = [&](const ZState& s) {
    return eval_f(ws, P, bottom_trace(s.z1), s.z2, s.z3, s.z4, s.z5, omega_samples,
                  omega_pad);
  };
  auto to_cumulative = [&](const ZState& s) {
    ZState c = s;
    for (std::size_t k = 0; k < c.z3.size(); ++k) {
      c.z4[k] = s.z3[k] + s.z4[k];
      c.z5[k] = s.z3[k] + s.z4[k] + s.z5[k];
    }
    return c;
  };
  auto snapshot = [&](long step) {
    const double t = step * cfg.dt;
    traj.times.push_back(t);
    const ZState c = to_cumulative(z);
    traj.snapshots.push_back(c);
    traj.diag.push_back(make_diag_2d(traj, ws, t, c, cfg.theta, cfg.p_exp));
  };

  snapshot(0);
  for (long s = 0; s < n_steps; ++s) {
    const GEval G0 = eval_state(z);
    if (cfg.scheme == Scheme::Etd1) {
      apply_etd1(z, lin, G0, cfg.n2);
    } else {
      ZState a = z;
      apply_etd1(a, lin, G0, cfg.n2);
      const GEval G1v = eval_state(a);
      z = a;
      apply_rk2_correction(z, lin, G0, G1v, cfg.n2);
    }
    check_finite_state(z, s * cfg.dt);
    if ((s + 1) % cfg.snapshot_stride == 0 || s + 1 == n_steps) snapshot(s + 1);
  }
  return traj;
}

Trajectory1D evolve_1d_limit(const UState1D& u0, const ModelParams& P,
                             const SolverConfig& cfg) {
  cfg.validate();
  const Workspace ws(cfg);
  require_nonneg_samples(to_physical(u0.u1, ws.base), "u1");
  require_nonneg_samples(to_physical(u0.u2, ws.base), "u2");
  require_nonneg_samples(u0.u3, "u3");
  require_nonneg_samples(u0.u4, "u4");
  require_nonneg_samples(u0.u5, "u5");

  Trajectory1D traj;
  traj.params = P;
  traj.config = cfg;
  traj.m0 = build_m_zero(P, cfg.n1);

  const std::vector<double> m0_base = clamp_nonneg(to_physical(traj.m0, ws.base));
  const std::vector<double> m0_pad =
      cfg.dealias ? clamp_nonneg(to_physical(traj.m0, ws.pad)) : m0_base;

  LinearParts lin;
  lin.build_1d(P, cfg, m0_base);

  ZState1D z;
  z.z1 = u0.u1 - traj.m0;
  z.z2 = u0.u2;
  z.z3 = u0.u3;
  z.z4.resize(u0.u3.size());
  z.z5.resize(u0.u3.size());
  for (std::size_t k = 0; k < z.z3.size(); ++k) {
    z.z4[k] = u0.u3[k] + u0.u4[k];
    z.z5[k] = z.z4[k] + u0.u5[k];
  }

  const long n_steps = step_count(cfg);
  auto eval_state = [&](const ZState1D& s) {
    return eval_g(ws, P, s.z1, s.z2, s.z3, s.z4, s.z5, m0_base, m0_pad);
  };
  auto snapshot = [&](long step) {
    const double t = step * cfg.dt;
    traj.times.push_back(t);
    traj.snapshots.push_back(z);
    traj.diag.push_back(make_diag_1d(traj, ws, t, z, cfg.theta, cfg.p_exp));
  };

  snapshot(0);
  for (long s = 0; s < n_steps; ++s) {
    const GEval G0 = eval_state(z);
    if (cfg.scheme == Scheme::Etd1) {
      apply_etd1(z, lin, G0);
    } else {
      ZState1D a = z;
      apply_etd1(a, lin, G0);
      const GEval G1v = eval_state(a);
      z = a;
      apply_rk2_correction(z, lin, G0, G1v);
    }
    check_finite_state(z, s * cfg.dt);
    if ((s + 1) % cfg.snapshot_stride == 0 || s + 1 == n_steps) snapshot(s + 1);
  }
  return traj;
}

std::vector<DiagRow> diagnostics(const Trajectory& traj, double theta, double p) {
  const Workspace ws(traj.config);
  std::vector<DiagRow> rows;
  rows.reserve(traj.snapshots.size());
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k)
    rows.push_back(make_diag_2d(traj, ws, traj.times[k], traj.snapshots[k], theta, p));
  return rows;
}

std::vector<DiagRow> diagnostics(const Trajectory1D& traj, double theta, double p) {
  const Workspace ws(traj.config);
  std::vector<DiagRow> rows;
  rows.reserve(traj.snapshots.size());
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k)
    rows.push_back(make_diag_1d(traj, ws, traj.times[k], traj.snapshots[k], theta, p));
  return rows;
}

UState recover_u(const Trajectory& traj, std::size_t idx) {
  return from_z(traj.snapshots.at(idx), traj.m);
}

UState1D recover_u(const Trajectory1D& traj, std::size_t idx) {
  const ZState1D& z = traj.snapshots.at(idx);
  UState1D u;
  u.u1 = z.z1 + traj.m0;
  u.u2 = z.z2;
  u.u3 = z.z3;
  u.u4.resize(z.z3.size());
  u.u5.resize(z.z3.size());
  for (std::size_t k = 0; k < z.z3.size(); ++k) {
    u.u4[k] = z.z4[k] - z.z3[k];
    u.u5[k] = z.z5[k] - z.z4[k];
  }
  return u;
}

}  // namespace morphlab
