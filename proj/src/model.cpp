#include "morphlab/model.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace morphlab {

void ModelParams::validate() const {
  if (!(d > 0.0)) throw std::domain_error("ModelParams: d must be positive");
  for (int i = 0; i < 5; ++i) {
    if (!(b[i] > 0.0)) throw std::domain_error("ModelParams: b must be positive");
    if (c[i] < 0.0) throw std::domain_error("ModelParams: c must be nonnegative");
    if (p[i] < 0.0) throw std::domain_error("ModelParams: p must be nonnegative");
  }
  if (p[1] != 0.0 || p[3] != 0.0 || p[4] != 0.0)
    throw std::domain_error("ModelParams: p2, p4, p5 must vanish");
}

Nondimensionalized nondimensionalize(const PhysicalParams& ph) {
  auto pos = [](double v, const char* name) {
    if (!(v > 0.0)) throw std::domain_error(std::string("nondimensionalize: ") +
                                            name + " must be positive");
  };
  pos(ph.D, "D"); pos(ph.Dstar, "Dstar");
  pos(ph.gamma, "gamma"); pos(ph.gamma_star, "gamma_star");
  pos(ph.k, "k"); pos(ph.k_prime, "k_prime");
  pos(ph.k_R, "k_R"); pos(ph.k_R_prime, "k_R_prime");
  pos(ph.k_Rg, "k_Rg"); pos(ph.k_Rg_prime, "k_Rg_prime");
  pos(ph.alpha, "alpha"); pos(ph.alpha_star, "alpha_star");
  pos(ph.s, "s"); pos(ph.Gamma, "Gamma"); pos(ph.G, "G");
  pos(ph.L, "L"); pos(ph.H, "H"); pos(ph.eps, "eps");

  const double T = ph.L * ph.L / ph.D;
  const double K2 = ph.k_R * T / ph.H;

  Nondimensionalized r;
  r.params.d = ph.Dstar / ph.D;
  r.params.b = {T * ph.gamma, T * ph.gamma_star, T * ph.alpha, T * ph.alpha_star,
                T * ph.alpha_star};
  r.params.c = {T * ph.k * ph.G / ph.H, T * ph.k_prime, ph.H * ph.k_Rg / ph.k_R,
                T * ph.k_R_prime, T * ph.k_Rg_prime};
  r.params.p = {K2 * T * ph.s, 0.0, K2 * T * ph.Gamma, 0.0, 0.0};
  r.h = ph.eps * ph.H / ph.L;
  r.h_in_range = r.h > 0.0 && r.h <= 1.0;
  return r;
}

Vec5 reaction_f(const Vec5& u, const ModelParams& P) {
  const auto& b = P.b;
  const auto& c = P.c;
  return {
      -(c[0] + u[2]) * u[0] + c[1] * u[1] + c[3] * u[3],
      c[0] * u[0] - (b[1] + c[1] + c[2] * u[2]) * u[1] + c[4] * u[4],
      -(b[2] + u[0] + c[2] * u[1]) * u[2] + c[3] * u[3] + c[4] * u[4] + P.p[2],
      u[0] * u[2] - (b[3] + c[3]) * u[3],
      c[2] * u[1] * u[2] - (b[4] + c[4]) * u[4],
  };
}

Vec5 reaction_g(const Vec5& z, double m_point, const ModelParams& P) {
  const auto& b = P.b;
  const auto& c = P.c;
  return {
      -c[0] * z[0] + c[1] * z[1] - z[0] * z[2] + c[3] * (z[3] - z[2]) -
          (c[0] + z[2]) * m_point,
      -b[1] * z[1] + c[0] * z[0] - c[1] * z[1] - c[2] * z[1] * z[2] +
          c[4] * (z[4] - z[3]) + c[0] * m_point,
      -b[2] * z[2] - z[0] * z[2] - c[2] * z[1] * z[2] + c[3] * (z[3] - z[2]) +
          c[4] * (z[4] - z[3]) + P.p[2],
      -b[2] * z[2] - b[3] * (z[3] - z[2]) - c[2] * z[1] * z[2] +
          c[4] * (z[4] - z[3]) + P.p[2],
      -b[2] * z[2] - b[3] * (z[3] - z[2]) - b[4] * (z[4] - z[3]) + P.p[2],
  };
}

Vec5 apply_M(const Vec5& v) {
  return {v[0], v[1], v[2], v[2] + v[3], v[2] + v[3] + v[4]};
}

Vec5 apply_M_inverse(const Vec5& v) {
  return {v[0], v[1], v[2], v[3] - v[2], v[4] - v[3]};
}

namespace {

std::vector<double> combine(const std::vector<double>& x, const std::vector<double>& y,
                            double sx, double sy) {
  if (x.size() != y.size())
    throw std::invalid_argument("state transform: sample size mismatch");
  std::vector<double> r(x.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = sx * x[k] + sy * y[k];
  return r;
}

}  // namespace

ZState to_z(const UState& u, const SpectralField2D& m) {
  ZState z;
  z.z1 = u.u1 - m;
  z.z2 = u.u2;
  z.z3 = u.u3;
  z.z4 = combine(u.u3, u.u4, 1.0, 1.0);
  z.z5 = combine(z.z4, u.u5, 1.0, 1.0);
  return z;
}

UState from_z(const ZState& z, const SpectralField2D& m) {
  UState u;
  u.u1 = z.z1 + m;
  u.u2 = z.z2;
  u.u3 = z.z3;
  u.u4 = combine(z.z4, z.z3, 1.0, -1.0);
  u.u5 = combine(z.z5, z.z4, 1.0, -1.0);
  return u;
}

MollifierSpec::MollifierSpec(double e) : eps(e) {
  if (eps < 0.0 || eps > 1.0)
    throw std::domain_error("MollifierSpec: eps must lie in [0,1]");
}

namespace {

double bump_raw(double y) {
  // exp(1/(y^2 - 1)) on (-1,1), zero outside.
  if (std::abs(y) >= 1.0) return 0.0;
  return std::exp(1.0 / (y * y - 1.0));
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 15>::integrate(f, a, b, 15, 1e-11);
}

}  // namespace

double Mollifier::bump_constant() {
  static std::once_flag flag;
  static double c = 0.0;
  std::call_once(flag, [] {
    const double mass = 2.0 * integrate_adaptive(bump_raw, 0.0, 1.0);
    c = 1.0 / mass;
  });
  return c;
}

double Mollifier::eval(double x) const {
  if (eps_ == 0.0)
    throw std::domain_error("Mollifier::eval: pointwise evaluation undefined at eps=0");
  return bump_constant() * bump_raw(x / eps_) / eps_;
}

namespace {

// 15-point Kronrod rule on [-1, 1] (positive-half nodes).
constexpr double kGk15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kGk15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715526,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};

// Composite Kronrod sweep of all cosine moments int_0^eps f(x) cos(i pi x / 2) dx
// in one pass over nodes, using the three-term recurrence in the mode index.
std::vector<double> cosine_moments(const std::function<double(double)>& f, double eps,
                                   int n, int panels) {
  std::vector<double> m(n, 0.0);
  const double width = eps / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (int q = 0; q < 8; ++q) {
      for (double sgn : {-1.0, 1.0}) {
        if (q == 7 && sgn < 0) continue;  // centre node counted once
        const double x = mid + sgn * kGk15Nodes[q] * width / 2.0;
        const double fw = f(x) * kGk15Weights[q] * width / 2.0;
        const double phi = kPi * x / 2.0;
        const double c = std::cos(phi);
        double prev = 1.0, cur = c;
        m[0] += fw;
        if (n > 1) m[1] += fw * cur;
        for (int i = 2; i < n; ++i) {
          const double next = 2.0 * c * cur - prev;
          prev = cur;
          cur = next;
          m[i] += fw * cur;
        }
      }
    }
  }
  return m;
}

}  // namespace

std::vector<double> Mollifier::coeffs(int n) const {
  if (n <= 0) throw std::invalid_argument("Mollifier::coeffs: n must be positive");
  std::vector<double> g(n, 0.0);
  if (eps_ == 0.0) {
    for (int i = 0; i < n; ++i) g[i] = basis_u_at_origin(i);
    return g;
  }
  // Even symmetry: g_i = u_i(0) * 2 int_0^eps eta(x) cos(i pi x / 2) dx, so odd
  // modes vanish identically. The moments converge under panel doubling to
  // relative 1e-10 (a couple of panels per oscillation at the highest mode).
  auto f = [this](double x) { return eval(x); };
  int panels = std::max(16, static_cast<int>(n * eps_ / 4.0) + 1);
  std::vector<double> moments = cosine_moments(f, eps_, n, panels);
  for (int it = 0; it < 8; ++it) {
    panels *= 2;
    const std::vector<double> refined = cosine_moments(f, eps_, n, panels);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(refined[i] - moments[i]) /
                                  std::max(1.0, std::abs(refined[i])));
    moments = refined;
    if (worst < 1e-10) break;
  }
  for (int i = 0; i < n; ++i) g[i] = basis_u_at_origin(i) * 2.0 * moments[i];
  return g;
}

}  // namespace morphlab
