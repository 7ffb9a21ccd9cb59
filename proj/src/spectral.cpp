#include "morphlab/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace morphlab {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

// Evaluates cos(i*phi) for i = 0..n-1 via the three-term recurrence, calling
// the visitor with (i, cos(i*phi)). Avoids large cosine tables at high mode
// counts.
template <typename F>
void cosine_scan(int n, double phi, F&& visit) {
  const double c = std::cos(phi);
  double prev = 1.0;           // cos(0)
  double cur = c;              // cos(phi)
  if (n > 0) visit(0, 1.0);
  if (n > 1) visit(1, cur);
  for (int i = 2; i < n; ++i) {
    double next = 2.0 * c * cur - prev;
    prev = cur;
    cur = next;
    visit(i, cur);
  }
}

}  // namespace

double basis_c1(int i) {
  require(i >= 0, "basis_c1: index must be nonnegative");
  return i == 0 ? 1.0 / std::sqrt(2.0) : 1.0;
}

double basis_c2(int j) {
  require(j >= 0, "basis_c2: index must be nonnegative");
  return j == 0 ? 1.0 : std::sqrt(2.0);
}

double eigenvalue_I(int i) {
  require(i >= 0, "eigenvalue_I: index must be nonnegative");
  const double k = i * kPi / 2.0;
  return -k * k;
}

double eigenvalue_Iplus(int j) {
  require(j >= 0, "eigenvalue_Iplus: index must be nonnegative");
  const double k = j * kPi;
  return -k * k;
}

double eigenvalue_Omega(int i, int j, double h) {
  require(h > 0.0 && h <= 1.0, "eigenvalue_Omega: h must lie in (0,1]");
  const double ky = j * kPi / h;
  return eigenvalue_I(i) - ky * ky;
}

double basis_u(int i, double x1) {
  require(x1 >= -1.0 && x1 <= 1.0, "basis_u: x1 outside [-1,1]");
  return basis_c1(i) * std::cos(i * kPi * (x1 + 1.0) / 2.0);
}

double basis_v(int j, double x2) {
  require(x2 >= 0.0 && x2 <= 1.0, "basis_v: x2 outside [0,1]");
  return basis_c2(j) * std::cos(j * kPi * x2);
}

double basis_w(int i, int j, double x1, double x2) {
  return basis_u(i, x1) * basis_v(j, x2);
}

double basis_u_at_origin(int i) {
  require(i >= 0, "basis_u_at_origin: index must be nonnegative");
  // u_i(0) = c1(i) cos(i pi / 2): zero for odd i, alternating for even i.
  if (i % 2 == 1) return 0.0;
  double sign = (i / 2) % 2 == 0 ? 1.0 : -1.0;
  return basis_c1(i) * sign;
}

bool SpectralField1D::finite() const {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

bool SpectralField2D::finite() const {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

SpectralField1D operator-(const SpectralField1D& x, const SpectralField1D& y) {
  if (x.n() != y.n()) throw std::invalid_argument("field1d subtraction: size mismatch");
  SpectralField1D r(x.n());
  for (int i = 0; i < x.n(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

SpectralField1D operator+(const SpectralField1D& x, const SpectralField1D& y) {
  if (x.n() != y.n()) throw std::invalid_argument("field1d addition: size mismatch");
  SpectralField1D r(x.n());
  for (int i = 0; i < x.n(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

SpectralField2D operator-(const SpectralField2D& x, const SpectralField2D& y) {
  if (x.n1 != y.n1 || x.n2 != y.n2)
    throw std::invalid_argument("field2d subtraction: shape mismatch");
  SpectralField2D r(x.n1, x.n2);
  for (std::size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] - y.a[k];
  return r;
}

SpectralField2D operator+(const SpectralField2D& x, const SpectralField2D& y) {
  if (x.n1 != y.n1 || x.n2 != y.n2)
    throw std::invalid_argument("field2d addition: shape mismatch");
  SpectralField2D r(x.n1, x.n2);
  for (std::size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] + y.a[k];
  return r;
}

CollocationGrid1D collocation_grid_I(int n) {
  require(n > 0, "collocation_grid_I: n must be positive");
  require(n % 2 == 0, "collocation_grid_I: n must be even (keeps x1=0 off the grid)");
  CollocationGrid1D g;
  g.domain = Interval::I;
  g.x.resize(n);
  for (int k = 0; k < n; ++k) g.x[k] = -1.0 + (2.0 * k + 1.0) / n;
  return g;
}

CollocationGrid1D collocation_grid_Iplus(int n) {
  require(n > 0, "collocation_grid_Iplus: n must be positive");
  CollocationGrid1D g;
  g.domain = Interval::IPlus;
  g.x.resize(n);
  for (int l = 0; l < n; ++l) g.x[l] = (2.0 * l + 1.0) / (2.0 * n);
  return g;
}

CollocationGrid2D collocation_grid_2d(int n1, int n2) {
  return CollocationGrid2D{collocation_grid_I(n1), collocation_grid_Iplus(n2)};
}

int dealias_padding(int n) {
  int np = (3 * n + 1) / 2;
  if (np % 2 == 1) ++np;
  return np;
}

double quad_weight(const CollocationGrid1D& g) {
  return (g.domain == Interval::I ? 2.0 : 1.0) / g.n();
}

namespace {

// phi such that the k-th basis function at node x equals norm-const * cos(k*phi).
double node_phase(const CollocationGrid1D& g, int k) {
  return g.domain == Interval::I ? kPi * (g.x[k] + 1.0) / 2.0 : kPi * g.x[k];
}

double norm_const(const CollocationGrid1D& g, int mode) {
  return g.domain == Interval::I ? basis_c1(mode) : basis_c2(mode);
}

}  // namespace

std::vector<double> to_physical(const SpectralField1D& f, const CollocationGrid1D& g) {
  if (g.n() < f.n())
    throw std::invalid_argument("to_physical: grid has fewer nodes than field modes");
  std::vector<double> s(g.n(), 0.0);
  for (int k = 0; k < g.n(); ++k) {
    double acc = 0.0;
    cosine_scan(f.n(), node_phase(g, k), [&](int i, double c) {
      acc += f.a[i] * norm_const(g, i) * c;
    });
    s[k] = acc;
  }
  return s;
}

SpectralField1D to_spectral(const std::vector<double>& samples,
                            const CollocationGrid1D& g, int n_modes) {
  if (static_cast<int>(samples.size()) != g.n())
    throw std::invalid_argument("to_spectral: sample count does not match grid");
  if (n_modes > g.n())
    throw std::invalid_argument("to_spectral: more modes requested than grid nodes");
  SpectralField1D f(n_modes);
  const double w = quad_weight(g);
  for (int k = 0; k < g.n(); ++k) {
    const double sw = samples[k] * w;
    cosine_scan(n_modes, node_phase(g, k), [&](int i, double c) {
      f.a[i] += sw * norm_const(g, i) * c;
    });
  }
  return f;
}

std::vector<double> to_physical(const SpectralField2D& f, const CollocationGrid2D& g) {
  const int n1 = g.gx.n(), n2 = g.gy.n();
  if (n1 < f.n1 || n2 < f.n2)
    throw std::invalid_argument("to_physical: grid smaller than field");
  // Synthesise in x2 first (per mode row), then in x1.
  std::vector<double> partial(static_cast<std::size_t>(f.n1) * n2, 0.0);
  for (int i = 0; i < f.n1; ++i) {
    for (int l = 0; l < n2; ++l) {
      double acc = 0.0;
      cosine_scan(f.n2, node_phase(g.gy, l), [&](int j, double c) {
        acc += f.at(i, j) * norm_const(g.gy, j) * c;
      });
      partial[static_cast<std::size_t>(i) * n2 + l] = acc;
    }
  }
  std::vector<double> s(static_cast<std::size_t>(n1) * n2, 0.0);
  for (int k = 0; k < n1; ++k) {
    cosine_scan(f.n1, node_phase(g.gx, k), [&](int i, double c) {
      const double b = norm_const(g.gx, i) * c;
      const double* row = &partial[static_cast<std::size_t>(i) * n2];
      double* out = &s[static_cast<std::size_t>(k) * n2];
      for (int l = 0; l < n2; ++l) out[l] += b * row[l];
    });
  }
  return s;
}

SpectralField2D to_spectral(const std::vector<double>& samples,
                            const CollocationGrid2D& g, int n1, int n2) {
  const int m1 = g.gx.n(), m2 = g.gy.n();
  if (static_cast<int>(samples.size()) != m1 * m2)
    throw std::invalid_argument("to_spectral: sample count does not match grid");
  if (n1 > m1 || n2 > m2)
    throw std::invalid_argument("to_spectral: more modes requested than grid nodes");
  const double w1 = quad_weight(g.gx), w2 = quad_weight(g.gy);
  // Analyse in x2 first.
  std::vector<double> partial(static_cast<std::size_t>(m1) * n2, 0.0);
  for (int k = 0; k < m1; ++k) {
    for (int l = 0; l < m2; ++l) {
      const double sw = samples[static_cast<std::size_t>(k) * m2 + l] * w2;
      cosine_scan(n2, node_phase(g.gy, l), [&](int j, double c) {
        partial[static_cast<std::size_t>(k) * n2 + j] += sw * norm_const(g.gy, j) * c;
      });
    }
  }
  SpectralField2D f(n1, n2);
  for (int k = 0; k < m1; ++k) {
    cosine_scan(n1, node_phase(g.gx, k), [&](int i, double c) {
      const double b = w1 * norm_const(g.gx, i) * c;
      const double* row = &partial[static_cast<std::size_t>(k) * n2];
      for (int j = 0; j < n2; ++j) f.at(i, j) += b * row[j];
    });
  }
  return f;
}

double eval_field(const SpectralField1D& f, double x1) {
  double acc = 0.0;
  const double phi = kPi * (x1 + 1.0) / 2.0;
  cosine_scan(f.n(), phi, [&](int i, double c) { acc += f.a[i] * basis_c1(i) * c; });
  return acc;
}

double eval_field(const SpectralField2D& f, double x1, double x2) {
  double acc = 0.0;
  const double phi1 = kPi * (x1 + 1.0) / 2.0;
  std::vector<double> col(f.n2, 0.0);
  const double phi2 = kPi * x2;
  cosine_scan(f.n2, phi2, [&](int j, double c) { col[j] = basis_c2(j) * c; });
  cosine_scan(f.n1, phi1, [&](int i, double c) {
    double row = 0.0;
    for (int j = 0; j < f.n2; ++j) row += f.at(i, j) * col[j];
    acc += basis_c1(i) * c * row;
  });
  return acc;
}

double eval_field_dx1(const SpectralField1D& f, double x1) {
  // d/dx1 u_i = -(i pi/2) c1(i) sin(i pi (x1+1)/2)
  double acc = 0.0;
  const double phi = kPi * (x1 + 1.0) / 2.0;
  for (int i = 1; i < f.n(); ++i)
    acc -= f.a[i] * (i * kPi / 2.0) * basis_c1(i) * std::sin(i * phi);
  return acc;
}

double xs_norm(const SpectralField1D& f, SobolevIndex s) {
  double acc = 0.0;
  for (int i = 0; i < f.n(); ++i) {
    const double w = std::pow(1.0 - eigenvalue_I(i), 2.0 * s.s);
    acc += w * f.a[i] * f.a[i];
  }
  return std::sqrt(acc);
}

double xs_norm(const SpectralField2D& f, SobolevIndex s) {
  double acc = 0.0;
  for (int i = 0; i < f.n1; ++i)
    for (int j = 0; j < f.n2; ++j) {
      const double w = std::pow(1.0 - eigenvalue_Omega(i, j, 1.0), 2.0 * s.s);
      acc += w * f.at(i, j) * f.at(i, j);
    }
  return std::sqrt(acc);
}

double lp_norm(const std::vector<double>& samples, double p, const CollocationGrid1D& g) {
  if (static_cast<int>(samples.size()) != g.n())
    throw std::invalid_argument("lp_norm: sample count does not match grid");
  require(p >= 1.0, "lp_norm: p must be >= 1");
  const double w = quad_weight(g);
  double acc = 0.0;
  for (double v : samples) acc += w * std::pow(std::abs(v), p);
  return std::pow(acc, 1.0 / p);
}

double sup_norm(const std::vector<double>& samples) {
  double m = 0.0;
  for (double v : samples) m = std::max(m, std::abs(v));
  return m;
}

SpectralField2D extend_constant(const SpectralField1D& u, int n2) {
  require(n2 > 0, "extend_constant: n2 must be positive");
  SpectralField2D w(u.n(), n2);
  for (int i = 0; i < u.n(); ++i) w.at(i, 0) = u.a[i];
  return w;
}

SpectralField1D vertical_average(const SpectralField2D& w) {
  SpectralField1D u(w.n1);
  for (int i = 0; i < w.n1; ++i) u.a[i] = w.at(i, 0);
  return u;
}

SpectralField1D bottom_trace(const SpectralField2D& w) {
  SpectralField1D t(w.n1);
  for (int i = 0; i < w.n1; ++i) {
    double acc = 0.0;
    for (int j = 0; j < w.n2; ++j) acc += w.at(i, j) * basis_c2(j);
    t.a[i] = acc;
  }
  return t;
}

SpectralField2D bottom_trace_adjoint(const SpectralField1D& g, int n2) {
  require(n2 > 0, "bottom_trace_adjoint: n2 must be positive");
  SpectralField2D w(g.n(), n2);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < n2; ++j) w.at(i, j) = g.a[i] * basis_c2(j);
  return w;
}

SpectralField2D subtract_vertical_mean(const SpectralField2D& w) {
  SpectralField2D r = w;
  for (int i = 0; i < r.n1; ++i) r.at(i, 0) = 0.0;
  return r;
}

SpectralField1D resolvent_I(const SpectralField1D& f, double lambda,
                            double scale, double shift) {
  require(lambda > 0.0, "resolvent_I: lambda must be positive");
  require(shift >= 0.0, "resolvent_I: shift must be nonnegative");
  SpectralField1D r(f.n());
  for (int i = 0; i < f.n(); ++i)
    r.a[i] = f.a[i] / (lambda + shift - scale * eigenvalue_I(i));
  return r;
}

SpectralField2D resolvent_Omega(const SpectralField2D& f, double lambda, double h,
                                double shift) {
  require(lambda > 0.0, "resolvent_Omega: lambda must be positive");
  require(shift >= 0.0, "resolvent_Omega: shift must be nonnegative");
  SpectralField2D r(f.n1, f.n2);
  for (int i = 0; i < f.n1; ++i)
    for (int j = 0; j < f.n2; ++j)
      r.at(i, j) = f.at(i, j) / (lambda + shift - eigenvalue_Omega(i, j, h));
  return r;
}

SpectralField1D semigroup_I(const SpectralField1D& f, double t,
                            double scale, double shift) {
  require(t >= 0.0, "semigroup_I: t must be nonnegative");
  require(shift >= 0.0, "semigroup_I: shift must be nonnegative");
  SpectralField1D r(f.n());
  for (int i = 0; i < f.n(); ++i)
    r.a[i] = f.a[i] * std::exp(t * (scale * eigenvalue_I(i) - shift));
  return r;
}

SpectralField2D semigroup_Omega(const SpectralField2D& f, double t, double h,
                                double shift) {
  require(t >= 0.0, "semigroup_Omega: t must be nonnegative");
  require(shift >= 0.0, "semigroup_Omega: shift must be nonnegative");
  SpectralField2D r(f.n1, f.n2);
  for (int i = 0; i < f.n1; ++i)
    for (int j = 0; j < f.n2; ++j)
      r.at(i, j) = f.at(i, j) * std::exp(t * (eigenvalue_Omega(i, j, h) - shift));
  return r;
}

std::vector<double> mult_semigroup(const std::vector<double>& f_samples, double t,
                                   const std::vector<double>& u_samples) {
  require(t >= 0.0, "mult_semigroup: t must be nonnegative");
  if (f_samples.size() != u_samples.size())
    throw std::invalid_argument("mult_semigroup: sample size mismatch");
  for (double v : f_samples)
    if (v > 0.0) throw std::domain_error("mult_semigroup: multiplier must be <= 0");
  std::vector<double> r(u_samples.size());
  for (std::size_t k = 0; k < r.size(); ++k)
    r[k] = std::exp(t * f_samples[k]) * u_samples[k];
  return r;
}

}  // namespace morphlab
