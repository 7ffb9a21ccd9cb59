#include "morphlab/singular.hpp"

#include <cmath>
#include <stdexcept>

namespace morphlab {

SpectralField2D build_m_mu(const ModelParams& P, double h, double eps, int n1, int n2) {
  if (!(P.b[0] > 0.0)) throw std::domain_error("build_m_mu: b1 must be positive");
  if (!(h > 0.0 && h <= 1.0)) throw std::domain_error("build_m_mu: h must lie in (0,1]");
  Mollifier eta{MollifierSpec{eps}};
  const std::vector<double> g = eta.coeffs(n1);
  SpectralField2D m(n1, n2);
  const double p1 = P.p[0];
  for (int i = 0; i < n1; ++i) {
    if (g[i] == 0.0) continue;
    for (int j = 0; j < n2; ++j)
      m.at(i, j) = p1 * g[i] * basis_c2(j) / (P.b[0] - eigenvalue_Omega(i, j, h));
  }
  return m;
}

SpectralField1D build_m_zero(const ModelParams& P, int n1) {
  if (!(P.b[0] > 0.0)) throw std::domain_error("build_m_zero: b1 must be positive");
  SpectralField1D m(n1);
  for (int i = 0; i < n1; ++i)
    m.a[i] = P.p[0] * basis_u_at_origin(i) / (P.b[0] - eigenvalue_I(i));
  return m;
}

double m_zero_closed_form(double x, double b1, double p1) {
  if (!(b1 > 0.0)) throw std::domain_error("m_zero_closed_form: b1 must be positive");
  const double r = std::sqrt(b1);
  return p1 * std::cosh(r * (1.0 - std::abs(x))) / (2.0 * r * std::sinh(r));
}

std::vector<double> trace_of_m(const SpectralField2D& m, const CollocationGrid1D& g) {
  if (g.domain != Interval::I)
    throw std::invalid_argument("trace_of_m: grid must live on I");
  for (double x : g.x)
    if (x == 0.0) throw std::domain_error("trace_of_m: grid node at the source point");
  const SpectralField1D t = bottom_trace(m);
  return to_physical(t, g);
}

std::vector<SwallowRow> swallow_diagnostics(const ModelParams& P,
                                            const std::vector<double>& h_list,
                                            const std::vector<double>& eps_list,
                                            double s, int n1, int n2) {
  const bool has_positive_eps = [&] {
    for (double e : eps_list)
      if (e > 0.0) return true;
    return false;
  }();
  const double s_max = has_positive_eps ? 0.75 : 1.5;
  if (!(s > 0.0 && s <= s_max))
    throw std::domain_error("swallow_diagnostics: s outside the admissible range");

  const SobolevIndex half_minus_s{0.5 - s};
  const SobolevIndex dual_s{-0.25 - s};
  const SpectralField1D m0 = build_m_zero(P, n1);
  const std::vector<double> delta_coeffs = Mollifier{MollifierSpec{0.0}}.coeffs(n1);

  std::vector<SwallowRow> rows;
  for (double h : h_list) {
    const SpectralField2D m_mu0 = build_m_mu(P, h, 0.0, n1, n2);
    const SpectralField2D Em0 = extend_constant(m0, n2);
    const double dist_em0 = xs_norm(m_mu0 - Em0, half_minus_s);
    for (double eps : eps_list) {
      SwallowRow row;
      row.h = h;
      row.eps = eps;
      const SpectralField2D m_mu = build_m_mu(P, h, eps, n1, n2);
      row.dist_mu_mu0 = xs_norm(m_mu - m_mu0, half_minus_s);
      SpectralField1D eta_minus_delta(n1);
      const std::vector<double> g = Mollifier{MollifierSpec{eps}}.coeffs(n1);
      for (int i = 0; i < n1; ++i) eta_minus_delta.a[i] = g[i] - delta_coeffs[i];
      row.eta_delta_norm = xs_norm(eta_minus_delta, dual_s);
      row.dist_mu0_Em0 = dist_em0;
      row.lam01_pow = std::pow(h / kPi, s);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace morphlab
