// Construction of the steady boundary layers that absorb the point source:
// the 2D layer (resolvent image of the mollified or exact point mass placed
// on the bottom edge) and its 1D counterpart, together with their traces and
// the quantitative diagnostics that track how the layers collapse as the
// mollifier sharpens and the rectangle flattens.

#pragma once

#include <vector>

#include "morphlab/model.hpp"
#include "morphlab/spectral.hpp"

namespace morphlab {

// 2D layer: coefficients a_ij = p1 * g_i * c2(j) / (b1 - lambda_Omega(i,j,h)),
// where g_i are the mollifier pairings (eps > 0) or u_i(0) (eps = 0).
// Requires b1 > 0, h in (0,1], eps in [0,1].
SpectralField2D build_m_mu(const ModelParams& P, double h, double eps, int n1, int n2);

// 1D layer: coefficients a_i = p1 * u_i(0) / (b1 - lambda_I(i)). Requires b1 > 0.
SpectralField1D build_m_zero(const ModelParams& P, int n1);

// Closed-form 1D layer: p1 cosh(sqrt(b1)(1-|x|)) / (2 sqrt(b1) sinh(sqrt(b1))).
// Solves b1 m - m'' = p1 * (point mass at 0) with Neumann ends.
double m_zero_closed_form(double x, double b1, double p1);

// Bottom trace of the truncated 2D layer sampled at staggered nodes.
// Throws if a node sits at x1 = 0 (where the eps = 0 trace diverges).
std::vector<double> trace_of_m(const SpectralField2D& m, const CollocationGrid1D& g);

// One sweep row of the layer-collapse diagnostics.
struct SwallowRow {
  double h = 1.0;
  double eps = 0.0;
  double dist_mu_mu0 = 0.0;    // ||m(h,eps) - m(h,0)||_{X^{1/2-s}}
  double eta_delta_norm = 0.0; // ||eta^eps - delta||_{X^{-1/4-s}}
  double dist_mu0_Em0 = 0.0;   // ||m(h,0) - E m0||_{X^{1/2-s}}
  double lam01_pow = 0.0;      // (h/pi)^s, the proven decay scale of the third column
};

// Per-(h,eps) table. The X^{1/2-s} distances require 0 < s <= 3/4 whenever an
// eps-column is requested and 0 < s <= 3/2 otherwise; fields are built at
// (n1, n2) modes (callers typically oversample relative to solver runs).
std::vector<SwallowRow> swallow_diagnostics(const ModelParams& P,
                                            const std::vector<double>& h_list,
                                            const std::vector<double>& eps_list,
                                            double s, int n1, int n2);

}  // namespace morphlab
