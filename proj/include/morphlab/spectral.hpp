// Cosine-spectral core on the interval I = (-1,1), the half interval
// I+ = (0,1) and the rectangle Omega = I x I+.
//
// Everything in this library is expressed in the Neumann cosine basis
//
//   u_i(x1) = c1(i) cos(i pi (x1+1)/2)   on I,
//   v_j(x2) = c2(j) cos(j pi x2)         on I+,
//   w_ij    = u_i (x) v_j                on Omega,
//
// normalised so that ||u_i||_L2(I) = ||v_j||_L2(I+) = 1.  The Laplacian
// (with aspect-scaled vertical diffusion h^-2 on Omega) is diagonal on
// this basis, which makes resolvents and analytic semigroups exact
// modewise operations.  Fractional-order X^s norms are eigenvalue-weighted
// coefficient sums; negative orders use the same weights, which is exact
// for the finite cosine sums handled here.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace morphlab {

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Basis and eigenvalues
// ---------------------------------------------------------------------------

// Normalisation constants: c1(0)=1/sqrt(2), c1(i>0)=1; c2(0)=1, c2(j>0)=sqrt(2).
double basis_c1(int i);
double basis_c2(int j);

// Eigenvalues of the second derivative with Neumann conditions.
//   lambda_I(i)      = -(i pi / 2)^2           on I
//   lambda_Iplus(j)  = -(j pi)^2               on I+
//   lambda_Omega     = lambda_I + h^-2 lambda_Iplus, h in (0,1]
double eigenvalue_I(int i);
double eigenvalue_Iplus(int j);
double eigenvalue_Omega(int i, int j, double h);

// Pointwise basis evaluation. Throws std::domain_error outside the closed
// domain.
double basis_u(int i, double x1);
double basis_v(int j, double x2);
double basis_w(int i, int j, double x1, double x2);

// u_i(0), used for pairing a point mass at the origin with the basis.
double basis_u_at_origin(int i);

// ---------------------------------------------------------------------------
// Fields
// ---------------------------------------------------------------------------

struct SpectralField1D {
  std::vector<double> a;  // coefficient of u_i (or v_i when used on I+)

  SpectralField1D() = default;
  explicit SpectralField1D(int n) : a(static_cast<std::size_t>(n), 0.0) {}

  int n() const { return static_cast<int>(a.size()); }
  bool finite() const;
};

struct SpectralField2D {
  std::vector<double> a;  // row-major, a[i*n2 + j] multiplies w_ij
  int n1 = 0;
  int n2 = 0;

  SpectralField2D() = default;
  SpectralField2D(int n1_, int n2_)
      : a(static_cast<std::size_t>(n1_) * static_cast<std::size_t>(n2_), 0.0),
        n1(n1_), n2(n2_) {}

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n2 + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n2 + j]; }
  bool finite() const;
};

SpectralField1D operator-(const SpectralField1D& x, const SpectralField1D& y);
SpectralField1D operator+(const SpectralField1D& x, const SpectralField1D& y);
SpectralField2D operator-(const SpectralField2D& x, const SpectralField2D& y);
SpectralField2D operator+(const SpectralField2D& x, const SpectralField2D& y);

// Fractional order for X^s norms, restricted to the range where the
// weighted-sum definition is used.
struct SobolevIndex {
  double s;
  explicit SobolevIndex(double s_) : s(s_) {
    if (s < -1.0 || s > 1.5)
      throw std::domain_error("SobolevIndex: s must lie in [-1, 3/2]");
  }
};

// ---------------------------------------------------------------------------
// Collocation grids (midpoint nodes; on I the node count must be even so
// that x1 = 0 is never a node)
// ---------------------------------------------------------------------------

enum class Interval { I, IPlus };

struct CollocationGrid1D {
  Interval domain = Interval::I;
  std::vector<double> x;
  int n() const { return static_cast<int>(x.size()); }
};

struct CollocationGrid2D {
  CollocationGrid1D gx;  // on I
  CollocationGrid1D gy;  // on I+
};

CollocationGrid1D collocation_grid_I(int n);       // x_k = -1 + (2k+1)/n, n even
CollocationGrid1D collocation_grid_Iplus(int n);   // y_l = (2l+1)/(2n)
CollocationGrid2D collocation_grid_2d(int n1, int n2);

// Padded node count for 3/2-rule product evaluation (rounded up to even).
int dealias_padding(int n);

// ---------------------------------------------------------------------------
// Transforms (collocation <-> coefficients). Exact round trip for
// band-limited fields with at most as many modes as grid nodes.
// ---------------------------------------------------------------------------

std::vector<double> to_physical(const SpectralField1D& f, const CollocationGrid1D& g);
SpectralField1D to_spectral(const std::vector<double>& samples,
                            const CollocationGrid1D& g, int n_modes);

std::vector<double> to_physical(const SpectralField2D& f, const CollocationGrid2D& g);
SpectralField2D to_spectral(const std::vector<double>& samples,
                            const CollocationGrid2D& g, int n1, int n2);

// Single-point synthesis (and x1-derivative, used by diagnostics).
double eval_field(const SpectralField1D& f, double x1);
double eval_field(const SpectralField2D& f, double x1, double x2);
double eval_field_dx1(const SpectralField1D& f, double x1);

// Midpoint quadrature weights: |I| = 2, |I+| = 1.
double quad_weight(const CollocationGrid1D& g);

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

// X^s norm: (sum (1 - lambda)^{2s} a^2)^{1/2}. 1D fields use lambda_I,
// 2D fields use lambda_Omega at h = 1 (the norm scale does not depend on
// the aspect ratio; only the operators do).
double xs_norm(const SpectralField1D& f, SobolevIndex s);
double xs_norm(const SpectralField2D& f, SobolevIndex s);

// Lp and sup norms of sample vectors (midpoint quadrature).
double lp_norm(const std::vector<double>& samples, double p, const CollocationGrid1D& g);
double sup_norm(const std::vector<double>& samples);

// ---------------------------------------------------------------------------
// Averaging / extension / trace operators
// ---------------------------------------------------------------------------

// E: extend a function on I constantly in the vertical direction.
// Coefficients: (Eu)_{i0} = u_i, zero otherwise.
SpectralField2D extend_constant(const SpectralField1D& u, int n2);

// P: vertical average over I+. Coefficients: (Pw)_i = w_{i0}.
SpectralField1D vertical_average(const SpectralField2D& w);

// Tr: restriction to the bottom edge x2 = 0. Coefficients b_i = sum_j a_ij c2(j).
SpectralField1D bottom_trace(const SpectralField2D& w);

// Tr': adjoint of the bottom trace, a_ij = g_i c2(j).
SpectralField2D bottom_trace_adjoint(const SpectralField1D& g, int n2);

// (I - EP): zero the vertically-averaged part (the j = 0 coefficients).
SpectralField2D subtract_vertical_mean(const SpectralField2D& w);

// ---------------------------------------------------------------------------
// Resolvents and semigroups (diagonal modewise)
// ---------------------------------------------------------------------------

// R(lambda, scale*A - shift): divide coefficient by (lambda + shift - scale*eig).
// Requires lambda > 0, shift >= 0 (the spectra are nonpositive).
SpectralField1D resolvent_I(const SpectralField1D& f, double lambda,
                            double scale = 1.0, double shift = 0.0);
SpectralField2D resolvent_Omega(const SpectralField2D& f, double lambda, double h,
                                double shift = 0.0);

// e^{t(scale*A - shift)}: multiply coefficient by exp(t(scale*eig - shift)).
// Requires t >= 0.
SpectralField1D semigroup_I(const SpectralField1D& f, double t,
                            double scale = 1.0, double shift = 0.0);
SpectralField2D semigroup_Omega(const SpectralField2D& f, double t, double h,
                                double shift = 0.0);

// Multiplication semigroup e^{t f} u, pointwise on samples. Requires f <= 0
// at every node and t >= 0; sup-norm nonexpansive.
std::vector<double> mult_semigroup(const std::vector<double>& f_samples, double t,
                                   const std::vector<double>& u_samples);

}  // namespace morphlab
