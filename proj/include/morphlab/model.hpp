// Nondimensional parameter handling, the reaction vector fields of the
// five-component surface-bulk system, the triangular change of variables
// that absorbs the singular boundary layer, and the mollifier family used
// to regularise the point source.

#pragma once

#include <array>
#include <vector>

#include "morphlab/spectral.hpp"

namespace morphlab {

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

struct ModelParams {
  double d = 1.0;                               // surface diffusion ratio
  std::array<double, 5> b{1, 1, 1, 1, 1};       // decay rates
  std::array<double, 5> c{1, 1, 1, 1, 1};       // reaction rates
  std::array<double, 5> p{1, 0, 1, 0, 0};       // sources (only p1, p3 active)

  // d, b > 0; c, p >= 0; p2 = p4 = p5 = 0. Throws std::domain_error.
  void validate() const;
};

// Dimensional inputs; all strictly positive, eps in (0,1].
struct PhysicalParams {
  double D, Dstar;          // bulk / surface diffusion
  double gamma, gamma_star; // degradation
  double k, k_prime;        // glypican association / dissociation
  double k_R, k_R_prime;    // receptor association / dissociation
  double k_Rg, k_Rg_prime;  // complex-receptor association / dissociation
  double alpha, alpha_star; // endocytosis
  double s;                 // secretion rate
  double Gamma;             // receptor production
  double G;                 // free glypican level
  double L, H;              // half-length and thickness scales
  double eps;               // thickness scaling
};

struct Nondimensionalized {
  ModelParams params;
  double h = 1.0;          // aspect ratio eps*H/L
  bool h_in_range = true;  // false when h falls outside (0,1]
};

Nondimensionalized nondimensionalize(const PhysicalParams& ph);

// ---------------------------------------------------------------------------
// Reaction terms
// ---------------------------------------------------------------------------

using Vec5 = std::array<double, 5>;

// Original-variable reactions f_1..f_5 at a point.
Vec5 reaction_f(const Vec5& u, const ModelParams& P);

// Transformed-variable reactions g_1..g_5 at a point. `m_point` is the value
// of the absorbed layer there: the bottom trace of the 2D layer for the
// rectangle system, or the 1D layer itself for the limit system. g_3..g_5 do
// not depend on it.
Vec5 reaction_g(const Vec5& z, double m_point, const ModelParams& P);

// Triangular change of variables z = M (u1 - m, u2, u3, u4, u5) and inverse.
Vec5 apply_M(const Vec5& v);
Vec5 apply_M_inverse(const Vec5& v);

// ---------------------------------------------------------------------------
// Solution states
// ---------------------------------------------------------------------------

// Five components: one 2D spectral field, one 1D spectral field, three
// sample vectors on the 1D collocation grid.
struct UState {
  SpectralField2D u1;
  SpectralField1D u2;
  std::vector<double> u3, u4, u5;
};

struct ZState {
  SpectralField2D z1;
  SpectralField1D z2;
  std::vector<double> z3, z4, z5;
};

// m is the 2D layer subtracted from u1 (pass a zero field when absent).
ZState to_z(const UState& u, const SpectralField2D& m);
UState from_z(const ZState& z, const SpectralField2D& m);

// ---------------------------------------------------------------------------
// Mollifier family
// ---------------------------------------------------------------------------

// eps in [0,1]; eps = 0 encodes the point mass at the origin.
struct MollifierSpec {
  double eps;
  explicit MollifierSpec(double e);
};

class Mollifier {
 public:
  explicit Mollifier(MollifierSpec spec) : eps_(spec.eps) {}

  double eps() const { return eps_; }

  // Pointwise value of the unit-mass bump scaled to support [-eps, eps].
  // For eps = 0 evaluation is not defined; throws.
  double eval(double x) const;

  // Pairings with the first n basis functions on I. For eps > 0 these are
  // adaptive-quadrature integrals; for eps = 0 they are u_i(0).
  std::vector<double> coeffs(int n) const;

  // Normalisation constant of the unit bump (computed once).
  static double bump_constant();

 private:
  double eps_;
};

}  // namespace morphlab
