// Time integration of the surface-bulk system by modewise exponential
// integrators. Three drivers share the machinery:
//
//   evolve_2d       — the transformed system on the rectangle, with the
//                     steady layer subtracted from the bulk component
//                     (valid for every mollifier width including the exact
//                     point source),
//   evolve_regular  — the original variables with a regular boundary
//                     source, no layer subtraction,
//   evolve_1d_limit — the flat-limit system on the interval.
//
// Every linear part is diagonal (modewise for the Laplacians, pointwise for
// the trace multiplier), so the stiff part of each step is exact; the
// nonlinear boundary terms enter through phi1-weighted exponential
// quadrature. Products are evaluated pseudo-spectrally with optional
// 3/2-rule zero padding.

#pragma once

#include <stdexcept>
#include <vector>

#include "morphlab/model.hpp"
#include "morphlab/singular.hpp"
#include "morphlab/spectral.hpp"

namespace morphlab {

enum class Scheme { Etd1, EtdRk2 };

struct SolverConfig {
  int n1 = 64;
  int n2 = 16;
  double dt = 1e-3;
  double T = 0.25;
  Scheme scheme = Scheme::Etd1;
  bool dealias = true;
  double theta = 1.0 / 32.0;
  double p_exp = 4.0;
  int snapshot_stride = 10;

  // n1 even and positive, n2 positive, 0 < dt < T, p > 2,
  // 0 < theta < min(1/16, 1/(2p)).
  void validate() const;
};

// phi1(x) = (e^x - 1)/x and phi2(x) = (e^x - 1 - x)/x^2, with series fallback
// below |x| = 1e-5 so that phi1(0) = 1, phi2(0) = 1/2.
double phi1(double x);
double phi2(double x);

// Raised when a step produces a non-finite value; carries the last valid time.
struct BlowUpError : std::runtime_error {
  double t;
  explicit BlowUpError(double t_)
      : std::runtime_error("solver blow-up at t = " + std::to_string(t_)), t(t_) {}
};

struct DiagRow {
  double t = 0.0;
  double norm_z1_Z1 = 0.0;        // ||z1||_{X^{1/2-theta}}
  double wnorm_z1_Z1plus = 0.0;   // t^{2 theta} ||z1||_{X^{1/2+theta}}
  double norm_z2 = 0.0;           // ||z2||_{X^{1/2}}
  double norm_z3_Lp = 0.0;
  double norm_z3_inf = 0.0;
  double norm_z4_Lp = 0.0;
  double norm_z5_Lp = 0.0;
  double min_u_all = 0.0;         // min over components and nodes of recovered u
  double ode_sum_max = 0.0;       // max over nodes of u3 + u4 + u5
};

// 2D run record. Snapshots hold the transformed state; `m` is the subtracted
// layer (zero for the regular path) so original variables can be recovered.
// eps = -1 marks a regular-path run.
struct Trajectory {
  std::vector<double> times;
  std::vector<ZState> snapshots;
  std::vector<DiagRow> diag;
  SpectralField2D m;
  ModelParams params;
  SolverConfig config;
  double h = 1.0;
  double eps = 0.0;
};

struct UState1D {
  SpectralField1D u1, u2;
  std::vector<double> u3, u4, u5;
};

struct ZState1D {
  SpectralField1D z1, z2;
  std::vector<double> z3, z4, z5;
};

struct Trajectory1D {
  std::vector<double> times;
  std::vector<ZState1D> snapshots;
  std::vector<DiagRow> diag;
  SpectralField1D m0;
  ModelParams params;
  SolverConfig config;
};

// Transformed-variable solver on the rectangle. Builds the layer for
// (h, eps), moves the initial data into transformed variables and advances
// the exponential scheme. u0 must be nonnegative at the collocation nodes.
Trajectory evolve_2d(const UState& u0, const ModelParams& P, double h, double eps,
                     const SolverConfig& cfg);

// Original-variable solver with a regular boundary source given by samples
// on the n1-node collocation grid (omega >= 0).
Trajectory evolve_regular(const UState& u0, const ModelParams& P, double h,
                          const std::vector<double>& omega_samples,
                          const SolverConfig& cfg);

// Flat-limit solver on the interval.
Trajectory1D evolve_1d_limit(const UState1D& u0, const ModelParams& P,
                             const SolverConfig& cfg);

// Recompute per-snapshot diagnostics for the given exponents.
std::vector<DiagRow> diagnostics(const Trajectory& traj, double theta, double p);
std::vector<DiagRow> diagnostics(const Trajectory1D& traj, double theta, double p);

// Recovered original variables at a snapshot index.
UState recover_u(const Trajectory& traj, std::size_t idx);
UState1D recover_u(const Trajectory1D& traj, std::size_t idx);

}  // namespace morphlab
