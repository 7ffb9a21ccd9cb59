#include <doctest.h>

#include <cmath>
#include <random>

#include "morphlab/spectral.hpp"

using namespace morphlab;

namespace {

SpectralField1D random_field_1d(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  SpectralField1D f(n);
  for (double& v : f.a) v = dist(rng);
  return f;
}

SpectralField2D random_field_2d(int n1, int n2, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  SpectralField2D f(n1, n2);
  for (double& v : f.a) v = dist(rng);
  return f;
}

double max_coeff_diff(const SpectralField1D& a, const SpectralField1D& b) {
  double m = 0.0;
  for (int i = 0; i < a.n(); ++i) m = std::max(m, std::abs(a.a[i] - b.a[i]));
  return m;
}

double max_coeff_diff(const SpectralField2D& a, const SpectralField2D& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.a.size(); ++k)
    m = std::max(m, std::abs(a.a[k] - b.a[k]));
  return m;
}

}  // namespace

TEST_CASE("eigenvalues match the closed forms") {
  CHECK(eigenvalue_I(0) == 0.0);
  CHECK(eigenvalue_I(2) == doctest::Approx(-kPi * kPi).epsilon(1e-15));
  CHECK(eigenvalue_Iplus(1) == doctest::Approx(-kPi * kPi).epsilon(1e-15));
  // vertical mode 1 at aspect 0.5: -(pi/0.5)^2 = -4 pi^2
  CHECK(eigenvalue_Omega(0, 1, 0.5) == doctest::Approx(-4.0 * kPi * kPi).epsilon(1e-15));
  CHECK(eigenvalue_Omega(3, 2, 1.0) ==
        doctest::Approx(eigenvalue_I(3) + eigenvalue_Iplus(2)).epsilon(1e-15));
  CHECK_THROWS_AS(eigenvalue_Omega(0, 0, 0.0), std::domain_error);
  CHECK_THROWS_AS(eigenvalue_Omega(0, 0, 1.5), std::domain_error);
  CHECK_THROWS_AS(eigenvalue_I(-1), std::domain_error);
}

TEST_CASE("basis values and normalisation") {
  CHECK(basis_u(0, -0.3) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(basis_u(0, 0.9) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(basis_v(0, 0.2) == 1.0);
  CHECK(basis_w(1, 1, 0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(basis_u(1, 1.01), std::domain_error);
  CHECK_THROWS_AS(basis_v(1, -0.01), std::domain_error);

  // ||u_i||_{L2(I)} = 1 by midpoint quadrature
  const CollocationGrid1D g = collocation_grid_I(64);
  for (int i : {0, 1, 5, 17}) {
    double acc = 0.0;
    for (double x : g.x) acc += quad_weight(g) * basis_u(i, x) * basis_u(i, x);
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
  }
  // u_i(0): zero for odd modes, alternating sign for even
  CHECK(basis_u_at_origin(1) == 0.0);
  CHECK(basis_u_at_origin(2) == -1.0);
  CHECK(basis_u_at_origin(4) == 1.0);
  CHECK(basis_u_at_origin(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("orthonormality under quadrature") {
  const int n = 16;
  const CollocationGrid1D g = collocation_grid_I(n);
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) {
      double acc = 0.0;
      for (double x : g.x) acc += quad_weight(g) * basis_u(i, x) * basis_u(k, x);
      CHECK(std::abs(acc - (i == k ? 1.0 : 0.0)) < 1e-12);
    }
  const CollocationGrid1D gp = collocation_grid_Iplus(n);
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) {
      double acc = 0.0;
      for (double y : gp.x) acc += quad_weight(gp) * basis_v(i, y) * basis_v(k, y);
      CHECK(std::abs(acc - (i == k ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("grid construction rules") {
  CHECK_THROWS_AS(collocation_grid_I(15), std::domain_error);  // odd keeps 0 on grid
  const CollocationGrid1D g = collocation_grid_I(8);
  for (double x : g.x) CHECK(x != 0.0);
  CHECK(dealias_padding(64) == 96);
  CHECK(dealias_padding(66) % 2 == 0);
}

TEST_CASE("transform round trip") {
  // single mode a0 = 1: constant samples 1/sqrt(2)
  const CollocationGrid1D g = collocation_grid_I(16);
  SpectralField1D f(16);
  f.a[0] = 1.0;
  const auto s = to_physical(f, g);
  for (double v : s) CHECK(v == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  const SpectralField1D back = to_spectral(s, g, 16);
  CHECK(max_coeff_diff(f, back) < 1e-14);

  const SpectralField1D r = random_field_1d(16, 11);
  const SpectralField1D r2 = to_spectral(to_physical(r, g), g, 16);
  CHECK(max_coeff_diff(r, r2) < 1e-12);

  // sampling w_{2,3} recovers a single nonzero coefficient
  const CollocationGrid2D g2 = collocation_grid_2d(16, 16);
  std::vector<double> samples(16 * 16);
  for (int k = 0; k < 16; ++k)
    for (int l = 0; l < 16; ++l)
      samples[k * 16 + l] = basis_w(2, 3, g2.gx.x[k], g2.gy.x[l]);
  const SpectralField2D w = to_spectral(samples, g2, 16, 16);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const double want = (i == 2 && j == 3) ? 1.0 : 0.0;
      CHECK(std::abs(w.at(i, j) - want) < 1e-12);
    }

  // padded-grid synthesis agrees with direct evaluation
  const CollocationGrid1D gp = collocation_grid_I(dealias_padding(16));
  const auto sp = to_physical(r, gp);
  for (int k = 0; k < gp.n(); ++k)
    CHECK(sp[k] == doctest::Approx(eval_field(r, gp.x[k])).epsilon(1e-12));

  CHECK_THROWS_AS(to_spectral(s, g, 17), std::invalid_argument);
}

TEST_CASE("2D transform round trip and Parseval") {
  const CollocationGrid2D g2 = collocation_grid_2d(12, 8);
  const SpectralField2D r = random_field_2d(12, 8, 5);
  const SpectralField2D r2 = to_spectral(to_physical(r, g2), g2, 12, 8);
  CHECK(max_coeff_diff(r, r2) < 1e-12);

  // Parseval: X^0 norm equals grid L2 norm
  const auto s = to_physical(r, g2);
  double acc = 0.0;
  const double w = quad_weight(g2.gx) * quad_weight(g2.gy);
  for (double v : s) acc += w * v * v;
  CHECK(std::sqrt(acc) == doctest::Approx(xs_norm(r, SobolevIndex{0.0})).epsilon(1e-10));
}

TEST_CASE("xs_norm weighted sums") {
  SpectralField1D u2(8);
  u2.a[2] = 1.0;
  CHECK(xs_norm(u2, SobolevIndex{0.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(xs_norm(u2, SobolevIndex{0.5}) ==
        doctest::Approx(std::sqrt(1.0 + kPi * kPi)).epsilon(1e-14));
  // spot value from direct evaluation of the weighted sum
  CHECK(xs_norm(u2, SobolevIndex{0.5}) == doctest::Approx(3.2969).epsilon(1e-4));

  SpectralField2D w(4, 4);
  w.at(1, 1) = 1.0;
  const double lam = eigenvalue_Omega(1, 1, 1.0);
  CHECK(xs_norm(w, SobolevIndex{0.25}) ==
        doctest::Approx(std::pow(1.0 - lam, 0.25)).epsilon(1e-14));

  CHECK_THROWS_AS(SobolevIndex{1.6}, std::domain_error);
  CHECK_THROWS_AS(SobolevIndex{-1.1}, std::domain_error);
}

TEST_CASE("extension and vertical average") {
  // P w_ij = u_i when j = 0, zero otherwise
  SpectralField2D w(6, 4);
  w.at(3, 0) = 2.0;
  w.at(2, 1) = 5.0;
  const SpectralField1D p = vertical_average(w);
  CHECK(p.a[3] == 2.0);
  CHECK(p.a[2] == 0.0);

  // E u_k = w_{k0}
  SpectralField1D u(6);
  u.a[4] = 1.5;
  const SpectralField2D e = extend_constant(u, 4);
  CHECK(e.at(4, 0) == 1.5);
  CHECK(e.at(4, 1) == 0.0);

  // P(E(u)) = u exactly
  const SpectralField1D r = random_field_1d(12, 3);
  CHECK(max_coeff_diff(vertical_average(extend_constant(r, 5)), r) == 0.0);
}

TEST_CASE("bottom trace and adjoint") {
  // Tr w_ij = c2(j) u_i; for j = 2 the factor is sqrt(2)
  SpectralField2D w(6, 5);
  w.at(4, 2) = 1.0;
  const SpectralField1D t = bottom_trace(w);
  CHECK(t.a[4] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  // Tr(E u) = u exactly
  const SpectralField1D r = random_field_1d(10, 7);
  CHECK(max_coeff_diff(bottom_trace(extend_constant(r, 6)), r) == 0.0);

  // adjoint pairing <Tr' g, w> = <g, Tr w>
  const SpectralField1D g = random_field_1d(10, 21);
  const SpectralField2D w2 = random_field_2d(10, 6, 22);
  const SpectralField2D tg = bottom_trace_adjoint(g, 6);
  double lhs = 0.0;
  for (std::size_t k = 0; k < w2.a.size(); ++k) lhs += tg.a[k] * w2.a[k];
  const SpectralField1D tw = bottom_trace(w2);
  double rhs = 0.0;
  for (int i = 0; i < 10; ++i) rhs += g.a[i] * tw.a[i];
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

  // trace agrees with pointwise evaluation on the bottom edge
  for (double x : {-0.73, 0.11, 0.62})
    CHECK(eval_field(tw, x) == doctest::Approx(eval_field(w2, x, 0.0)).epsilon(1e-12));
}

TEST_CASE("adjointness of E and P under the plain pairing") {
  const SpectralField1D u = random_field_1d(14, 31);
  const SpectralField2D w = random_field_2d(14, 7, 32);
  const SpectralField2D eu = extend_constant(u, 7);
  double lhs = 0.0;
  for (std::size_t k = 0; k < w.a.size(); ++k) lhs += eu.a[k] * w.a[k];
  const SpectralField1D pw = vertical_average(w);
  double rhs = 0.0;
  for (int i = 0; i < 14; ++i) rhs += u.a[i] * pw.a[i];
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("resolvent is modewise division") {
  SpectralField1D u0(4);
  u0.a[0] = 1.0;
  const SpectralField1D r0 = resolvent_I(u0, 1.0);
  CHECK(r0.a[0] == 1.0);  // zero mode: divide by (1 - 0)

  SpectralField2D w(4, 4);
  w.at(1, 2) = 1.0;
  const SpectralField2D r = resolvent_Omega(w, 2.0, 0.5);
  CHECK(r.at(1, 2) ==
        doctest::Approx(1.0 / (2.0 - eigenvalue_Omega(1, 2, 0.5))).epsilon(1e-15));

  // commutes with extension: R(b1, A_h) E u = E R(b1, A_0) u, exactly
  const SpectralField1D u = random_field_1d(12, 41);
  const SpectralField2D lhs = resolvent_Omega(extend_constant(u, 5), 1.7, 0.3);
  const SpectralField2D rhs = extend_constant(resolvent_I(u, 1.7), 5);
  CHECK(max_coeff_diff(lhs, rhs) == 0.0);

  CHECK_THROWS_AS(resolvent_I(u, 0.0), std::domain_error);
  CHECK_THROWS_AS(resolvent_Omega(w, -1.0, 0.5), std::domain_error);
}

TEST_CASE("modewise resolvent norm bound with constant one") {
  // (1 - lam)^{s'-s} / (lambda - lam) <= (1 + lambda^{s'-s}) / lambda
  for (double a : {0.0, 0.3, 0.7, 1.0})
    for (double lambda : {0.5, 1.0, 5.0})
      for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) {
          const double lam = eigenvalue_Omega(i, j, 1.0);
          const double ratio = std::pow(1.0 - lam, a) / (lambda - lam);
          const double bound = (1.0 + std::pow(lambda, a)) / lambda;
          CHECK(ratio <= bound * (1.0 + 1e-12));
        }
}

TEST_CASE("semigroup is modewise exponential") {
  const SpectralField2D w = random_field_2d(8, 6, 51);
  const SpectralField2D id = semigroup_Omega(w, 0.0, 0.5);
  CHECK(max_coeff_diff(id, w) == 0.0);

  SpectralField1D u2(4);
  u2.a[2] = 1.0;
  const SpectralField1D s = semigroup_I(u2, 1.0);
  CHECK(s.a[2] == doctest::Approx(std::exp(-kPi * kPi)).epsilon(1e-14));
  CHECK(s.a[2] == doctest::Approx(5.17e-5).epsilon(2e-3));

  // commutes with extension, exactly
  const SpectralField1D u = random_field_1d(12, 52);
  const SpectralField2D lhs = semigroup_Omega(extend_constant(u, 5), 0.37, 0.6);
  const SpectralField2D rhs = extend_constant(semigroup_I(u, 0.37), 5);
  CHECK(max_coeff_diff(lhs, rhs) == 0.0);

  // semigroup property holds exactly modewise
  const SpectralField2D one = semigroup_Omega(semigroup_Omega(w, 0.2, 0.5), 0.3, 0.5);
  const SpectralField2D two = semigroup_Omega(w, 0.5, 0.5);
  CHECK(max_coeff_diff(one, two) < 1e-15);

  CHECK_THROWS_AS(semigroup_I(u, -0.1), std::domain_error);
}

TEST_CASE("semigroup keeps band-limited nonnegative data nonnegative") {
  const CollocationGrid2D g2 = collocation_grid_2d(16, 8);
  std::vector<double> s(16 * 8);
  for (int k = 0; k < 16; ++k)
    for (int l = 0; l < 8; ++l)
      s[k * 8 + l] = (1.0 + 0.5 * std::cos(kPi * (g2.gx.x[k] + 1.0) / 2.0)) *
                     (1.0 + 0.4 * std::cos(kPi * g2.gy.x[l]));
  const SpectralField2D f = to_spectral(s, g2, 16, 8);
  const auto evolved = to_physical(semigroup_Omega(f, 0.05, 0.7), g2);
  for (double v : evolved) CHECK(v >= -1e-8);
}

TEST_CASE("multiplication semigroup") {
  const std::vector<double> u{1.0, -2.0, 0.5, 3.0};
  const std::vector<double> zero(4, 0.0);
  CHECK(mult_semigroup(zero, 0.0, u) == u);

  const std::vector<double> minus_one(4, -1.0);
  const auto half = mult_semigroup(minus_one, std::log(2.0), u);
  for (int k = 0; k < 4; ++k) CHECK(half[k] == doctest::Approx(u[k] / 2.0).epsilon(1e-15));

  std::vector<double> bad(4, 0.0);
  bad[2] = 0.1;
  CHECK_THROWS_AS(mult_semigroup(bad, 1.0, u), std::domain_error);

  // time-Lipschitz bound in Lp against the sup of the argument
  const CollocationGrid1D g = collocation_grid_I(32);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> neg(-3.0, 0.0), any(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> f(32), v(32);
    for (int k = 0; k < 32; ++k) {
      f[k] = neg(rng);
      v[k] = any(rng);
    }
    const double t1 = 0.3, t2 = 0.85;
    const auto a = mult_semigroup(f, t1, v);
    const auto b = mult_semigroup(f, t2, v);
    std::vector<double> diff(32);
    for (int k = 0; k < 32; ++k) diff[k] = a[k] - b[k];
    const double lhs = lp_norm(diff, 4.0, g);
    const double rhs = (t2 - t1) * lp_norm(f, 4.0, g) * sup_norm(v);
    CHECK(lhs <= rhs * (1.0 + 1e-12));
  }
}

TEST_CASE("vertical-mean removal") {
  SpectralField2D w = random_field_2d(6, 5, 61);
  const SpectralField2D r = subtract_vertical_mean(w);
  for (int i = 0; i < 6; ++i) {
    CHECK(r.at(i, 0) == 0.0);
    for (int j = 1; j < 5; ++j) CHECK(r.at(i, j) == w.at(i, j));
  }
  CHECK(max_coeff_diff(subtract_vertical_mean(r), r) == 0.0);
  // output orthogonal to extended fields
  const SpectralField1D u = random_field_1d(6, 62);
  const SpectralField2D eu = extend_constant(u, 5);
  double dot = 0.0;
  for (std::size_t k = 0; k < r.a.size(); ++k) dot += r.a[k] * eu.a[k];
  CHECK(dot == 0.0);
}

TEST_CASE("trace inequality with the explicit constant, sampled") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> dist;
  for (double s : {0.3, 0.5, 0.75}) {
    const double C = std::sqrt(std::pow(3.0, 2 * s) * std::pow(kPi / 2.0, 4 * s - 1) *
                               8 * s / (4 * s - 1));
    for (int rep = 0; rep < 50; ++rep) {
      SpectralField2D w(24, 12);
      for (double& v : w.a) v = dist(rng);
      const double ratio =
          xs_norm(bottom_trace(w), SobolevIndex{s - 0.25}) / xs_norm(w, SobolevIndex{s});
      CHECK(ratio <= C);
    }
    // single-mode rows: Tr w_{i0} = u_i, ratio (1 - lam_I)^{-1/4} <= 1
    for (int i : {0, 1, 5}) {
      SpectralField2D w(8, 4);
      w.at(i, 0) = 1.0;
      const double ratio =
          xs_norm(bottom_trace(w), SobolevIndex{s - 0.25}) / xs_norm(w, SobolevIndex{s});
      CHECK(ratio <= 1.0 + 1e-15);
    }
  }
}
