#include <doctest.h>

#include <cmath>
#include <complex>

#include "lrf/errors.hpp"
#include "lrf/windows.hpp"

using namespace lrf;

TEST_CASE("window measures") {
  CHECK(Window::interval(1.0, 1.0).measure() == doctest::Approx(2.0));
  CHECK(Window::interval(3.0, 0.5).measure() == doctest::Approx(3.5));
  CHECK(Window::ball(1).measure() == doctest::Approx(2.0));
  CHECK(Window::ball(2).measure() == doctest::Approx(M_PI));
  CHECK(Window::ball(3).measure() == doctest::Approx(4.0 * M_PI / 3.0));
  CHECK(Window::box(2).measure() == doctest::Approx(4.0));
  CHECK(Window::box(3).measure() == doctest::Approx(8.0));
  CHECK_THROWS_AS(Window::interval(0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(Window::ball(4), ValidationError);
}

TEST_CASE("fourier transform at zero equals the window measure") {
  for (const Window& w : {Window::interval(1.0, 1.0), Window::interval(2.0, 0.25),
                          Window::ball(1), Window::ball(2), Window::ball(3), Window::box(2),
                          Window::box(3)}) {
    auto v = k_delta(w, {0.0, 0.0, 0.0});
    CHECK(v.real() == doctest::Approx(w.measure()).epsilon(1e-10));
    CHECK(std::abs(v.imag()) < 1e-12);
  }
}

TEST_CASE("analytic transform matches brute-force quadrature, all families") {
  const double rel_tol = 1e-4;
  auto check_at = [&](const Window& w, std::array<double, 3> lam, int cells) {
    auto exact = k_delta(w, lam);
    auto quad = k_delta_quadrature(w, lam, cells);
    // relative to the window measure: the transform itself passes through
    // zero, where relative error is meaningless
    CHECK(std::abs(exact - quad) / w.measure() < rel_tol);
  };

  for (double l : {-20.0, -7.3, -1.1, -1e-8, 0.0, 0.5, 3.9, 12.0, 20.0}) {
    check_at(Window::interval(1.0, 1.0), {l, 0, 0}, 20000);
    check_at(Window::interval(2.5, 0.5), {l, 0, 0}, 20000);
    check_at(Window::ball(1), {l, 0, 0}, 20000);
  }
  for (double lx : {-14.0, -3.0, 0.0, 2.2, 13.0}) {
    for (double ly : {-9.0, 0.0, 1.7, 14.0}) {
      check_at(Window::ball(2), {lx, ly, 0}, 1200);
      check_at(Window::box(2), {lx, ly, 0}, 1200);
    }
  }
  check_at(Window::ball(3), {3.0, -2.0, 1.5}, 220);
  check_at(Window::ball(3), {0.0, 0.0, 11.0}, 220);
  check_at(Window::box(3), {4.0, 1.0, -2.5}, 220);
}

TEST_CASE("interval transform closed form and conjugate symmetry") {
  // symmetric interval [-1,1]: K(l) = 2 sin(l) / l, purely real
  Window sym = Window::interval(1.0, 1.0);
  for (double l : {0.3, 1.0, 5.0}) {
    auto v = k_delta(sym, {l, 0, 0});
    CHECK(v.real() == doctest::Approx(2.0 * std::sin(l) / l).epsilon(1e-12));
    CHECK(std::abs(v.imag()) < 1e-14);
  }
  // asymmetric interval: K(-l) = conj(K(l))
  Window asym = Window::interval(2.0, 0.5);
  for (double l : {0.7, 2.9, 16.0}) {
    auto plus = k_delta(asym, {l, 0, 0});
    auto minus = k_delta(asym, {-l, 0, 0});
    CHECK(minus.real() == doctest::Approx(plus.real()).epsilon(1e-12));
    CHECK(minus.imag() == doctest::Approx(-plus.imag()).epsilon(1e-12));
    CHECK(std::abs(plus.imag()) > 1e-6);  // genuinely complex off-center
  }
}

TEST_CASE("ball transform is radial and real") {
  Window b2 = Window::ball(2);
  auto v1 = k_delta(b2, {3.0, 4.0, 0.0});
  auto v2 = k_delta(b2, {5.0, 0.0, 0.0});
  auto v3 = k_delta(b2, {0.0, -5.0, 0.0});
  CHECK(v1.real() == doctest::Approx(v2.real()).epsilon(1e-12));
  CHECK(v3.real() == doctest::Approx(v2.real()).epsilon(1e-12));
  CHECK(std::abs(v1.imag()) < 1e-14);
}

TEST_CASE("half-integer bessel against closed forms") {
  // n=1: J_{1/2}(z) = sqrt(2/(pi z)) sin z; n=3: J_{3/2}(z) =
  // sqrt(2/(pi z)) (sin z / z - cos z).
  for (double z : {0.5, 1.0, 2.7, 10.0}) {
    CHECK(bessel_j_half_order(1, z) ==
          doctest::Approx(std::sqrt(2.0 / (M_PI * z)) * std::sin(z)).epsilon(1e-10));
    CHECK(bessel_j_half_order(3, z) ==
          doctest::Approx(std::sqrt(2.0 / (M_PI * z)) * (std::sin(z) / z - std::cos(z)))
              .epsilon(1e-10));
  }
  // n=2: integer order J_1, spot value J_1(1) = 0.4400505857
  CHECK(bessel_j_half_order(2, 1.0) == doctest::Approx(0.44005058574493355).epsilon(1e-10));
}

TEST_CASE("indicator mask counts cells of the scaled window") {
  LatticeField grid;
  grid.n = 1;
  grid.shape = {64, 1, 1};
  grid.spacing = 1.0;
  grid.origin = {32, 0, 0};
  grid.values.assign(64, 0.0);

  // interval [-1,1] scaled by r=10: cell centers -10..10 -> 21 cells
  auto m = indicator_mask(Window::interval(1.0, 1.0), 10.0, 1.0, grid);
  CHECK(m.count == 21);
  REQUIRE(m.inside.size() == grid.values.size());
  CHECK(m.inside[32] == 1);          // origin
  CHECK(m.inside[32 + 10] == 1);     // +10 boundary in
  CHECK(m.inside[32 + 11] == 0);     // +11 out

  // t rescales the radius by t^{1/n}: t=0.25, n=1 -> radius 2.5 -> 5 cells
  auto mt = indicator_mask(Window::interval(1.0, 1.0), 10.0, 0.25, grid);
  CHECK(mt.count == 5);

  // t-nesting: smaller t is a subset
  for (std::size_t i = 0; i < m.inside.size(); ++i)
    if (mt.inside[i]) CHECK(m.inside[i] == 1);

  CHECK_THROWS_AS(indicator_mask(Window::interval(1.0, 1.0), 100.0, 1.0, grid), ValidationError);
  CHECK_THROWS_AS(indicator_mask(Window::interval(1.0, 1.0), 10.0, 0.0, grid), ValidationError);
}

TEST_CASE("ball mask cell count approximates the disc area") {
  LatticeField grid;
  grid.n = 2;
  grid.shape = {128, 128, 1};
  grid.spacing = 1.0;
  grid.origin = {64, 64, 0};
  grid.values.assign(128 * 128, 0.0);
  auto m = indicator_mask(Window::ball(2), 50.0, 1.0, grid);
  const double area = M_PI * 50.0 * 50.0;
  CHECK(std::abs(static_cast<double>(m.count) - area) / area < 0.01);
}

TEST_CASE("admissible hurst lower bounds by window family") {
  CHECK(gamma_lower_bound(Window::interval(1.0, 1.0)) == doctest::Approx(0.0));
  CHECK(gamma_lower_bound(Window::ball(1)) == doctest::Approx(0.0));
  CHECK(gamma_lower_bound(Window::ball(2)) == doctest::Approx(0.25));
  CHECK(gamma_lower_bound(Window::ball(3)) == doctest::Approx(1.0 / 3.0));
  CHECK(gamma_lower_bound(Window::box(2)) == doctest::Approx(0.0));
}
