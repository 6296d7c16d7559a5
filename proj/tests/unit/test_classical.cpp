#include <doctest.h>

#include <cmath>

#include "mouldnf/classical.hpp"
#include "random_observable.hpp"

using namespace mouldnf;

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

using Point = std::pair<std::vector<double>, std::vector<double>>;

// Central differences of F at (x, xi) along coordinate j of x (which = 0) or xi (which = 1).
Complex partial(const Observable& f, const Point& p, int which, std::size_t j) {
  const double h = 1e-5;
  Point a = p, b = p;
  auto& ca = which == 0 ? a.first : a.second;
  auto& cb = which == 0 ? b.first : b.second;
  ca[j] += h;
  cb[j] -= h;
  return (f.evaluate(a.first, a.second) - f.evaluate(b.first, b.second)) / (2.0 * h);
}

Complex poisson_by_differences(const Observable& f, const Observable& g, const Point& p) {
  Complex acc{};
  for (std::size_t j = 0; j < f.dim(); ++j)
    acc += partial(f, p, 1, j) * partial(g, p, 0, j) - partial(f, p, 0, j) * partial(g, p, 1, j);
  return acc;
}

}  // namespace

TEST_CASE("poisson bracket of x- and xi-modes") {
  Observable f = Observable::single({1}, {0}, 1.0);
  Observable g = Observable::single({0}, {1}, 1.0);
  Observable h = poisson_bracket(f, g);
  CHECK(h.size() == 1);
  CHECK(h.coeff({1}, {1}) == Complex(1.0));
  CHECK(poisson_bracket(f, f).empty());
  CHECK(poisson_bracket(f, Observable::single({2}, {0}, 1.0)).empty());
}

TEST_CASE("poisson bracket matches finite differences") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 20; ++t) {
    Observable f = testing::random_observable(rng, 2, 3, 2);
    Observable g = testing::random_observable(rng, 2, 3, 2);
    Observable h = poisson_bracket(f, g);
    Point p{{u(rng), u(rng)}, {u(rng), u(rng)}};
    Complex fd = poisson_by_differences(f, g, p);
    CHECK(std::abs(h.evaluate(p.first, p.second) - fd) < 1e-6 * (1.0 + std::abs(fd)));
  }
}

TEST_CASE("poisson bracket is antisymmetric and satisfies Jacobi") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 50; ++t) {
    Observable a = testing::random_observable(rng, 2, 2, 2);
    Observable b = testing::random_observable(rng, 2, 2, 2);
    Observable c = testing::random_observable(rng, 2, 2, 2);
    Observable anti = poisson_bracket(a, b) + poisson_bracket(b, a);
    CHECK(anti.max_abs() <= 1e-15 * 64.0);
    Observable jac = poisson_bracket(a, poisson_bracket(b, c)) + poisson_bracket(b, poisson_bracket(c, a)) +
                     poisson_bracket(c, poisson_bracket(a, b));
    double scale = norm_rho(a, 1e-9) * norm_rho(b, 1e-9) * norm_rho(c, 1e-9) * 64.0;
    CHECK(jac.max_abs() <= 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(poisson_bracket(Observable(1), Observable(2)), std::invalid_argument);
}

TEST_CASE("homogeneous parts") {
  Frequency gold({1.0, kPhi});
  auto one = homogeneous_parts(Observable::single({1, 0}, {0, 0}, 1.0), gold);
  REQUIRE(one.size() == 1);
  CHECK(one[0].lambda == Complex(0.0, 1.0));

  Observable pm(2);
  pm.add({1, 0}, {0, 1}, 1.0);
  pm.add({-1, 0}, {1, 0}, 2.0);
  auto two = homogeneous_parts(pm, gold);
  REQUIRE(two.size() == 2);
  CHECK(two[0].lambda == Complex(0.0, -1.0));
  CHECK(two[1].lambda == Complex(0.0, 1.0));

  Frequency res({1.0, 2.0}, {{2, -1}});
  Observable lat(2);
  lat.add({2, -1}, {0, 0}, 1.0);
  lat.add({4, -2}, {1, 0}, 1.0);
  auto same = homogeneous_parts(lat, res);
  REQUIRE(same.size() == 1);
  CHECK(same[0].lambda == Complex{});
}

TEST_CASE("homogeneous parts reassemble B bitwise") {
  Frequency res({1.0, 2.0}, {{2, -1}});
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    Observable b = testing::random_observable(rng, 2, 10, 3);
    Observable sum(2);
    for (const auto& p : homogeneous_parts(b, res)) sum += p.part;
    CHECK(sum.coeffs() == b.coeffs());
  }
}

TEST_CASE("epsilon_r closed forms") {
  Frequency gold({1.0, kPhi});
  Observable b = Observable::single({0, 1}, {1, 0}, 0.1);
  double rho = 1.0, eta = 0.5, tau = 1.0;
  double expect = norm_rho(b, rho) * std::exp(eta / kPhi);
  CHECK(epsilon_r(b, 1, eta, tau, rho, gold) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(epsilon_r(Observable(2), 3, eta, tau, rho, gold) == 0.0);
  // Two letters: words (l,l) with beta = 2/phi + 1/(2 phi).
  double two = norm_rho(b, rho) * norm_rho(b, rho) * std::exp(eta * (2.0 / kPhi + 1.0 / (2.0 * kPhi)));
  CHECK(epsilon_r(b, 2, eta, tau, rho, gold) == doctest::Approx(two).epsilon(1e-14));
}

TEST_CASE("bracket-norm axioms on samples") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ClassicalBackend cl;
  Frequency gold({1.0, kPhi});
  for (int t = 0; t < 200; ++t) {
    double rho = 0.2 + 1.8 * u(rng);
    double rp = rho * (0.05 + 0.9 * u(rng));
    double rpp = rp + (rho - rp) * (0.05 + 0.95 * u(rng));
    Observable f = testing::random_observable(rng, 2, 4, 3);
    Observable g = testing::random_observable(rng, 2, 4, 3);
    double lhs = norm_rho(cl.bracket(f, g), rp);
    double rhs = norm_rho(f, rho) * norm_rho(g, rpp) / (std::exp(2.0) * (rho - rp) * (rpp - rp));
    CHECK(lhs <= rhs * (1 + 1e-12));
    double x0 = norm_rho(cl.ad_x0(g, gold), rp);
    CHECK(x0 <= norm_rho(g, rho) / (std::exp(1.0) * (rho - rp)) * (1 + 1e-12));
  }
}
