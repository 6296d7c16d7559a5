#include <doctest.h>

#include <cmath>

#include "mouldnf/observable.hpp"
#include "random_observable.hpp"

using namespace mouldnf;

TEST_CASE("norm of a single x-mode") {
  Observable g = Observable::single({1}, {0}, 2.0);
  CHECK(norm_rho(g, 0.5) == doctest::Approx(5.43656365691809).epsilon(1e-14));
  CHECK(norm_rho(Observable(1), 0.5) == 0.0);
  CHECK_THROWS_AS(norm_rho(g, 0.0), std::invalid_argument);
}

TEST_CASE("norm weights m once and k twice") {
  Observable g = Observable::single({1, -2}, {0, 3}, Complex(0.0, -1.5));
  CHECK(norm_rho(g, 0.25) == doctest::Approx(1.5 * std::exp(0.25 * (3 + 2 * 3))).epsilon(1e-14));
}

TEST_CASE("norm is monotone in rho") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    Observable g = testing::random_observable(rng, 2, 5, 3);
    CHECK(norm_rho(g, 0.3) <= norm_rho(g, 0.7));
  }
}

TEST_CASE("exact cancellation erases the entry") {
  Observable g(1);
  g.add({1}, {1}, Complex(0.5, 0.25));
  g.add({1}, {1}, Complex(-0.5, -0.25));
  CHECK(g.empty());
  g.add({2}, {0}, 0.0);
  CHECK(g.empty());
}

TEST_CASE("prune drops relative noise") {
  Observable g(1);
  g.add({1}, {0}, 1.0);
  g.add({2}, {0}, 1e-17);
  g.add({3}, {0}, 1e-15);
  g.prune();
  CHECK(g.size() == 2);
  CHECK(g.coeff({2}, {0}) == Complex{});
}

TEST_CASE("slices reassemble the observable") {
  std::mt19937_64 rng(11);
  Observable g = testing::random_observable(rng, 2, 12, 2);
  Observable sum(2);
  for (const auto& k : g.k_support()) sum += g.slice(k);
  CHECK(sum.coeffs() == g.coeffs());
}

TEST_CASE("reality defect of a realified observable") {
  std::mt19937_64 rng(3);
  Observable g = testing::realify(testing::random_observable(rng, 2, 6, 2));
  CHECK(g.reality_defect() == 0.0);
  Observable h = Observable::single({1, 0}, {0, 0}, 1.0);
  CHECK(h.reality_defect() == 1.0);
}

TEST_CASE("evaluation matches the trigonometric sum") {
  Observable g(1);
  g.add({1}, {0}, 1.0);
  g.add({0}, {2}, Complex(0.0, 1.0));
  Complex v = g.evaluate({0.3}, {-0.7});
  Complex expect = std::polar(1.0, 0.3) + Complex(0.0, 1.0) * std::polar(1.0, -1.4);
  CHECK(std::abs(v - expect) < 1e-15);
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(5);
  Observable g = testing::random_observable(rng, 3, 8, 2);
  g.set_real_flag(false);
  Observable back = observable_from_json(to_json(g));
  CHECK(back.coeffs() == g.coeffs());
  CHECK(back.dim() == 3);
  CHECK(nlohmann::json::parse(to_json(g).dump()) == to_json(g));
}

TEST_CASE("json rejects unknown keys and mismatched dimensions") {
  nlohmann::json bad = {{"d", 1}, {"coeff", nlohmann::json::array()}};
  CHECK_THROWS_AS(observable_from_json(bad), std::invalid_argument);
  nlohmann::json bad_mode = {{"d", 1}, {"coeffs", {{{"k", {1}}, {"m", {0}}, {"re", 1.0}, {"phase", 0.0}}}}};
  CHECK_THROWS_AS(observable_from_json(bad_mode), std::invalid_argument);
  nlohmann::json bad_dim = {{"d", 2}, {"coeffs", {{{"k", {1}}, {"m", {0}}, {"re", 1.0}}}}};
  CHECK_THROWS_AS(observable_from_json(bad_dim), std::invalid_argument);
}

TEST_CASE("max coefficient difference covers both supports") {
  Observable a = Observable::single({1}, {0}, 1.0);
  Observable b = Observable::single({2}, {0}, 3.0);
  CHECK(max_coeff_diff(a, b) == 3.0);
  CHECK(max_coeff_diff(a, a) == 0.0);
}
