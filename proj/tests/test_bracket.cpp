#include <doctest.h>

#include <cmath>

#include "dwpf/bracket.hpp"
#include "dwpf/errors.hpp"
#include "dwpf/jet.hpp"
#include "oracles.hpp"

using namespace dwpf;
using oracle::rel;

namespace {

BracketParams with_lambda(cdouble lambda) {
  BracketParams p;
  p.lambda = lambda;
  return p;
}

const cdouble kPoints[] = {{0.37, 0.11}, {-0.62, 0.25}, {1.3, -0.4}, {0.05, 0.45}};
const cdouble kLambdas[] = {{1.0, 0.0}, {0.7, 0.2}, {0.0, std::numbers::pi / 5}};

}  // namespace

TEST_CASE("bracket is sinh(lambda x)") {
  const auto p = with_lambda(1.0);
  CHECK(bracket(p, 0.0) == cdouble(0.0));
  CHECK(rel(bracket(p, 1.0), std::sinh(1.0)) < 1e-15);
  for (cdouble lam : kLambdas)
    for (cdouble x : kPoints) {
      CHECK(rel(bracket(with_lambda(lam), x), std::sinh(lam * x)) < 1e-15);
      CHECK(rel(bracket(with_lambda(lam), -x), -bracket(with_lambda(lam), x)) < 1e-15);
    }
}

TEST_CASE("falling products") {
  const auto p = with_lambda(1.0);
  CHECK(bracket_falling(p, {0.3, 0.2}, 0) == cdouble(1.0));
  CHECK(bracket_falling(p, {0.3, 0.2}, 1) == bracket(p, {0.3, 0.2}));
  CHECK(rel(bracket_falling(p, 2.0, 2), std::sinh(2.0) * std::sinh(1.0)) < 1e-15);
  CHECK_THROWS_AS(bracket_falling(p, 1.0, -1), InvalidArgument);
  for (cdouble lam : kLambdas)
    for (cdouble x : kPoints)
      for (int m = 1; m <= 5; ++m) {
        const auto q = with_lambda(lam);
        CHECK(rel(bracket_falling(q, x, m), bracket(q, x) * bracket_falling(q, x - 1.0, m - 1)) < 1e-14);
      }
}

TEST_CASE("phi and its singularities") {
  const auto p = with_lambda(1.0);
  CHECK(rel(phi(p, 1.0), 1.0 / (std::sinh(1.0) * std::sinh(2.0))) < 1e-15);
  CHECK_THROWS_AS(phi(p, 0.0), SingularArgument);
  CHECK_THROWS_AS(phi(p, -1.0), SingularArgument);
  // Zeros of sinh repeat with period i*pi/lambda.
  CHECK_THROWS_AS(phi(p, cdouble(0.0, std::numbers::pi)), SingularArgument);
  for (cdouble lam : kLambdas)
    for (cdouble x : kPoints) CHECK(rel(phi(with_lambda(lam), x), phi(with_lambda(lam), -1.0 - x)) < 1e-13);
}

TEST_CASE("params validation") {
  CHECK_THROWS_AS(with_lambda(0.0).validate(), InvalidArgument);
  BracketParams p;
  p.genericity_tol = 0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  CHECK(precision_from_string("extended") == Precision::extended);
  CHECK(precision_from_string("f64") == Precision::f64);
  CHECK_THROWS_AS(precision_from_string("quad"), InvalidArgument);
}

TEST_CASE("jet arithmetic") {
  using J = Jet<cdouble>;
  // 1 / (1 - t) = sum t^n
  J a = J::constant(6, 1.0);
  a[1] = -1.0;
  const J inv = a.reciprocal();
  for (int n = 0; n <= 6; ++n) CHECK(std::abs(inv[n] - 1.0) < 1e-15);
  const J one = a * inv;
  CHECK(std::abs(one[0] - 1.0) < 1e-15);
  for (int n = 1; n <= 6; ++n) CHECK(std::abs(one[n]) < 1e-15);
  // sinh jet: derivatives alternate sinh and cosh, scaled by lambda^n.
  const cdouble lam(0.7, 0.2), x(0.3, -0.1);
  const J s = J::sinh_shifted(5, lam, x);
  for (int n = 0; n <= 5; ++n) {
    const cdouble expected = std::pow(lam, n) * (n % 2 == 0 ? std::sinh(lam * x) : std::cosh(lam * x));
    CHECK(rel(s.derivative(n), expected) < 1e-14);
  }
  // Mixed orders truncate to the shorter operand.
  CHECK((J::constant(3, 1.0) * J::constant(5, 2.0)).order() == 3);
}

TEST_CASE("phi derivatives: first derivative in closed form") {
  const auto p = with_lambda(1.0);
  const auto d = phi_derivatives(p, 1.0, 1);
  REQUIRE(d.size() == 2);
  CHECK(rel(d[0], phi(p, 1.0)) < 1e-15);
  const double s1 = std::sinh(1.0), s2 = std::sinh(2.0);
  const double expected = -(std::cosh(1.0) * s2 + s1 * std::cosh(2.0)) / std::pow(s1 * s2, 2);
  CHECK(rel(d[1], expected) < 1e-14);
  CHECK(rel(d[1], -std::sinh(3.0) / std::pow(s1 * s2, 2)) < 1e-14);
  CHECK(phi_derivatives(p, 1.0, 0).size() == 1);
  CHECK_THROWS_AS(phi_derivatives(p, 0.0, 2), SingularArgument);
}

TEST_CASE("phi derivatives agree with finite differences and Cauchy integrals") {
  for (cdouble lam : kLambdas)
    for (cdouble x : kPoints) {
      const auto p = with_lambda(lam);
      const auto d = phi_derivatives(p, x, 6);
      auto f = [&](cdouble z) { return phi(p, z); };
      // Step h = 1e-4 applied to the previous order.
      CHECK(rel(d[1], oracle::central_difference(f, x)) < 1e-6);
      for (int n = 2; n <= 4; ++n) {
        auto g = [&](cdouble z) { return phi_derivatives(p, z, n - 1)[n - 1]; };
        CHECK(rel(d[n], oracle::central_difference(g, x)) < 1e-6);
      }
      for (int n = 1; n <= 6; ++n) CHECK(rel(d[n], oracle::cauchy_derivative(f, x, n)) < 1e-9);
    }
}

TEST_CASE("extended precision agrees with double") {
  BracketParams p = with_lambda({0.7, 0.2});
  const Bracket<double> bd(p);
  const Bracket<long double> bl(p);
  for (cdouble x : kPoints) {
    const auto dd = bd.phi_derivatives(x, 4);
    const auto dl = bl.phi_derivatives({(long double)x.real(), (long double)x.imag()}, 4);
    for (int n = 0; n <= 4; ++n)
      CHECK(rel(dd[n], cdouble((double)dl[n].real(), (double)dl[n].imag())) < 1e-13);
  }
}
