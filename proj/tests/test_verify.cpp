#include <doctest.h>

#include "dwpf/io.hpp"
#include "dwpf/verify.hpp"
#include "oracles.hpp"

using namespace dwpf;
using oracle::rel;

namespace {

CheckSpec spec_for(int k, int L_min, int L_max, int draws, std::uint64_t seed, double tol) {
  CheckSpec s;
  s.k_min = s.k_max = k;
  s.L_min = L_min;
  s.L_max = L_max;
  s.draws = draws;
  s.seed = seed;
  s.tolerance = tol;
  return s;
}

double worst(const CheckReport& r) {
  double w = 0;
  for (const auto& c : r.cases) w = std::max(w, c.rel_err);
  return w;
}

}  // namespace

TEST_CASE("relative error") {
  CHECK(relative_error(1.0, 1.0) == 0.0);
  CHECK(relative_error(2.0, 1.0) == doctest::Approx(0.5));
  CHECK(relative_error(0.0, 0.0) == 0.0);
  CHECK(relative_error(1e-20, 0.0) == doctest::Approx(1e-6));
  CHECK(lambda_presets().size() == 3);
}

TEST_CASE("limits and contour means") {
  // sin(e) / e -> 1 with an O(e^2) error that Richardson removes.
  const cdouble lim = coincident_limit([](double e) { return cdouble(std::sin(e) / e); });
  CHECK(std::abs(lim - 1.0) < 1e-14);
  // (z^2 - 1) / (z - 1) at z = 1 is 2.
  const cdouble m = contour_mean([](cdouble z) { return (z * z - 1.0) / (z - 1.0); }, 1.0);
  CHECK(std::abs(m - 2.0) < 1e-14);
  const cdouble e = contour_mean([](cdouble z) { return std::exp(z); }, cdouble(0.2, 0.1));
  CHECK(rel(e, std::exp(cdouble(0.2, 0.1))) < 1e-14);
}

TEST_CASE("Laurent fit recovers a Laurent polynomial") {
  const std::vector<cdouble> c{{0.5, 0.1}, 2.0, {-1.0, 0.3}, {0.0, 1.0}, 0.25};
  auto f = [&](cdouble z) { return laurent_eval(c, z); };
  const auto fit = laurent_fit(f, 2);
  REQUIRE(fit.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(fit[i] - c[i]) < 1e-13);
  const auto wide = laurent_fit(f, 4);
  CHECK(std::abs(wide[0]) < 1e-13);
  CHECK(std::abs(wide[8]) < 1e-13);
  CHECK_THROWS_AS(laurent_fit(f, -1), InvalidArgument);
}

TEST_CASE("equivalence suites") {
  auto ik = run_equivalence(spec_for(1, 1, 4, 5, 3, 1e-10), Method::ik, Method::brute_force);
  CHECK(ik.pass);
  CHECK(ik.cases.size() == 20);
  CHECK(worst(ik) < 1e-10);
  auto fused = run_equivalence(spec_for(2, 1, 3, 2, 4, 1e-8), Method::fused, Method::brute_force);
  CHECK(fused.pass);
  auto spin1 = run_equivalence(spec_for(2, 1, 3, 2, 5, 1e-9), Method::spin1, Method::fused);
  CHECK(spin1.pass);
  auto semi = run_equivalence(spec_for(2, 2, 2, 2, 6, 1e-8), Method::semi_homogeneous, Method::brute_force);
  CHECK(semi.pass);
  auto hom = run_equivalence(spec_for(1, 2, 2, 2, 7, 1e-8), Method::homogeneous, Method::ik);
  CHECK(hom.pass);
  for (const auto& c : hom.cases) CHECK(c.tolerance == 1e-6);
  CHECK_THROWS_AS(run_equivalence(spec_for(2, 1, 1, 1, 1, 1e-8), Method::ik, Method::fused), InvalidArgument);
  CHECK_THROWS_AS(run_equivalence(spec_for(3, 1, 1, 1, 1, 1e-8), Method::spin1, Method::fused), InvalidArgument);
}

TEST_CASE("initial condition suite") {
  CheckSpec s = spec_for(1, 1, 1, 4, 9, 1e-12);
  s.k_max = 3;
  for (Method m : {Method::fused, Method::brute_force, Method::semi_homogeneous, Method::homogeneous})
    CHECK(run_initial_condition(s, m).pass);
  CHECK(run_initial_condition(spec_for(1, 1, 1, 3, 9, 1e-12), Method::ik).pass);
  CHECK(run_initial_condition(spec_for(2, 1, 1, 3, 9, 1e-12), Method::spin1).pass);
}

TEST_CASE("rejection sampling gives up") {
  RapidityDraw d(1);
  CHECK_THROWS_AS(d.generic(2, [](const Rapidities&, const Rapidities&) { return false; }), GenericityExhausted);
  int calls = 0;
  auto [xs, ys] = d.generic(3, [&](const Rapidities&, const Rapidities&) { return ++calls == 7; });
  CHECK(calls == 7);
  CHECK(xs.size() == 3);
  for (const auto& x : xs) {
    CHECK(std::abs(x.real()) <= 1.0);
    CHECK(std::abs(x.imag()) <= 0.5);
  }
}

TEST_CASE("genericity test") {
  BracketParams p;
  p.lambda = 1.0;
  CHECK(is_generic(p, 1, {0.1, 0.4}, {0.7, -0.2}));
  CHECK_FALSE(is_generic(p, 1, {0.1, 0.1}, {0.7, -0.2}));
  CHECK_FALSE(is_generic(p, 1, {0.1, 0.4}, {0.1, -0.2}));
  CHECK_FALSE(is_generic(p, 2, {0.1, 1.1}, {0.7, -0.2}));
  CHECK(is_generic(p, 1, {0.1, 1.1}, {0.7, -0.2}));
  CHECK_FALSE(is_generic(p, 2, {0.1}, {-1.9}));
  CHECK_FALSE(is_generic(p, 1, {0.1, 0.4}, {0.7, -0.2}, 10.0));
}

TEST_CASE("corner recursions hold for every corner placement") {
  const auto r = run_recursion_suite(spec_for(2, 2, 3, 1, 21, 1e-9));
  CHECK(r.pass);
  // (4 + 9) placements, two corners each.
  CHECK(r.cases.size() == 26);
  CHECK(worst(r) < 1e-9);
  CHECK_THROWS_AS(run_recursion_suite(spec_for(1, 2, 2, 1, 1, 1e-9)), InvalidArgument);
}

TEST_CASE("the quoted corner products do not reproduce the recursion") {
  BracketParams p;
  p.lambda = {0.7, 0.2};
  const Rapidities ys{{0.21, 0.1}, {-0.3, 0.15}, {0.55, -0.1}};
  for (Corner c : {Corner::upper_left, Corner::upper_right}) {
    const int j = c == Corner::upper_left ? 0 : 2;
    Rapidities xs{0.0, {0.37, -0.2}, {-0.4, 0.3}};
    xs[0] = ys[j] + (c == Corner::upper_left ? 1.0 : 0.0);
    auto z = [&](cdouble x0) {
      Rapidities x = xs;
      x[0] = x0;
      return spin1_pf(p, x, ys).value;
    };
    const cdouble lhs = contour_mean(z, xs[0]);
    CHECK(rel(lhs, recursion_rhs(p, c, 0, j, xs, ys)) < 1e-9);
    CHECK(rel(lhs, recursion_rhs_quoted(p, c, xs, ys)) > 1e-3);
  }
}

TEST_CASE("degree in exp(lambda x)") {
  const auto r = run_degree_check(spec_for(2, 1, 2, 2, 31, 1e-8));
  CHECK(r.pass);
  CHECK(r.cases.size() == 2 * 2 * 4);
  CHECK_THROWS_AS(run_degree_check(spec_for(3, 2, 2, 1, 1, 1e-8)), InvalidArgument);
}

TEST_CASE("homogeneous suite") {
  CheckSpec s = spec_for(1, 1, 3, 2, 41, 1e-8);
  s.k_max = 2;
  const auto r = run_homogeneous_suite(s);
  CHECK(r.pass);
  bool saw_limit = false;
  for (const auto& c : r.cases)
    if (c.label.find("eps-extrapolated") != std::string::npos) {
      saw_limit = true;
      CHECK(c.tolerance == 1e-6);
    }
  CHECK(saw_limit);
  s.L_max = 4;
  CHECK_THROWS_AS(run_homogeneous_suite(s), InvalidArgument);
}

TEST_CASE("symmetry suite") {
  const auto r = run_symmetry(spec_for(2, 3, 3, 1, 51, 1e-10), 10);
  CHECK(r.pass);
  CHECK(r.cases.size() == 20);
}

TEST_CASE("reports are deterministic and carry their inputs") {
  const auto spec = spec_for(1, 2, 2, 3, 77, 1e-10);
  const auto a = run_equivalence(spec, Method::ik, Method::brute_force);
  const auto b = run_equivalence(spec, Method::ik, Method::brute_force);
  REQUIRE(a.cases.size() == b.cases.size());
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    CHECK(a.cases[i].xs == b.cases[i].xs);
    CHECK(a.cases[i].lhs == b.cases[i].lhs);
  }
  const auto j = to_json(a);
  CHECK(j["seed"] == 77);
  CHECK(j["verdict"] == "pass");
  REQUIRE(j["cases"].size() == 3);
  const auto& in = j["cases"][0]["inputs"];
  CHECK(in["xs"].size() == 2);
  CHECK(parse_complex(in["xs"][0].get<std::string>()) == a.cases[0].xs[0]);
  CHECK(in["k"] == 1);
}

TEST_CASE("report bookkeeping") {
  CheckReport r;
  CaseRecord ok;
  ok.pass = true;
  r.add(ok);
  CHECK(r.pass);
  CaseRecord bad;
  bad.pass = false;
  CheckReport other;
  other.add(bad);
  r.merge(other);
  CHECK_FALSE(r.pass);
  CHECK(r.cases.size() == 2);
}

TEST_CASE("check spec validation") {
  CheckSpec s;
  CHECK_NOTHROW(s.validate());
  s.k_min = 2;
  s.k_max = 1;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = CheckSpec{};
  s.draws = 0;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = CheckSpec{};
  s.tolerance = -1;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
}
