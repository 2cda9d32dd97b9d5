#include <doctest.h>

#include <random>
#include <set>

#include "dwpf/enumerate.hpp"
#include "dwpf/model.hpp"
#include "oracles.hpp"

using namespace dwpf;
using oracle::rel;

namespace {

Bracket<double> make_bracket(cdouble lambda) {
  BracketParams p;
  p.lambda = lambda;
  return Bracket<double>(p);
}

struct RandomPoint {
  cdouble lambda;
  cdouble u;
};

std::vector<RandomPoint> random_points(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lam_re(0.3, 1.2), lam_im(-0.3, 0.3), re(-1, 1), im(-0.5, 0.5);
  std::vector<RandomPoint> out;
  for (int i = 0; i < n; ++i) {
    const double a = lam_re(rng), b = lam_im(rng), c = re(rng), d = im(rng);
    out.push_back({{a, b}, {c, d}});
  }
  return out;
}

}  // namespace

TEST_CASE("spins") {
  CHECK(Spin::valid(1, 1));
  CHECK(Spin::valid(0, 2));
  CHECK_FALSE(Spin::valid(1, 2));
  CHECK_FALSE(Spin::valid(3, 1));
  CHECK_THROWS_AS(Spin::make(2, 1), InvalidArgument);
  CHECK(Spin::make(-2, 2).twice == -2);
  CHECK(conserving_vertices(1).size() == 6);
  CHECK(conserving_vertices(2).size() == 19);
  CHECK(VertexSpins{1, -1, -1, 1}.conserves());
  CHECK_FALSE(VertexSpins{1, 1, -1, 1}.conserves());
}

TEST_CASE("six-vertex weights") {
  const auto br = make_bracket({0.7, 0.2});
  const cdouble u(0.31, -0.12);
  CHECK(six_vertex_weight(br, {1, 1, 1, 1}, u) == br(u + 1.0));
  CHECK(six_vertex_weight(br, {-1, -1, -1, -1}, u) == br(u + 1.0));
  CHECK(six_vertex_weight(br, {1, -1, 1, -1}, u) == br(u));
  CHECK(six_vertex_weight(br, {-1, 1, -1, 1}, u) == br(u));
  CHECK(six_vertex_weight(br, c_plus(1), u) == br(1.0));
  CHECK(six_vertex_weight(br, {-1, 1, 1, -1}, u) == br(1.0));
  CHECK(six_vertex_weight(br, {1, 1, -1, 1}, u) == cdouble(0));
  CHECK_THROWS_AS(six_vertex_weight(br, {2, 0, 2, 0}, u), InvalidArgument);
}

TEST_CASE("sigma representatives") {
  CHECK(sigma_representative(1, 2, 0, Orientation::horizontal).spins == std::vector<int>{1, -1});
  CHECK(sigma_representative(1, 2, 2, Orientation::horizontal).spins == std::vector<int>{1, 1});
  CHECK(sigma_representative(1, 2, 0, Orientation::vertical).spins == std::vector<int>{1, -1});
  // Spin-1 bonds: the greedy choice is the lexicographically largest arrangement.
  CHECK(sigma_representative(2, 3, 2, Orientation::vertical).spins == std::vector<int>{2, 2, -2});
  CHECK(sigma_representative(2, 3, 2, Orientation::vertical).total_twice() == 2);
  CHECK_THROWS_AS(sigma_representative(1, 2, 4, Orientation::horizontal), UnreachableSigma);
  CHECK_THROWS_AS(sigma_representative(1, 2, 1, Orientation::horizontal), UnreachableSigma);
  CHECK(sigma_set(1, 2, 0).size() == 2);
  CHECK(sigma_set(1, 3, 1).size() == 3);
  CHECK(sigma_set(2, 2, 0).size() == 3);
  // The representative is the lexicographically largest member.
  for (int s = -4; s <= 4; s += 2) {
    const auto set = sigma_set(1, 4, s);
    CHECK(*std::max_element(set.begin(), set.end()) == sigma_representative(1, 4, s, Orientation::horizontal).spins);
  }
}

TEST_CASE("stack") {
  const Rapidities xs{{0.1, 0.2}, {-0.4, 0.0}};
  CHECK(stack(xs, 1) == xs);
  CHECK(stack(xs, 2) == Rapidities{xs[0], xs[0] + 1.0, xs[1], xs[1] + 1.0});
  CHECK(stack({0.0}, 3) == Rapidities{0.0, 1.0, 2.0});
}

TEST_CASE("fusion at k = 1 is the six-vertex model") {
  for (const auto& [lam, u] : random_points(5, 3))
    for (const auto& v : conserving_vertices(1)) {
      const auto b = make_bracket(lam);
      CHECK(fuse_block(b, 1, v, u) == six_vertex_weight(b, v, u));
    }
}

TEST_CASE("fused c+ vertex weighs [k]_k") {
  for (int k = 1; k <= 3; ++k)
    for (const auto& [lam, u] : random_points(5, 10 + k)) {
      const auto br = make_bracket(lam);
      CHECK(rel(fuse_block(br, k, c_plus(k), u), br.falling(double(k), k)) < 1e-12);
    }
}

TEST_CASE("fused weights vanish off conservation") {
  const auto br = make_bracket({0.9, 0.1});
  const cdouble u(0.23, 0.17);
  for (int k = 1; k <= 3; ++k)
    for (int a = -k; a <= k; a += 2)
      for (int b = -k; b <= k; b += 2)
        for (int c = -k; c <= k; c += 2)
          for (int d = -k; d <= k; d += 2) {
            const VertexSpins v{a, b, c, d};
            if (!v.conserves()) CHECK(fuse_block(br, k, v, u) == cdouble(0));
          }
  CHECK_THROWS_AS(fuse_block(br, 2, VertexSpins{1, 1, 1, 1}, u), InvalidArgument);
}

TEST_CASE("spin-1 fused weights against the closed forms") {
  int raw_matches = 0;
  for (const auto& [lam, u] : random_points(20, 42)) {
    const auto br = make_bracket(lam);
    CHECK(rel(fuse_block(br, 2, {2, 2, 2, 2}, u), br(u + 1.0) * br(u + 2.0)) < 1e-9);
    raw_matches = 0;
    for (const auto& [v, cls] : spin1_table()) {
      const cdouble table = spin1_class_weight(br, cls, u);
      const cdouble raw = fuse_block(br, 2, v, u);
      CHECK(rel(spin1_symmetric_gauge(br, v) * raw, table) < 1e-9);
      if (rel(raw, table) < 1e-9) ++raw_matches;
    }
  }
  // Only the Y pair differs before the gauge transformation.
  CHECK(raw_matches == 10);
  const auto br = make_bracket(1.0);
  const cdouble u(0.4, 0.0);
  CHECK(rel(fuse_block(br, 2, {0, 0, -2, 2}, u), br(u) * br(2.0) * br(2.0) / br(1.0)) < 1e-12);
  CHECK(rel(fuse_block(br, 2, {2, -2, 0, 0}, u), br(u) * br(1.0)) < 1e-12);
}

TEST_CASE("spin-1 table lookups") {
  const auto br = make_bracket({0.7, 0.2});
  const cdouble u(0.3, 0.1);
  CHECK(spin1_table().size() == 12);
  CHECK(rel(spin1_table_weight(br, {2, 0, 2, 0}, u), br(u) * br(u + 1.0)) < 1e-15);
  CHECK(rel(spin1_table_weight(br, c_plus(2), u), br(1.0) * br(2.0)) < 1e-15);
  CHECK(rel(spin1_table_weight(br, {-2, -2, -2, -2}, u), br(u + 1.0) * br(u + 2.0)) < 1e-15);
  int missing = 0;
  for (const auto& v : conserving_vertices(2))
    if (!in_spin1_table(v)) {
      ++missing;
      CHECK_THROWS_AS(spin1_table_weight(br, v, u), NotInTable);
    }
  CHECK(missing == 7);
}

TEST_CASE("fusion is independent of the outflow representative") {
  for (int k = 2; k <= 3; ++k)
    for (const auto& [lam, u] : random_points(3, 100 + k)) {
      const auto br = make_bracket(lam);
      for (const auto& v : conserving_vertices(k)) {
        const cdouble ref = fuse_block(br, k, v, u);
        for (const auto& right : sigma_set(1, k, v.gamma))
          for (const auto& top : sigma_set(1, k, v.delta))
            CHECK(std::abs(fuse_block_with_outflow(br, k, v.alpha, v.beta, right, top, u) - ref) <=
                  1e-10 * std::max(1.0, std::abs(ref)));
      }
    }
}

TEST_CASE("normalization zeros") {
  const auto br = make_bracket(1.0);
  CHECK_THROWS_AS(fuse_block(br, 2, c_plus(2), cdouble(0)), SingularNormalization);
  CHECK_THROWS_AS(fuse_block(br, 3, c_plus(3), cdouble(-1)), SingularNormalization);
  // The normalized weight is entire; the regularized value matches the
  // symmetric average of nearby points, which is off by O(h^2).
  const double h = 1e-5;
  for (const auto& v : conserving_vertices(2)) {
    const cdouble at_zero = fuse_block_regularized(br, 2, v, cdouble(0));
    const cdouble near = 0.5 * (fuse_block(br, 2, v, cdouble(h)) + fuse_block(br, 2, v, cdouble(-h)));
    CHECK(std::abs(at_zero - near) < 1e-8);
  }
  // B(0) = [-1][0] = 0 and the Y pair vanishes too.
  CHECK(std::abs(fuse_block_regularized(br, 2, {-2, 2, -2, 2}, cdouble(0))) < 1e-12);
  CHECK(std::abs(fuse_block_regularized(br, 2, {0, 0, -2, 2}, cdouble(0))) < 1e-12);
}

TEST_CASE("weight tables") {
  const auto br = make_bracket({0.7, 0.2});
  const cdouble u(0.3, 0.1);
  const auto t = weight_table(br, 2, WeightModel::spin1_table, u);
  CHECK(t.entries.size() == 19);
  CHECK(t.at({1, 1, 1, 1}) == cdouble(0));
  CHECK(rel(t.at({0, 0, -2, 2}), br(u) * br(2.0)) < 1e-14);
  CHECK_THROWS_AS(weight_table(br, 2, WeightModel::six_vertex, u), InvalidArgument);
  CHECK_THROWS_AS(weight_table(br, 1, WeightModel::spin1_table, u), InvalidArgument);
  for (const auto& [v, w] : weight_table(br, 3, WeightModel::unit, u).entries) CHECK(w == cdouble(1));
}

TEST_CASE("the spin-1 gauge leaves domain-wall sums unchanged") {
  BracketParams p;
  p.lambda = {0.7, 0.2};
  const Rapidities xs{{0.1, 0.05}, {0.37, -0.2}, {-0.4, 0.3}}, ys{{0.21, 0.1}, {-0.3, 0.15}, {0.55, -0.1}};
  for (int L = 1; L <= 3; ++L) {
    const Rapidities x(xs.begin(), xs.begin() + L), y(ys.begin(), ys.begin() + L);
    CHECK(rel(brute_force_pf(p, 2, x, y, WeightModel::fused), brute_force_pf(p, 2, x, y, WeightModel::spin1_table)) <
          1e-12);
  }
}

TEST_CASE("fusion structure is shared") {
  const auto& a = fusion_structure(2);
  const auto& b = fusion_structure(2);
  CHECK(&a == &b);
  CHECK(a.size() == 19);
  CHECK_THROWS_AS(fusion_monomials(2, 2, -2, std::vector<int>{1}, std::vector<int>{1, 1}), InvalidArgument);
}
