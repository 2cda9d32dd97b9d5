#pragma once

#include <compare>
#include <complex>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "dwpf/bracket.hpp"
#include "dwpf/errors.hpp"

namespace dwpf {

using Rapidities = std::vector<cdouble>;

/// A bond spin of a spin-k/2 model, stored as twice its value.
struct Spin {
  int twice = 0;
  int k = 1;

  static Spin make(int twice, int k);
  static bool valid(int twice, int k) { return k >= 1 && twice >= -k && twice <= k && (twice + k) % 2 == 0; }
};

/// Spins around one vertex in doubled units: alpha (west, inflow),
/// beta (south, inflow), gamma (east, outflow), delta (north, outflow).
/// Signs are relative to the rapidity flow: right on horizontal bonds,
/// up on vertical bonds.
struct VertexSpins {
  int alpha = 0;
  int beta = 0;
  int gamma = 0;
  int delta = 0;

  bool conserves() const { return alpha + beta == gamma + delta; }
  VertexSpins reversed() const { return {-alpha, -beta, -gamma, -delta}; }
  auto operator<=>(const VertexSpins&) const = default;
};

std::string to_string(const VertexSpins& v);

/// All spin-conserving vertices of the spin-k/2 model.
std::vector<VertexSpins> conserving_vertices(int k);

/// The c+ vertex: everything in from the left and right, out through top and bottom.
inline VertexSpins c_plus(int k) { return {k, -k, -k, k}; }

enum class Orientation { horizontal, vertical };

/// Spins along a boundary, listed left-to-right (horizontal) or
/// bottom-to-top (vertical), in doubled units.
struct BoundarySigma {
  int k = 1;
  Orientation orientation = Orientation::horizontal;
  std::vector<int> spins;

  int total_twice() const;
};

/// The sorted member of the sigma-set: larger spins first (left of /
/// below the smaller ones). `sigma_twice` is twice the total spin.
BoundarySigma sigma_representative(int k, int length, int sigma_twice, Orientation o);

/// Every arrangement of spin-k/2 values on `length` bonds with total `sigma_twice`.
std::vector<std::vector<int>> sigma_set(int k, int length, int sigma_twice);

// ---------------------------------------------------------------------------
// Six-vertex weights: a = [u+1], b = [u], c = [1].

enum class SixVertexType { a, b, c, forbidden };

SixVertexType six_vertex_type(const VertexSpins& v);

template <typename Real>
Complex<Real> six_vertex_weight(const Bracket<Real>& br, const VertexSpins& v, const Complex<Real>& u) {
  using C = Complex<Real>;
  for (int s : {v.alpha, v.beta, v.gamma, v.delta})
    if (s != 1 && s != -1) throw InvalidArgument("six_vertex_weight: spins must be +-1 (doubled units)");
  switch (six_vertex_type(v)) {
    case SixVertexType::a: return br(u + C(1));
    case SixVertexType::b: return br(u);
    case SixVertexType::c: return br(C(1));
    default: return C(0);
  }
}

// ---------------------------------------------------------------------------
// Fusion.
//
// A spin-k/2 vertex at (x, y) is the k x k block of spin-1/2 vertices with
// row rapidities x, x+1, ..., x+k-1 (bottom to top) and column rapidities
// y+k-1, ..., y+1, y (left to right). Sub-vertex (r, s) therefore sits at
// u + (k-1-s) - r. Inflow boundaries (left, bottom) are summed over their
// sigma-sets, outflow boundaries (right, top) are pinned, and the sum is
// divided by N(u) = prod_{p=0}^{k-1} [u+p]_{k-1}.

/// One monomial of a block sum: mult * [1]^c_power * prod_m [u+m]^exps[m + k - 1].
struct FusionMonomial {
  std::vector<int> exps;  // m = -(k-1) .. k
  int c_power = 0;
  long long mult = 1;
};

/// Unnormalized block sum, as monomials, for every spin-k/2 vertex. Built
/// once per k and shared; safe for concurrent readers.
const std::map<VertexSpins, std::vector<FusionMonomial>>& fusion_structure(int k);

/// Monomials of the block sum with explicit outflow boundaries. `right` is
/// listed bottom-to-top, `top` left-to-right, entries +-1.
std::vector<FusionMonomial> fusion_monomials(int k, int alpha, int beta, std::span<const int> right,
                                             std::span<const int> top);

template <typename Real>
Complex<Real> evaluate_monomials(const Bracket<Real>& br, int k, const std::vector<FusionMonomial>& terms,
                                 const Complex<Real>& u) {
  using C = Complex<Real>;
  std::vector<C> factors(2 * k);
  for (int m = -(k - 1); m <= k; ++m) factors[m + k - 1] = br(u + C(m));
  const C one = br(C(1));
  C sum(0);
  for (const auto& t : terms) {
    C prod(static_cast<Real>(t.mult));
    for (int i = 0; i < 2 * k; ++i)
      for (int e = 0; e < t.exps[i]; ++e) prod *= factors[i];
    for (int e = 0; e < t.c_power; ++e) prod *= one;
    sum += prod;
  }
  return sum;
}

template <typename Real>
Complex<Real> fusion_normalization(const Bracket<Real>& br, int k, const Complex<Real>& u) {
  using C = Complex<Real>;
  C n(1);
  for (int p = 0; p < k; ++p) n *= br.falling(u + C(p), k - 1);
  return n;
}

template <typename Real>
void check_fusion_normalization(const Bracket<Real>& br, int k, const Complex<Real>& u) {
  using C = Complex<Real>;
  for (int p = 0; p < k; ++p)
    for (int t = 0; t < k - 1; ++t)
      if (br.vanishes(u + C(p - t))) {
        std::ostringstream os;
        os << "fusion normalization vanishes: [u" << std::showpos << (p - t) << std::noshowpos
           << "] = 0 at u = " << u;
        throw SingularNormalization(os.str());
      }
}

/// Weight of the spin-k/2 vertex `v` at u = -x + y. Zero when spin flow is
/// not conserved.
template <typename Real>
Complex<Real> fuse_block(const Bracket<Real>& br, int k, const VertexSpins& v, const Complex<Real>& u) {
  using C = Complex<Real>;
  for (int s : {v.alpha, v.beta, v.gamma, v.delta})
    if (!Spin::valid(s, k)) throw InvalidArgument("fuse_block: spin out of range for k=" + std::to_string(k));
  if (!v.conserves()) return C(0);
  check_fusion_normalization(br, k, u);
  const auto& structure = fusion_structure(k);
  const auto it = structure.find(v);
  if (it == structure.end()) return C(0);
  return evaluate_monomials(br, k, it->second, u) / fusion_normalization(br, k, u);
}

template <typename Real>
Complex<Real> fuse_block(const Bracket<Real>& br, int k, const VertexSpins& v, const Complex<Real>& x,
                         const Complex<Real>& y) {
  return fuse_block(br, k, v, -x + y);
}

/// Block sum with caller-chosen outflow configurations, normalized like fuse_block.
template <typename Real>
Complex<Real> fuse_block_with_outflow(const Bracket<Real>& br, int k, int alpha, int beta, std::span<const int> right,
                                      std::span<const int> top, const Complex<Real>& u) {
  check_fusion_normalization(br, k, u);
  const auto terms = fusion_monomials(k, alpha, beta, right, top);
  return evaluate_monomials(br, k, terms, u) / fusion_normalization(br, k, u);
}

/// fuse_block continued through removable zeros of N(u): the normalized
/// weight is entire in u, so at a zero of N it is the mean over a small
/// circle around u.
template <typename Real>
Complex<Real> fuse_block_regularized(const Bracket<Real>& br, int k, const VertexSpins& v, const Complex<Real>& u) {
  using C = Complex<Real>;
  try {
    return fuse_block(br, k, v, u);
  } catch (const SingularNormalization&) {
  }
  const Real lam = std::abs(br.lambda());
  const Real spacing = std::min(Real(1), std::numbers::pi_v<Real> / lam);
  const Real radius = Real(0.25) * spacing;
  constexpr int kPoints = 32;
  C sum(0);
  for (int m = 0; m < kPoints; ++m) {
    const Real theta = 2 * std::numbers::pi_v<Real> * (Real(m) + Real(0.5)) / kPoints;
    sum += fuse_block(br, k, v, u + radius * C(std::cos(theta), std::sin(theta)));
  }
  return sum / C(kPoints);
}

// ---------------------------------------------------------------------------
// Spin-1 closed forms.
//
// A = [u+1][u+2], B = [u-1][u], X = [u+1][2], Y = [u][2], C = [1][2],
// E = [u][u+1]; arrow reversal leaves each weight unchanged.

enum class Spin1Class { A, B, X, Y, C, E };

const char* to_string(Spin1Class c);

/// The twelve tabulated spin-1 vertices and their weight class.
const std::vector<std::pair<VertexSpins, Spin1Class>>& spin1_table();

bool in_spin1_table(const VertexSpins& v);

template <typename Real>
Complex<Real> spin1_class_weight(const Bracket<Real>& br, Spin1Class cls, const Complex<Real>& u) {
  using C = Complex<Real>;
  switch (cls) {
    case Spin1Class::A: return br(u + C(1)) * br(u + C(2));
    case Spin1Class::B: return br(u - C(1)) * br(u);
    case Spin1Class::X: return br(u + C(1)) * br(C(2));
    case Spin1Class::Y: return br(u) * br(C(2));
    case Spin1Class::C: return br(C(1)) * br(C(2));
    case Spin1Class::E: return br(u) * br(u + C(1));
  }
  return C(0);
}

template <typename Real>
Complex<Real> spin1_table_weight(const Bracket<Real>& br, const VertexSpins& v, const Complex<Real>& u) {
  for (const auto& [spins, cls] : spin1_table())
    if (spins == v) return spin1_class_weight(br, cls, u);
  throw NotInTable("spin-1 vertex " + to_string(v) + " is not in the closed-form table");
}

/// Gauge factor g(alpha) g(beta) / (g(gamma) g(delta)) with g(-2) = [2]/[1],
/// g(0) = g(2) = 1. It maps raw fused spin-1 weights onto the symmetric
/// table convention and leaves every domain-wall partition function
/// unchanged (the factors telescope to the fixed boundary).
template <typename Real>
Complex<Real> spin1_symmetric_gauge(const Bracket<Real>& br, const VertexSpins& v) {
  using C = Complex<Real>;
  const C shifted = br(C(2)) / br(C(1));
  auto g = [&](int s) { return s == -2 ? shifted : C(1); };
  return g(v.alpha) * g(v.beta) / (g(v.gamma) * g(v.delta));
}

// ---------------------------------------------------------------------------
// Weight tables.

enum class WeightModel {
  six_vertex,   // a = [u+1], b = [u], c = [1]; k = 1
  fused,        // raw fuse_block, any k
  spin1_table,  // closed forms for the 12 tabulated spin-1 vertices, gauged fuse_block otherwise
  unit          // every conserving vertex weighs 1 (counting)
};

const char* to_string(WeightModel m);

/// All conserving vertex weights of one model at one value of u.
template <typename Real>
struct VertexWeightTable {
  int k = 1;
  std::map<VertexSpins, Complex<Real>> entries;

  Complex<Real> at(const VertexSpins& v) const {
    const auto it = entries.find(v);
    return it == entries.end() ? Complex<Real>(0) : it->second;
  }
};

template <typename Real>
VertexWeightTable<Real> weight_table(const Bracket<Real>& br, int k, WeightModel model, const Complex<Real>& u) {
  using C = Complex<Real>;
  VertexWeightTable<Real> table;
  table.k = k;
  if (model == WeightModel::six_vertex && k != 1) throw InvalidArgument("six-vertex weights require k = 1");
  if (model == WeightModel::spin1_table && k != 2) throw InvalidArgument("spin-1 table weights require k = 2");
  for (const auto& v : conserving_vertices(k)) {
    C w;
    switch (model) {
      case WeightModel::six_vertex: w = six_vertex_weight(br, v, u); break;
      case WeightModel::fused: w = fuse_block(br, k, v, u); break;
      case WeightModel::spin1_table:
        w = in_spin1_table(v) ? spin1_table_weight(br, v, u) : spin1_symmetric_gauge(br, v) * fuse_block(br, 2, v, u);
        break;
      case WeightModel::unit: w = C(1); break;
    }
    table.entries.emplace(v, w);
  }
  return table;
}

/// {x_1, ..., x_L} -> {x_1, x_1+1, ..., x_1+k-1, x_2, ..., x_L+k-1}.
Rapidities stack(const Rapidities& xs, int k);

}  // namespace dwpf
