#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dwpf/determinant.hpp"

namespace dwpf {

/// Parameters of one verification run.
struct CheckSpec {
  std::string name = "check";
  int k_min = 1;
  int k_max = 1;
  int L_min = 1;
  int L_max = 1;
  int draws = 5;
  std::uint64_t seed = 1;
  double tolerance = 1e-8;  // relative
  Precision precision = Precision::f64;
  double genericity_tol = 1e-10;
  std::optional<cdouble> lambda;  // unset: drawn from lambda_presets()
  EnumerationBudget budget;

  void validate() const;
};

/// One compared pair of values.
struct CaseRecord {
  std::string label;
  int k = 1;
  int L = 1;
  cdouble lambda;
  Rapidities xs;
  Rapidities ys;
  cdouble lhs;
  cdouble rhs;
  double rel_err = 0;
  double cond = 1;
  double tolerance = 0;
  bool pass = false;
};

struct CheckReport {
  CheckSpec spec;
  std::vector<CaseRecord> cases;
  bool pass = true;
  double elapsed_ms = 0;

  void add(CaseRecord c);
  /// Appends another report's cases; the verdict is the conjunction.
  void merge(const CheckReport& other);
};

/// |a - b| / max(|a|, |b|, 1e-14).
double relative_error(cdouble a, cdouble b);

/// Crossing parameters used when a CheckSpec does not pin one: 1, 0.7+0.2i, i*pi/5.
const std::vector<cdouble>& lambda_presets();

/// Value and conditioning from any evaluation method. Homogeneous methods
/// read x = xs[0], y = ys[0] and require the remaining entries to coincide.
struct Evaluation {
  cdouble value;
  double cond = 1;
};
Evaluation evaluate(Method m, const BracketParams& p, int k, const Rapidities& xs, const Rapidities& ys,
                    EnumerationBudget budget = {});

/// Whether every bracket the formulas divide by stays away from zero:
/// [-x_i+x_j+d], [y_i-y_j+d] for |d| < k and [-x_i+y_j+d] for -k < d <= k.
/// `margin` is an absolute floor on |sinh| in addition to the genericity test.
bool is_generic(const BracketParams& p, int k, const Rapidities& xs, const Rapidities& ys, double margin = 0);

/// Seeded source of rapidities in the box Re in [-1, 1], Im in [-0.5, 0.5].
class RapidityDraw {
 public:
  explicit RapidityDraw(std::uint64_t seed) : rng_(seed) {}
  cdouble rapidity();
  Rapidities rapidities(int n);
  cdouble lambda(const CheckSpec& spec);
  int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  /// Draws until `accept` holds; throws GenericityExhausted after 100 rejections in a row.
  template <typename Accept>
  std::pair<Rapidities, Rapidities> generic(int L, Accept&& accept) {
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
      auto xs = rapidities(L);
      auto ys = rapidities(L);
      if (accept(xs, ys)) return {std::move(xs), std::move(ys)};
    }
    throw GenericityExhausted("no generic rapidity draw after " + std::to_string(kMaxRejections) + " attempts");
  }

  static constexpr int kMaxRejections = 100;

 private:
  std::mt19937_64 rng_;
};

/// Limit eps -> 0 of f(eps): symmetric average (f(eps) + f(-eps)) / 2 at two
/// step sizes, Richardson-extrapolated in eps^2.
template <typename F>
cdouble coincident_limit(F&& f, double eps1 = 1e-3, double eps2 = 1e-4) {
  const cdouble g1 = 0.5 * (f(eps1) + f(-eps1));
  const cdouble g2 = 0.5 * (f(eps2) + f(-eps2));
  const double e1 = eps1 * eps1;
  const double e2 = eps2 * eps2;
  return (e1 * g2 - e2 * g1) / (e1 - e2);
}

/// Value at `center` of an entire function known only off a removable
/// singularity: mean over a circle (trapezoidal rule, offset nodes).
template <typename F>
cdouble contour_mean(F&& f, cdouble center, double radius = 0.05, int nodes = 24) {
  cdouble sum(0);
  for (int m = 0; m < nodes; ++m) {
    const double theta = 2 * std::numbers::pi * (m + 0.5) / nodes;
    sum += f(center + radius * cdouble(std::cos(theta), std::sin(theta)));
  }
  return sum / double(nodes);
}

/// Inhomogeneous determinant value at clustered rapidities: x_i -> x + eps*i
/// (and y_j -> y - eps*(j + 1/2) when `collapse_ys`), extrapolated to eps = 0.
/// Evaluated in extended precision.
cdouble clustered_limit(Method m, const BracketParams& p, int k, cdouble x, const Rapidities& ys, bool collapse_ys);

/// Corner recursions of the spin-1 partition function.
enum class Corner { upper_left, upper_right };

/// Right-hand side of the recursion at x_i = y_j + 1 (upper_left) or
/// x_i = y_j (upper_right): [1][2] * prod_{j' != j} W(-x_i+y_j') *
/// prod_{i' != i} W(-x_i'+y_j) * Z_{L-1}, with W = B or A respectively.
cdouble recursion_rhs(const BracketParams& p, Corner c, int i, int j, const Rapidities& xs, const Rapidities& ys);

/// The products exactly as they are sometimes quoted for (i, j) = (0, 0)
/// and (0, L-1): B(-x_1+y_{j-1}) B(-x_j+y_1) and A(-x_1+y_j) A(-x_j+y_L).
/// Kept to show that they do not hold.
cdouble recursion_rhs_quoted(const BracketParams& p, Corner c, const Rapidities& xs, const Rapidities& ys);

/// Laurent coefficients c_{-d..d} of f(z) from samples on 2d+1 equispaced
/// points of the unit circle (rotated by `phase`).
std::vector<cdouble> laurent_fit(const std::function<cdouble(cdouble)>& f, int degree, double phase = 0.1);
cdouble laurent_eval(const std::vector<cdouble>& coeffs, cdouble z);

CheckReport run_equivalence(const CheckSpec& spec, Method lhs, Method rhs);
/// Every L = 1 value of `m` against [k]_k.
CheckReport run_initial_condition(const CheckSpec& spec, Method m);
CheckReport run_symmetry(const CheckSpec& spec, int permutations = 10);
CheckReport run_recursion_suite(const CheckSpec& spec);
CheckReport run_degree_check(const CheckSpec& spec);
CheckReport run_homogeneous_suite(const CheckSpec& spec);
/// Equivalence, initial condition, symmetry, and (for k = 2) recursion and degree.
CheckReport run_all(const CheckSpec& spec);

}  // namespace dwpf
