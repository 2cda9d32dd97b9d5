#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>

#include "dwpf/enumerate.hpp"
#include "dwpf/model.hpp"

namespace dwpf {

template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
struct DetResult {
  Complex<Real> value;
  // max |pivot| / min |pivot| of the LU factorization; infinite when singular.
  Real condition_estimate;
};

/// Determinant by LU with partial pivoting.
template <typename Real>
DetResult<Real> det_complex(const CMatrix<Real>& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("det_complex: matrix must be square");
  if (m.rows() == 0) return {Complex<Real>(1), Real(1)};
  const Eigen::PartialPivLU<CMatrix<Real>> lu(m);
  const auto diag = lu.matrixLU().diagonal();
  Real lo = std::numeric_limits<Real>::infinity();
  Real hi = 0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    lo = std::min(lo, std::abs(diag(i)));
    hi = std::max(hi, std::abs(diag(i)));
  }
  if (lo == Real(0)) return {Complex<Real>(0), std::numeric_limits<Real>::infinity()};
  return {lu.determinant(), std::max(Real(1), hi / lo)};
}

enum class Method { ik, fused, spin1, homogeneous, semi_homogeneous, brute_force };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

/// A partition-function value and how it was obtained.
struct PFResult {
  cdouble value;
  Method method = Method::fused;
  int k = 1;
  int L = 1;
  cdouble lambda;
  Rapidities xs;
  Rapidities ys;
  double condition_estimate = 1.0;
  Precision precision = Precision::f64;  // precision actually used
};

/// Auto-escalation threshold on the LU pivot ratio.
inline constexpr double kEscalationThreshold = 1e6;

/// D_k = prod_{d=1}^{k-1} (-[d]^2)^{k-d}: the intra-stack bracket factors
/// that the stacked Izergin formula leaves behind, once per block row.
template <typename Real>
Complex<Real> stack_constant(const Bracket<Real>& br, int k) {
  using C = Complex<Real>;
  C d(1);
  for (int i = 1; i < k; ++i) {
    const C b = br(C(i));
    for (int t = 0; t < k - i; ++t) d *= -b * b;
  }
  return d;
}

/// Izergin-Korepin determinant for the six-vertex model.
PFResult ik_pf(const BracketParams& p, const Rapidities& xs, const Rapidities& ys);

/// Spin-k/2 partition function from the block determinant of size kL with
/// entries [1] phi(-x_i + y_j + s - r).
PFResult fused_pf(const BracketParams& p, int k, const Rapidities& xs, const Rapidities& ys);

/// Spin-1 determinant written with A, B, E weights.
PFResult spin1_pf(const BracketParams& p, const Rapidities& xs, const Rapidities& ys);

/// All horizontal rapidities equal to x; block row i carries phi^(i-1).
PFResult semi_homogeneous_pf(const BracketParams& p, int k, cdouble x, const Rapidities& ys);

/// All rapidities equal, u = -x + y; block (i, j) carries phi^(i+j-2).
PFResult homogeneous_pf(const BracketParams& p, int k, int L, cdouble u);

PFResult brute_force_result(const BracketParams& p, int k, const Rapidities& xs, const Rapidities& ys,
                            WeightModel model, EnumerationBudget budget = {});

// Precision-explicit kernels behind the wrappers above. Each returns the
// value and the LU pivot ratio of the determinant it evaluated.
template <typename Real>
DetResult<Real> ik_value(const Bracket<Real>& br, const Rapidities& xs, const Rapidities& ys);
template <typename Real>
DetResult<Real> fused_value(const Bracket<Real>& br, int k, const Rapidities& xs, const Rapidities& ys);
template <typename Real>
DetResult<Real> spin1_value(const Bracket<Real>& br, const Rapidities& xs, const Rapidities& ys);
template <typename Real>
DetResult<Real> semi_homogeneous_value(const Bracket<Real>& br, int k, cdouble x, const Rapidities& ys);
template <typename Real>
DetResult<Real> homogeneous_value(const Bracket<Real>& br, int k, int L, cdouble u);

/// Block matrix of the inhomogeneous formula, exposed for inspection.
template <typename Real>
CMatrix<Real> fused_matrix(const Bracket<Real>& br, int k, const Rapidities& xs, const Rapidities& ys);

}  // namespace dwpf
