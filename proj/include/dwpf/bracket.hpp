#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "dwpf/errors.hpp"
#include "dwpf/jet.hpp"

namespace dwpf {

template <typename Real>
using Complex = std::complex<Real>;

using cdouble = std::complex<double>;

enum class Precision { f64, extended };

const char* to_string(Precision p);
Precision precision_from_string(const std::string& s);

/// Crossing parameter and numerical policy shared by every formula.
struct BracketParams {
  cdouble lambda{1.0, 0.0};
  Precision precision = Precision::f64;
  // Relative threshold below which a bracket counts as vanishing.
  double genericity_tol = 1e-10;

  void validate() const;
};

/// [x] = sinh(lambda x) and its derived kernels, evaluated in `Real`.
///
/// The class is a small immutable value; construct one per precision and
/// pass it down by const reference.
template <typename Real>
class Bracket {
 public:
  using C = Complex<Real>;

  explicit Bracket(const BracketParams& p)
      : lambda_(static_cast<Real>(p.lambda.real()), static_cast<Real>(p.lambda.imag())),
        tol_(static_cast<Real>(p.genericity_tol)) {
    p.validate();
  }

  const C& lambda() const { return lambda_; }
  Real tol() const { return tol_; }

  C operator()(const C& x) const { return std::sinh(lambda_ * x); }

  // [x]_m = [x][x-1]...[x-m+1]
  C falling(const C& x, int m) const {
    C r(1);
    for (int t = 0; t < m; ++t) r *= (*this)(x - C(t));
    return r;
  }

  /// True when [x] vanishes relative to the local scale |cosh(lambda x)|.
  bool vanishes(const C& x) const {
    const Real s = std::abs(std::sinh(lambda_ * x));
    const Real c = std::abs(std::cosh(lambda_ * x));
    return s <= tol_ * std::max(Real(1), c);
  }

  C phi(const C& x) const {
    if (vanishes(x) || vanishes(x + C(1))) {
      std::ostringstream os;
      os << "phi is singular at x = " << x;
      throw SingularArgument(os.str());
    }
    return C(1) / ((*this)(x) * (*this)(x + C(1)));
  }

  /// [phi(x), phi'(x), ..., phi^(n_max)(x)] via jet arithmetic.
  std::vector<C> phi_derivatives(const C& x, int n_max) const {
    if (n_max < 0) throw InvalidArgument("phi_derivatives: n_max must be >= 0");
    (void)phi(x);
    const auto s0 = Jet<C>::sinh_shifted(n_max, lambda_, x);
    const auto s1 = Jet<C>::sinh_shifted(n_max, lambda_, x + C(1));
    const auto inv = (s0 * s1).reciprocal();
    std::vector<C> out(n_max + 1);
    for (int n = 0; n <= n_max; ++n) out[n] = inv.derivative(n);
    return out;
  }

 private:
  C lambda_;
  Real tol_;
};

// Double-precision conveniences mirroring the member functions.
cdouble bracket(const BracketParams& p, cdouble x);
cdouble bracket_falling(const BracketParams& p, cdouble x, int m);
cdouble phi(const BracketParams& p, cdouble x);
std::vector<cdouble> phi_derivatives(const BracketParams& p, cdouble x, int n_max);

}  // namespace dwpf
