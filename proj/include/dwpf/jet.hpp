#pragma once

#include <Eigen/Core>
#include <cassert>
#include <complex>

namespace dwpf {

/// Truncated Taylor series c_0 + c_1 t + ... + c_N t^N around an expansion
/// point. All arithmetic is closed at the order of the operands; mixing
/// orders truncates to the smaller one.
template <typename Scalar>
class Jet {
 public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit Jet(int order) : c_(Coeffs::Zero(order + 1)) { assert(order >= 0); }
  explicit Jet(Coeffs coeffs) : c_(std::move(coeffs)) { assert(c_.size() > 0); }

  static Jet constant(int order, const Scalar& value) {
    Jet j(order);
    j.c_(0) = value;
    return j;
  }

  // Expansion of t -> sinh(lambda * (x + t)).
  static Jet sinh_shifted(int order, const Scalar& lambda, const Scalar& x) {
    Jet j(order);
    const Scalar s = std::sinh(lambda * x);
    const Scalar c = std::cosh(lambda * x);
    Scalar scale(1);
    for (int n = 0; n <= order; ++n) {
      j.c_(n) = scale * ((n % 2 == 0) ? s : c);
      scale *= lambda / Scalar(n + 1);
    }
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Coeffs& coeffs() const { return c_; }
  const Scalar& operator[](int n) const { return c_(n); }
  Scalar& operator[](int n) { return c_(n); }

  Jet& operator+=(const Jet& o) {
    const int n = std::min(order(), o.order());
    c_.conservativeResize(n + 1);
    c_ += o.c_.head(n + 1);
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    const int n = std::min(order(), o.order());
    c_.conservativeResize(n + 1);
    c_ -= o.c_.head(n + 1);
    return *this;
  }
  Jet& operator*=(const Scalar& s) {
    c_ *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Scalar& s) { return a *= s; }
  friend Jet operator*(const Scalar& s, Jet a) { return a *= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    const int n = std::min(a.order(), b.order());
    Jet r(n);
    for (int i = 0; i <= n; ++i) {
      Scalar acc(0);
      for (int j = 0; j <= i; ++j) acc += a.c_(j) * b.c_(i - j);
      r.c_(i) = acc;
    }
    return r;
  }

  /// Multiplicative inverse; requires c_0 != 0.
  Jet reciprocal() const {
    assert(c_(0) != Scalar(0));
    Jet r(order());
    r.c_(0) = Scalar(1) / c_(0);
    for (int n = 1; n <= order(); ++n) {
      Scalar acc(0);
      for (int j = 1; j <= n; ++j) acc += c_(j) * r.c_(n - j);
      r.c_(n) = -acc / c_(0);
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

  /// n-th derivative at the expansion point: n! * c_n.
  Scalar derivative(int n) const {
    Scalar f(1);
    for (int i = 2; i <= n; ++i) f *= Scalar(i);
    return f * c_(n);
  }

 private:
  Coeffs c_;
};

}  // namespace dwpf
