#include "dwpf/determinant.hpp"

#include <cmath>
#include <sstream>

namespace dwpf {

namespace {

template <typename Real>
Complex<Real> lift(const cdouble& z) {
  return {static_cast<Real>(z.real()), static_cast<Real>(z.imag())};
}

cdouble lower(const Complex<long double>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

std::string fmt_complex(const cdouble& z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// Rejects rapidity data for which a bracket in a formula vanishes. `shift`
// ranges over the offsets that actually occur.
template <typename Real>
void require_nonvanishing(const Bracket<Real>& br, const Complex<Real>& z, int shift, const std::string& pair,
                          const std::string& expr) {
  if (br.vanishes(z + Complex<Real>(shift))) {
    std::ostringstream os;
    os << "degenerate rapidities " << pair << ": [" << expr << (shift >= 0 ? "+" : "") << shift << "] vanishes";
    throw DegenerateRapidities(os.str());
  }
}

std::string named(char set, int i, const cdouble& v) {
  return std::string(1, set) + "[" + std::to_string(i) + "] = " + fmt_complex(v);
}

template <typename Real>
void check_generic(const Bracket<Real>& br, int k, const Rapidities& xs, const Rapidities& ys) {
  const int L = static_cast<int>(xs.size());
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j) {
      const auto dx = lift<Real>(xs[j] - xs[i]);
      const auto dy = lift<Real>(ys[i] - ys[j]);
      for (int d = -(k - 1); d <= k - 1; ++d) {
        const auto si = std::to_string(i), sj = std::to_string(j);
        require_nonvanishing(br, dx, d, named('x', i, xs[i]) + ", " + named('x', j, xs[j]), "-x" + si + "+x" + sj);
        require_nonvanishing(br, dy, d, named('y', i, ys[i]) + ", " + named('y', j, ys[j]), "y" + si + "-y" + sj);
      }
    }
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      const auto u = lift<Real>(ys[j] - xs[i]);
      for (int d = -(k - 1); d <= k; ++d)
        require_nonvanishing(br, u, d, named('x', i, xs[i]) + ", " + named('y', j, ys[j]),
                             "-x" + std::to_string(i) + "+y" + std::to_string(j));
    }
}

void check_sizes(int k, const Rapidities& xs, const Rapidities& ys) {
  if (k < 1) throw InvalidArgument("level k must be >= 1");
  if (xs.empty()) throw InvalidArgument("need at least one rapidity");
  if (xs.size() != ys.size()) throw InvalidArgument("|xs| must equal |ys|");
}

// prod_{p=1}^{k} [u+p]_{k+1}
template <typename Real>
Complex<Real> entry_numerator(const Bracket<Real>& br, int k, const Complex<Real>& u) {
  Complex<Real> n(1);
  for (int p = 1; p <= k; ++p) n *= br.falling(u + Complex<Real>(p), k + 1);
  return n;
}

// prod_{p=0}^{k-1} [w+p]_k
template <typename Real>
Complex<Real> pair_denominator(const Bracket<Real>& br, int k, const Complex<Real>& w) {
  Complex<Real> n(1);
  for (int p = 0; p < k; ++p) n *= br.falling(w + Complex<Real>(p), k);
  return n;
}

// Product kept as a complex logarithm; exp of the sum reproduces the product
// whatever branch each log lands on.
template <typename Real>
class LogProduct {
 public:
  void mul(const Complex<Real>& z, Real power = 1) { log_ += power * std::log(z); }
  void div(const Complex<Real>& z, Real power = 1) { log_ -= power * std::log(z); }
  void mul_log(const Complex<Real>& l) { log_ += l; }
  Complex<Real> value() const { return std::exp(log_); }

 private:
  Complex<Real> log_{0};
};

// log prod_{n=0}^{L-1} n!
template <typename Real>
Real log_superfactorial(int L) {
  Real s = 0;
  for (int n = 0; n < L; ++n) s += std::lgamma(Real(n + 1));
  return s;
}

template <typename F>
PFResult escalate(const BracketParams& p, PFResult base, F&& eval) {
  if (p.precision == Precision::f64) {
    const auto r = eval(Bracket<double>(p));
    base.value = r.value;
    base.condition_estimate = r.condition_estimate;
    base.precision = Precision::f64;
    if (std::isfinite(r.condition_estimate) && r.condition_estimate <= kEscalationThreshold) return base;
  }
  const auto r = eval(Bracket<long double>(p));
  base.value = lower(r.value);
  base.condition_estimate = static_cast<double>(r.condition_estimate);
  base.precision = Precision::extended;
  return base;
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::ik: return "ik";
    case Method::fused: return "fused";
    case Method::spin1: return "spin1";
    case Method::homogeneous: return "homogeneous";
    case Method::semi_homogeneous: return "semi_homogeneous";
    case Method::brute_force: return "brute_force";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "ik") return Method::ik;
  if (s == "fused") return Method::fused;
  if (s == "spin1") return Method::spin1;
  if (s == "homogeneous") return Method::homogeneous;
  if (s == "semi_homogeneous" || s == "semi") return Method::semi_homogeneous;
  if (s == "brute_force" || s == "bruteforce") return Method::brute_force;
  throw InvalidArgument("unknown method '" + s + "'");
}

template <typename Real>
CMatrix<Real> fused_matrix(const Bracket<Real>& br, int k, const Rapidities& xs, const Rapidities& ys) {
  using C = Complex<Real>;
  const int L = static_cast<int>(xs.size());
  const C one = br(C(1));
  CMatrix<Real> m(k * L, k * L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      const C u = lift<Real>(ys[j] - xs[i]);
      for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s) m(i * k + r, j * k + s) = one * br.phi(u + C(s - r));
    }
  return m;
}

template <typename Real>
DetResult<Real> ik_value(const Bracket<Real>& br, const Rapidities& xs, const Rapidities& ys) {
  using C = Complex<Real>;
  check_sizes(1, xs, ys);
  check_generic(br, 1, xs, ys);
  const int L = static_cast<int>(xs.size());
  C num(1), den(1);
  CMatrix<Real> m(L, L);
  const C one = br(C(1));
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      const C u = lift<Real>(ys[j] - xs[i]);
      const C f = br.falling(u + C(1), 2);
      num *= f;
      m(i, j) = one / f;
    }
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j) den *= br(lift<Real>(xs[j] - xs[i])) * br(lift<Real>(ys[i] - ys[j]));
  const auto d = det_complex(m);
  return {num / den * d.value, d.condition_estimate};
}

template <typename Real>
DetResult<Real> fused_value(const Bracket<Real>& br, int k, const Rapidities& xs, const Rapidities& ys) {
  using C = Complex<Real>;
  check_sizes(k, xs, ys);
  check_generic(br, k, xs, ys);
  const int L = static_cast<int>(xs.size());
  C num(1), den(1);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) num *= entry_numerator(br, k, lift<Real>(ys[j] - xs[i]));
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j)
      den *= pair_denominator(br, k, lift<Real>(xs[j] - xs[i])) * pair_denominator(br, k, lift<Real>(ys[i] - ys[j]));
  const C dk = stack_constant(br, k);
  for (int i = 0; i < L; ++i) den *= dk;
  const auto d = det_complex(fused_matrix(br, k, xs, ys));
  return {num / den * d.value, d.condition_estimate};
}

template <typename Real>
DetResult<Real> spin1_value(const Bracket<Real>& br, const Rapidities& xs, const Rapidities& ys) {
  using C = Complex<Real>;
  check_sizes(2, xs, ys);
  check_generic(br, 2, xs, ys);
  const int L = static_cast<int>(xs.size());
  auto A = [&](const C& u) { return br(u + C(1)) * br(u + C(2)); };
  auto B = [&](const C& u) { return br(u - C(1)) * br(u); };
  auto E = [&](const C& u) { return br(u) * br(u + C(1)); };
  C num(1), den(1);
  CMatrix<Real> m(2 * L, 2 * L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      const C u = lift<Real>(ys[j] - xs[i]);
      num *= A(u) * E(u) * B(u);
      // Rows follow the vertical rapidity, columns the horizontal one.
      m(2 * j, 2 * i) = C(1) / E(u);
      m(2 * j, 2 * i + 1) = C(1) / B(u);
      m(2 * j + 1, 2 * i) = C(1) / A(u);
      m(2 * j + 1, 2 * i + 1) = C(1) / E(u);
    }
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j) {
      const C v = lift<Real>(xs[j] - xs[i]);
      const C w = lift<Real>(ys[i] - ys[j]);
      den *= E(v) * B(v) * E(w) * B(w);
    }
  const auto d = det_complex(m);
  // (-1)^L: the literal expression is -[1][2] at L = 1.
  const Real sign = (L % 2 == 0) ? Real(1) : Real(-1);
  return {sign * num / den * d.value, d.condition_estimate};
}

template <typename Real>
DetResult<Real> semi_homogeneous_value(const Bracket<Real>& br, int k, cdouble x, const Rapidities& ys) {
  using C = Complex<Real>;
  const int L = static_cast<int>(ys.size());
  const Rapidities xs(L, x);
  check_sizes(k, xs, ys);
  // x-pairs coincide by construction; only y-pairs and entries need checking.
  for (int j = 0; j < L; ++j)
    for (int d = -(k - 1); d <= k; ++d)
      require_nonvanishing(br, lift<Real>(ys[j] - x), d, "x = " + fmt_complex(x) + ", " + named('y', j, ys[j]),
                           "-x+y" + std::to_string(j));
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j)
      for (int d = -(k - 1); d <= k - 1; ++d)
        require_nonvanishing(br, lift<Real>(ys[i] - ys[j]), d, named('y', i, ys[i]) + ", " + named('y', j, ys[j]),
                             "y" + std::to_string(i) + "-y" + std::to_string(j));
  const C one = br(C(1));
  // phi^(n)(u_j + s - r) for n < L, shift s - r in [-(k-1), k-1].
  CMatrix<Real> m(k * L, k * L);
  for (int j = 0; j < L; ++j) {
    const C u = lift<Real>(ys[j] - x);
    for (int shift = -(k - 1); shift <= k - 1; ++shift) {
      const auto ders = br.phi_derivatives(u + C(shift), L - 1);
      for (int i = 0; i < L; ++i)
        for (int r = 0; r < k; ++r) {
          const int s = r + shift;
          if (s < 0 || s >= k) continue;
          m(i * k + r, j * k + s) = one * ders[i];
        }
    }
  }
  const auto d = det_complex(m);

  LogProduct<Real> pre;
  for (int j = 0; j < L; ++j) pre.mul(entry_numerator(br, k, lift<Real>(ys[j] - x)), Real(L));
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j) pre.div(pair_denominator(br, k, lift<Real>(ys[i] - ys[j])));
  const Real pairs = Real(L) * Real(L - 1) / 2;
  pre.mul(-C(1) / br.lambda(), Real(k) * pairs);
  pre.mul_log(C(-Real(k) * log_superfactorial<Real>(L)));
  const C dk = stack_constant(br, k);
  pre.div(dk, pairs + Real(L));
  return {pre.value() * d.value, d.condition_estimate};
}

template <typename Real>
DetResult<Real> homogeneous_value(const Bracket<Real>& br, int k, int L, cdouble u_in) {
  using C = Complex<Real>;
  if (k < 1) throw InvalidArgument("level k must be >= 1");
  if (L < 1) throw InvalidArgument("lattice size L must be >= 1");
  const C u = lift<Real>(u_in);
  for (int d = -(k - 1); d <= k; ++d)
    if (br.vanishes(u + C(d))) {
      std::ostringstream os;
      os << "homogeneous formula is singular: [u" << (d >= 0 ? "+" : "") << d << "] vanishes at u = " << fmt_complex(u_in);
      throw SingularArgument(os.str());
    }
  const C one = br(C(1));
  CMatrix<Real> m(k * L, k * L);
  for (int shift = -(k - 1); shift <= k - 1; ++shift) {
    const auto ders = br.phi_derivatives(u + C(shift), 2 * L - 2);
    for (int i = 0; i < L; ++i)
      for (int j = 0; j < L; ++j)
        for (int r = 0; r < k; ++r) {
          const int s = r + shift;
          if (s < 0 || s >= k) continue;
          m(i * k + r, j * k + s) = one * ders[i + j];
        }
  }
  const auto d = det_complex(m);

  LogProduct<Real> pre;
  pre.mul(entry_numerator(br, k, u), Real(L) * Real(L));
  const Real pairs = Real(L) * Real(L - 1);
  pre.mul(-C(1) / br.lambda(), Real(k) * pairs);
  pre.mul_log(C(-2 * Real(k) * log_superfactorial<Real>(L)));
  pre.div(stack_constant(br, k), pairs + Real(L));
  return {pre.value() * d.value, d.condition_estimate};
}

PFResult ik_pf(const BracketParams& p, const Rapidities& xs, const Rapidities& ys) {
  PFResult base{{}, Method::ik, 1, static_cast<int>(xs.size()), p.lambda, xs, ys};
  return escalate(p, base, [&](const auto& br) { return ik_value(br, xs, ys); });
}

PFResult fused_pf(const BracketParams& p, int k, const Rapidities& xs, const Rapidities& ys) {
  PFResult base{{}, Method::fused, k, static_cast<int>(xs.size()), p.lambda, xs, ys};
  return escalate(p, base, [&](const auto& br) { return fused_value(br, k, xs, ys); });
}

PFResult spin1_pf(const BracketParams& p, const Rapidities& xs, const Rapidities& ys) {
  PFResult base{{}, Method::spin1, 2, static_cast<int>(xs.size()), p.lambda, xs, ys};
  return escalate(p, base, [&](const auto& br) { return spin1_value(br, xs, ys); });
}

PFResult semi_homogeneous_pf(const BracketParams& p, int k, cdouble x, const Rapidities& ys) {
  const int L = static_cast<int>(ys.size());
  PFResult base{{}, Method::semi_homogeneous, k, L, p.lambda, Rapidities(L, x), ys};
  return escalate(p, base, [&](const auto& br) { return semi_homogeneous_value(br, k, x, ys); });
}

PFResult homogeneous_pf(const BracketParams& p, int k, int L, cdouble u) {
  // Reported with x = 0, y = u so the inputs can be replayed.
  PFResult base{{}, Method::homogeneous, k, L, p.lambda, Rapidities(L, cdouble(0)), Rapidities(L, u)};
  return escalate(p, base, [&](const auto& br) { return homogeneous_value(br, k, L, u); });
}

PFResult brute_force_result(const BracketParams& p, int k, const Rapidities& xs, const Rapidities& ys,
                            WeightModel model, EnumerationBudget budget) {
  PFResult r{brute_force_pf(p, k, xs, ys, model, budget), Method::brute_force, k, static_cast<int>(xs.size()),
             p.lambda, xs, ys};
  r.condition_estimate = 1.0;
  r.precision = p.precision;
  return r;
}

#define DWPF_INSTANTIATE(Real)                                                                             \
  template CMatrix<Real> fused_matrix(const Bracket<Real>&, int, const Rapidities&, const Rapidities&);  \
  template DetResult<Real> ik_value(const Bracket<Real>&, const Rapidities&, const Rapidities&);         \
  template DetResult<Real> fused_value(const Bracket<Real>&, int, const Rapidities&, const Rapidities&); \
  template DetResult<Real> spin1_value(const Bracket<Real>&, const Rapidities&, const Rapidities&);      \
  template DetResult<Real> semi_homogeneous_value(const Bracket<Real>&, int, cdouble, const Rapidities&); \
  template DetResult<Real> homogeneous_value(const Bracket<Real>&, int, int, cdouble);

DWPF_INSTANTIATE(double)
DWPF_INSTANTIATE(long double)

#undef DWPF_INSTANTIATE

}  // namespace dwpf
