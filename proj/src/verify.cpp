#include "dwpf/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>

namespace dwpf {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

BracketParams params_for(const CheckSpec& spec, cdouble lambda) {
  BracketParams p;
  p.lambda = lambda;
  p.precision = spec.precision;
  p.genericity_tol = spec.genericity_tol;
  return p;
}

bool bracket_ok(const Bracket<double>& br, cdouble w, double margin) {
  return !br.vanishes(w) && std::abs(br(w)) >= margin;
}

// Genericity with pair (skip_i, skip_j) of the u-brackets left out.
bool generic_except(const BracketParams& p, int k, const Rapidities& xs, const Rapidities& ys, double margin,
                    int skip_i, int skip_j) {
  const Bracket<double> br(p);
  for (const Rapidities* set : {&xs, &ys})
    for (std::size_t i = 0; i < set->size(); ++i)
      for (std::size_t j = i + 1; j < set->size(); ++j)
        for (int d = -(k - 1); d <= k - 1; ++d)
          if (!bracket_ok(br, (*set)[j] - (*set)[i] + double(d), margin)) return false;
  for (int i = 0; i < static_cast<int>(xs.size()); ++i)
    for (int j = 0; j < static_cast<int>(ys.size()); ++j) {
      if (i == skip_i && j == skip_j) continue;
      for (int d = -(k - 1); d <= k; ++d)
        if (!bracket_ok(br, ys[j] - xs[i] + double(d), margin)) return false;
    }
  return true;
}

bool all_equal(const Rapidities& r) {
  return std::all_of(r.begin(), r.end(), [&](const cdouble& z) { return z == r.front(); });
}

bool is_inhomogeneous_formula(Method m) { return m == Method::ik || m == Method::fused || m == Method::spin1; }

void check_method_level(Method m, int k) {
  if (m == Method::ik && k != 1) throw InvalidArgument("ik requires k = 1");
  if (m == Method::spin1 && k != 2) throw InvalidArgument("spin1 requires k = 2");
}

CaseRecord make_case(std::string label, int k, const BracketParams& p, const Rapidities& xs, const Rapidities& ys,
                     cdouble lhs, cdouble rhs, double cond, double tol) {
  CaseRecord c;
  c.label = std::move(label);
  c.k = k;
  c.L = static_cast<int>(xs.size());
  c.lambda = p.lambda;
  c.xs = xs;
  c.ys = ys;
  c.lhs = lhs;
  c.rhs = rhs;
  c.rel_err = relative_error(lhs, rhs);
  c.cond = cond;
  c.tolerance = cond > kEscalationThreshold ? std::max(tol, 1e-6) : tol;
  c.pass = c.rel_err <= c.tolerance;
  return c;
}

CheckReport start(const CheckSpec& spec) {
  spec.validate();
  CheckReport r;
  r.spec = spec;
  return r;
}

cdouble c_plus_weight(const BracketParams& p, int k) { return bracket_falling(p, cdouble(k), k); }

// Corner-recursion weight W: B for upper_left, A for upper_right.
cdouble corner_weight(const Bracket<double>& br, Corner c, cdouble u) {
  return c == Corner::upper_left ? br(u - 1.0) * br(u) : br(u + 1.0) * br(u + 2.0);
}

Rapidities without(const Rapidities& r, int skip) {
  Rapidities out;
  for (int i = 0; i < static_cast<int>(r.size()); ++i)
    if (i != skip) out.push_back(r[i]);
  return out;
}

cdouble reduced_pf(const BracketParams& p, const Rapidities& xs, const Rapidities& ys) {
  return xs.empty() ? cdouble(1) : spin1_pf(p, xs, ys).value;
}

}  // namespace

void CheckSpec::validate() const {
  if (draws < 1) throw InvalidArgument("draws must be >= 1");
  if (!(tolerance > 0)) throw InvalidArgument("tolerance must be positive");
  if (!(genericity_tol > 0)) throw InvalidArgument("genericity_tol must be positive");
  if (k_min < 1 || k_max < k_min) throw InvalidArgument("invalid k range");
  if (L_min < 1 || L_max < L_min) throw InvalidArgument("invalid L range");
  if (lambda && *lambda == cdouble(0)) throw InvalidArgument("lambda must be nonzero");
}

void CheckReport::add(CaseRecord c) {
  pass = pass && c.pass;
  cases.push_back(std::move(c));
}

void CheckReport::merge(const CheckReport& other) {
  for (const auto& c : other.cases) add(c);
  pass = pass && other.pass;
  elapsed_ms += other.elapsed_ms;
}

double relative_error(cdouble a, cdouble b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-14});
  const double e = std::abs(a - b) / scale;
  return std::isnan(e) ? std::numeric_limits<double>::infinity() : e;
}

const std::vector<cdouble>& lambda_presets() {
  static const std::vector<cdouble> presets{{1.0, 0.0}, {0.7, 0.2}, {0.0, std::numbers::pi / 5}};
  return presets;
}

cdouble RapidityDraw::rapidity() {
  std::uniform_real_distribution<double> re(-1.0, 1.0);
  std::uniform_real_distribution<double> im(-0.5, 0.5);
  const double a = re(rng_);
  return {a, im(rng_)};
}

Rapidities RapidityDraw::rapidities(int n) {
  Rapidities out(n);
  for (auto& z : out) z = rapidity();
  return out;
}

cdouble RapidityDraw::lambda(const CheckSpec& spec) {
  if (spec.lambda) return *spec.lambda;
  return lambda_presets()[index(static_cast<int>(lambda_presets().size()))];
}

bool is_generic(const BracketParams& p, int k, const Rapidities& xs, const Rapidities& ys, double margin) {
  return generic_except(p, k, xs, ys, margin, -1, -1);
}

Evaluation evaluate(Method m, const BracketParams& p, int k, const Rapidities& xs, const Rapidities& ys,
                    EnumerationBudget budget) {
  check_method_level(m, k);
  if (xs.empty() || xs.size() != ys.size()) throw InvalidArgument("need |xs| = |ys| >= 1");
  PFResult r;
  switch (m) {
    case Method::ik: r = ik_pf(p, xs, ys); break;
    case Method::fused: r = fused_pf(p, k, xs, ys); break;
    case Method::spin1: r = spin1_pf(p, xs, ys); break;
    case Method::semi_homogeneous:
      if (!all_equal(xs)) throw InvalidArgument("semi_homogeneous needs all xs equal");
      r = semi_homogeneous_pf(p, k, xs.front(), ys);
      break;
    case Method::homogeneous:
      if (!all_equal(xs) || !all_equal(ys)) throw InvalidArgument("homogeneous needs all xs and all ys equal");
      r = homogeneous_pf(p, k, static_cast<int>(xs.size()), ys.front() - xs.front());
      break;
    case Method::brute_force: r = brute_force_result(p, k, xs, ys, default_weight_model(k), budget); break;
  }
  return {r.value, r.condition_estimate};
}

cdouble clustered_limit(Method m, const BracketParams& p, int k, cdouble x, const Rapidities& ys, bool collapse_ys) {
  if (!is_inhomogeneous_formula(m)) throw InvalidArgument("clustered_limit needs an inhomogeneous formula");
  BracketParams q = p;
  q.precision = Precision::extended;
  const int L = static_cast<int>(ys.size());
  auto f = [&](double eps) {
    Rapidities xe(L), ye(ys);
    for (int i = 0; i < L; ++i) xe[i] = x + eps * double(i);
    if (collapse_ys)
      for (int j = 0; j < L; ++j) ye[j] = ys.front() - eps * (j + 0.5);
    return evaluate(m, q, k, xe, ye).value;
  };
  return coincident_limit(f);
}

cdouble recursion_rhs(const BracketParams& p, Corner c, int i, int j, const Rapidities& xs, const Rapidities& ys) {
  const Bracket<double> br(p);
  const int L = static_cast<int>(xs.size());
  cdouble r = br(1.0) * br(2.0);
  for (int jp = 0; jp < L; ++jp)
    if (jp != j) r *= corner_weight(br, c, -xs[i] + ys[jp]);
  for (int ip = 0; ip < L; ++ip)
    if (ip != i) r *= corner_weight(br, c, -xs[ip] + ys[j]);
  return r * reduced_pf(p, without(xs, i), without(ys, j));
}

cdouble recursion_rhs_quoted(const BracketParams& p, Corner c, const Rapidities& xs, const Rapidities& ys) {
  const Bracket<double> br(p);
  const int L = static_cast<int>(xs.size());
  cdouble r = br(1.0) * br(2.0);
  if (c == Corner::upper_left) {
    for (int j = 1; j < L; ++j) r *= corner_weight(br, c, -xs[0] + ys[j - 1]) * corner_weight(br, c, -xs[j] + ys[0]);
    return r * reduced_pf(p, without(xs, 0), without(ys, 0));
  }
  for (int j = 1; j < L; ++j) r *= corner_weight(br, c, -xs[0] + ys[j]) * corner_weight(br, c, -xs[j] + ys[L - 1]);
  return r * reduced_pf(p, without(xs, 0), without(ys, L - 1));
}

std::vector<cdouble> laurent_fit(const std::function<cdouble(cdouble)>& f, int degree, double phase) {
  if (degree < 0) throw InvalidArgument("laurent_fit: degree must be >= 0");
  const int n = 2 * degree + 1;
  Eigen::MatrixXcd v(n, n);
  Eigen::VectorXcd rhs(n);
  for (int m = 0; m < n; ++m) {
    const cdouble z = std::polar(1.0, phase + 2 * std::numbers::pi * m / n);
    for (int e = -degree; e <= degree; ++e) v(m, e + degree) = std::pow(z, e);
    rhs(m) = f(z);
  }
  const Eigen::VectorXcd c = v.partialPivLu().solve(rhs);
  return {c.data(), c.data() + n};
}

cdouble laurent_eval(const std::vector<cdouble>& coeffs, cdouble z) {
  const int degree = (static_cast<int>(coeffs.size()) - 1) / 2;
  cdouble s(0);
  for (int e = -degree; e <= degree; ++e) s += coeffs[e + degree] * std::pow(z, e);
  return s;
}

CheckReport run_equivalence(const CheckSpec& spec, Method lhs, Method rhs) {
  const auto t0 = Clock::now();
  CheckReport report = start(spec);
  RapidityDraw draw(spec.seed);
  const bool collapse_xs = lhs == Method::semi_homogeneous || lhs == Method::homogeneous ||
                           rhs == Method::semi_homogeneous || rhs == Method::homogeneous;
  const bool collapse_ys = lhs == Method::homogeneous || rhs == Method::homogeneous;
  for (int k = spec.k_min; k <= spec.k_max; ++k) {
    check_method_level(lhs, k);
    check_method_level(rhs, k);
    for (int L = spec.L_min; L <= spec.L_max; ++L)
      for (int d = 0; d < spec.draws; ++d) {
        const BracketParams p = params_for(spec, draw.lambda(spec));
        auto [xs, ys] = draw.generic(L, [&](Rapidities& x, Rapidities& y) {
          if (collapse_xs) x.assign(L, x.front());
          if (collapse_ys) y.assign(L, y.front());
          // Collapsed sets are checked on their distinct members only.
          const Rapidities dy = collapse_ys ? Rapidities{y.front()} : y;
          return is_generic(p, k, collapse_xs ? Rapidities{x.front()} : x, dy) &&
                 is_generic(p, k, Rapidities{x.front()}, dy);
        });
        bool limit_used = false;
        auto side = [&](Method m) -> Evaluation {
          if (collapse_xs && L > 1 && is_inhomogeneous_formula(m)) {
            limit_used = true;
            return {clustered_limit(m, p, k, xs.front(), ys, collapse_ys), 1.0};
          }
          return evaluate(m, p, k, xs, ys, spec.budget);
        };
        const auto a = side(lhs);
        const auto b = side(rhs);
        const double tol = limit_used ? std::max(spec.tolerance, 1e-6) : spec.tolerance;
        report.add(make_case(std::string(to_string(lhs)) + " vs " + to_string(rhs), k, p, xs, ys, a.value, b.value,
                             std::max(a.cond, b.cond), tol));
      }
  }
  report.elapsed_ms = ms_since(t0);
  return report;
}

CheckReport run_initial_condition(const CheckSpec& spec, Method m) {
  const auto t0 = Clock::now();
  CheckReport report = start(spec);
  RapidityDraw draw(spec.seed);
  for (int k = spec.k_min; k <= spec.k_max; ++k) {
    check_method_level(m, k);
    for (int d = 0; d < spec.draws; ++d) {
      const BracketParams p = params_for(spec, draw.lambda(spec));
      const auto [xs, ys] = draw.generic(1, [&](const Rapidities& x, const Rapidities& y) {
        return is_generic(p, k, x, y);
      });
      const auto e = evaluate(m, p, k, xs, ys, spec.budget);
      report.add(make_case(std::string(to_string(m)) + " at L=1 vs [k]_k", k, p, xs, ys, e.value,
                           c_plus_weight(p, k), e.cond, spec.tolerance));
    }
  }
  report.elapsed_ms = ms_since(t0);
  return report;
}

CheckReport run_symmetry(const CheckSpec& spec, int permutations) {
  const auto t0 = Clock::now();
  CheckReport report = start(spec);
  RapidityDraw draw(spec.seed);
  std::mt19937_64 shuffler(spec.seed ^ 0x5eedULL);
  for (int k = spec.k_min; k <= spec.k_max; ++k)
    for (int L = spec.L_min; L <= spec.L_max; ++L)
      for (int d = 0; d < spec.draws; ++d) {
        const BracketParams p = params_for(spec, draw.lambda(spec));
        const auto [xs, ys] = draw.generic(L, [&](const Rapidities& x, const Rapidities& y) {
          return is_generic(p, k, x, y);
        });
        const auto base = fused_pf(p, k, xs, ys);
        for (int t = 0; t < permutations; ++t)
          for (bool permute_x : {true, false}) {
            Rapidities px = xs, py = ys;
            std::shuffle(permute_x ? px.begin() : py.begin(), permute_x ? px.end() : py.end(), shuffler);
            const auto r = fused_pf(p, k, px, py);
            report.add(make_case(permute_x ? "permuted xs" : "permuted ys", k, p, px, py, r.value, base.value,
                                 std::max(r.condition_estimate, base.condition_estimate), spec.tolerance));
          }
      }
  report.elapsed_ms = ms_since(t0);
  return report;
}

CheckReport run_recursion_suite(const CheckSpec& spec) {
  const auto t0 = Clock::now();
  CheckReport report = start(spec);
  if (spec.k_min != 2 || spec.k_max != 2) throw InvalidArgument("the corner recursions are stated for k = 2 only");
  RapidityDraw draw(spec.seed);
  constexpr double kMargin = 0.1;
  constexpr double kRadius = 0.05;
  for (int L = spec.L_min; L <= spec.L_max; ++L)
    for (int d = 0; d < spec.draws; ++d) {
      const BracketParams p = params_for(spec, draw.lambda(spec));
      for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
          for (Corner c : {Corner::upper_left, Corner::upper_right}) {
            const double shift = c == Corner::upper_left ? 1.0 : 0.0;
            const auto [xs, ys] = draw.generic(L, [&](Rapidities& x, const Rapidities& y) {
              x[i] = y[j] + shift;
              return generic_except(p, 2, x, y, kMargin, i, j);
            });
            auto z = [&](cdouble xi) {
              Rapidities x = xs;
              x[i] = xi;
              return spin1_pf(p, x, ys).value;
            };
            const cdouble lhs = contour_mean(z, xs[i], kRadius);
            const cdouble rhs = recursion_rhs(p, c, i, j, xs, ys);
            const std::string label = std::string(c == Corner::upper_left ? "upper-left" : "upper-right") +
                                      " x[" + std::to_string(i) + "] = y[" + std::to_string(j) + "]" +
                                      (c == Corner::upper_left ? "+1" : "");
            report.add(make_case(label, 2, p, xs, ys, lhs, rhs, 1.0, spec.tolerance));
          }
    }
  report.elapsed_ms = ms_since(t0);
  return report;
}

CheckReport run_degree_check(const CheckSpec& spec) {
  const auto t0 = Clock::now();
  CheckReport report = start(spec);
  if (spec.k_min != 2 || spec.k_max != 2) throw InvalidArgument("the degree check is stated for k = 2 only");
  RapidityDraw draw(spec.seed);
  constexpr double kMargin = 1e-2;
  for (int L = spec.L_min; L <= spec.L_max; ++L)
    for (int d = 0; d < spec.draws; ++d) {
      const BracketParams p = params_for(spec, draw.lambda(spec));
      const int degree = 2 * L - 2;
      const int wide = 2 * L;
      // x_1 = log(z) / lambda on every node used below must be generic.
      std::vector<cdouble> nodes;
      for (int n : {2 * degree + 1, 2 * wide + 1})
        for (int m = 0; m < n; ++m) nodes.push_back(std::polar(1.0, 0.1 + 2 * std::numbers::pi * m / n));
      const int held_out = 3;
      for (int m = 0; m < held_out; ++m)
        nodes.push_back(std::polar(1.0, 0.1 + 2 * std::numbers::pi * (m + 0.5) / (2 * degree + 1)));
      const auto [xs, ys] = draw.generic(L, [&](Rapidities& x, const Rapidities& y) {
        for (const auto& z : nodes) {
          x[0] = std::log(z) / p.lambda;
          if (!is_generic(p, 2, x, y, kMargin)) return false;
        }
        return true;
      });
      auto f = [&](cdouble z) {
        Rapidities x = xs;
        x[0] = std::log(z) / p.lambda;
        return spin1_pf(p, x, ys).value;
      };
      const auto coeffs = laurent_fit(f, degree);
      for (int m = 0; m < held_out; ++m) {
        const cdouble z = nodes[nodes.size() - held_out + m];
        Rapidities x = xs;
        x[0] = std::log(z) / p.lambda;
        report.add(make_case("held-out node " + std::to_string(m) + ", degree " + std::to_string(degree), 2, p, x, ys,
                             laurent_eval(coeffs, z), f(z), 1.0, spec.tolerance));
      }
      // Fit with room for exponents up to 2L; the two outermost pairs must vanish.
      const auto wide_coeffs = laurent_fit(f, wide);
      double top = 0, scale = 0;
      cdouble top_c(0);
      for (int e = -wide; e <= wide; ++e) {
        const cdouble c = wide_coeffs[e + wide];
        scale = std::max(scale, std::abs(c));
        if (std::abs(e) >= wide - 1 && std::abs(c) >= top) {
          top = std::abs(c);
          top_c = c;
        }
      }
      CaseRecord rec = make_case("exponents +-" + std::to_string(wide) + ", +-" + std::to_string(wide - 1) +
                                     " vanish (|c_top| / max |c|)",
                                 2, p, xs, ys, top_c, cdouble(scale), 1.0, spec.tolerance);
      rec.rel_err = scale > 0 ? top / scale : 0.0;
      rec.pass = rec.rel_err <= rec.tolerance;
      report.add(std::move(rec));
    }
  report.elapsed_ms = ms_since(t0);
  return report;
}

CheckReport run_homogeneous_suite(const CheckSpec& spec) {
  const auto t0 = Clock::now();
  CheckReport report = start(spec);
  if (spec.k_max > 3 || spec.L_max > 3) throw InvalidArgument("the homogeneous suite covers k <= 3, L <= 3");
  RapidityDraw draw(spec.seed);
  const double limit_tol = std::max(spec.tolerance, 1e-6);
  for (int k = spec.k_min; k <= spec.k_max; ++k)
    for (int L = spec.L_min; L <= spec.L_max; ++L)
      for (int d = 0; d < spec.draws; ++d) {
        const BracketParams p = params_for(spec, draw.lambda(spec));
        const auto [x0, ys] = draw.generic(L, [&](const Rapidities& x, const Rapidities& y) {
          return is_generic(p, k, Rapidities{x.front()}, y);
        });
        const cdouble x = x0.front();
        const Rapidities xs(L, x);
        const Rapidities yh(L, ys.front());
        const Method inhom = k == 1 ? Method::ik : Method::fused;

        const auto hom = homogeneous_pf(p, k, L, ys.front() - x);
        const auto hom_bf = brute_force_pf(p, k, xs, yh, default_weight_model(k), spec.budget);
        report.add(make_case("homogeneous vs equal-rapidity brute force", k, p, xs, yh, hom.value, hom_bf,
                             hom.condition_estimate, spec.tolerance));

        const auto semi = semi_homogeneous_pf(p, k, x, ys);
        const auto semi_bf = brute_force_pf(p, k, xs, ys, default_weight_model(k), spec.budget);
        report.add(make_case("semi-homogeneous vs brute force", k, p, xs, ys, semi.value, semi_bf,
                             semi.condition_estimate, spec.tolerance));

        // The eps-limit loses about (cancelling brackets) x 4 digits; use it
        // only where at most two brackets cancel.
        if (L >= 2 && k * L * (L - 1) / 2 <= 2)
          report.add(make_case("semi-homogeneous vs eps-extrapolated " + std::string(to_string(inhom)), k, p, xs, ys,
                               semi.value, clustered_limit(inhom, p, k, x, ys, false), semi.condition_estimate,
                               limit_tol));
        if (L >= 2 && k * L * (L - 1) <= 2)
          report.add(make_case("homogeneous vs eps-extrapolated " + std::string(to_string(inhom)), k, p, xs, yh,
                               hom.value, clustered_limit(inhom, p, k, x, yh, true), hom.condition_estimate,
                               limit_tol));
      }
  report.elapsed_ms = ms_since(t0);
  return report;
}

CheckReport run_all(const CheckSpec& spec) {
  const auto t0 = Clock::now();
  CheckReport report = start(spec);
  report.spec.name = "all";
  for (int k = spec.k_min; k <= spec.k_max; ++k) {
    CheckSpec s = spec;
    s.k_min = s.k_max = k;
    report.merge(run_equivalence(s, Method::fused, Method::brute_force));
    if (k == 1) report.merge(run_equivalence(s, Method::ik, Method::brute_force));
    if (k == 2) report.merge(run_equivalence(s, Method::spin1, Method::fused));
    std::vector<Method> l1{Method::fused, Method::semi_homogeneous, Method::homogeneous, Method::brute_force};
    if (k == 1) l1.push_back(Method::ik);
    if (k == 2) l1.push_back(Method::spin1);
    for (Method m : l1) report.merge(run_initial_condition(s, m));
    report.merge(run_symmetry(s));
    if (k == 2) {
      CheckSpec r = s;
      r.L_min = std::max(2, s.L_min);
      if (r.L_min <= r.L_max) report.merge(run_recursion_suite(r));
      report.merge(run_degree_check(s));
    }
    if (k <= 3 && s.L_max <= 3) report.merge(run_homogeneous_suite(s));
  }
  report.elapsed_ms = ms_since(t0);
  return report;
}

}  // namespace dwpf
