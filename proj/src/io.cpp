#include "dwpf/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace dwpf {

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  const std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size())
    throw InvalidArgument("cannot parse complex number '" + std::string(whole) + "'");
  return v;
}

nlohmann::json grid(const Eigen::MatrixXi& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(cdouble z) {
  const double im = z.imag();
  return format_real(z.real()) + (std::signbit(im) ? "-" : "+") + format_real(std::abs(im)) + "i";
}

cdouble parse_complex(std::string_view s) {
  if (s.empty()) throw InvalidArgument("empty complex number");
  if (s.back() != 'i') return {parse_real(s, s), 0.0};
  const std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is neither leading nor part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  auto imag_part = [&](std::string_view t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, s);
  };
  if (split == std::string_view::npos) return {0.0, imag_part(body)};
  return {parse_real(body.substr(0, split), s), imag_part(body.substr(split))};
}

Rapidities parse_rapidities(std::string_view s) {
  Rapidities out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(parse_complex(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

nlohmann::json complex_list(const Rapidities& r) {
  auto a = nlohmann::json::array();
  for (const auto& z : r) a.push_back(format_complex(z));
  return a;
}

nlohmann::json to_json(const PFResult& r) {
  return {{"value_re", r.value.real()},
          {"value_im", r.value.imag()},
          {"method", to_string(r.method)},
          {"k", r.k},
          {"L", r.L},
          {"lambda", format_complex(r.lambda)},
          {"xs", complex_list(r.xs)},
          {"ys", complex_list(r.ys)},
          {"condition_estimate", r.condition_estimate},
          {"precision", to_string(r.precision)}};
}

nlohmann::json to_json(const CheckReport& r) {
  const auto& s = r.spec;
  nlohmann::json spec{{"k_min", s.k_min},         {"k_max", s.k_max},
                      {"L_min", s.L_min},         {"L_max", s.L_max},
                      {"draws", s.draws},         {"tolerance", s.tolerance},
                      {"precision", to_string(s.precision)}, {"genericity_tol", s.genericity_tol}};
  if (s.lambda) spec["lambda"] = format_complex(*s.lambda);
  auto cases = nlohmann::json::array();
  for (const auto& c : r.cases)
    cases.push_back({{"inputs",
                      {{"label", c.label},
                       {"k", c.k},
                       {"L", c.L},
                       {"lambda", format_complex(c.lambda)},
                       {"xs", complex_list(c.xs)},
                       {"ys", complex_list(c.ys)}}},
                     {"lhs", format_complex(c.lhs)},
                     {"rhs", format_complex(c.rhs)},
                     {"rel_err", c.rel_err},
                     {"cond", c.cond},
                     {"tolerance", c.tolerance},
                     {"pass", c.pass}});
  return {{"name", s.name},
          {"seed", s.seed},
          {"spec", spec},
          {"cases", cases},
          {"verdict", r.pass ? "pass" : "fail"},
          {"elapsed_ms", r.elapsed_ms}};
}

nlohmann::json to_json(const LatticeConfig& c) { return {{"k", c.k}, {"L", c.L}, {"h", grid(c.h)}, {"v", grid(c.v)}}; }

nlohmann::json to_json(const ExtendedASM& a) { return grid(a.entries); }

nlohmann::json weight_record(const VertexSpins& v, cdouble w) {
  return {{"alpha2", v.alpha}, {"beta2", v.beta},       {"gamma2", v.gamma},
          {"delta2", v.delta}, {"weight_re", w.real()}, {"weight_im", w.imag()}};
}

}  // namespace dwpf
