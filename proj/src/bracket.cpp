#include "dwpf/bracket.hpp"

namespace dwpf {

const char* to_string(Precision p) {
  return p == Precision::extended ? "extended" : "f64";
}

Precision precision_from_string(const std::string& s) {
  if (s == "f64" || s == "double") return Precision::f64;
  if (s == "extended" || s == "long-double") return Precision::extended;
  throw InvalidArgument("unknown precision '" + s + "' (expected f64 or extended)");
}

void BracketParams::validate() const {
  if (lambda == cdouble(0.0, 0.0)) throw InvalidArgument("crossing parameter lambda must be nonzero");
  if (!(genericity_tol > 0.0)) throw InvalidArgument("genericity_tol must be positive");
}

cdouble bracket(const BracketParams& p, cdouble x) { return Bracket<double>(p)(x); }

cdouble bracket_falling(const BracketParams& p, cdouble x, int m) {
  if (m < 0) throw InvalidArgument("bracket_falling: m must be >= 0");
  return Bracket<double>(p).falling(x, m);
}

cdouble phi(const BracketParams& p, cdouble x) { return Bracket<double>(p).phi(x); }

std::vector<cdouble> phi_derivatives(const BracketParams& p, cdouble x, int n_max) {
  return Bracket<double>(p).phi_derivatives(x, n_max);
}

}  // namespace dwpf
