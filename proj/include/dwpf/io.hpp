#pragma once

#include <json.hpp>
#include <string>
#include <string_view>

#include "dwpf/determinant.hpp"
#include "dwpf/enumerate.hpp"
#include "dwpf/verify.hpp"

namespace dwpf {

/// "a+bi" with 17 significant digits; parse_complex inverts it exactly.
std::string format_complex(cdouble z);
/// %.17g
std::string format_real(double x);

/// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i", with exponents, no spaces.
cdouble parse_complex(std::string_view s);
/// Comma-separated list of complex numbers.
Rapidities parse_rapidities(std::string_view s);

nlohmann::json complex_list(const Rapidities& r);

/// {value_re, value_im, method, k, L, lambda, xs, ys, condition_estimate, precision}
nlohmann::json to_json(const PFResult& r);
/// {name, seed, spec, cases: [{inputs, lhs, rhs, rel_err, cond, tolerance, pass}], verdict, elapsed_ms}
nlohmann::json to_json(const CheckReport& r);
/// {k, L, h, v} with doubled-spin integer grids, row 0 at the bottom.
nlohmann::json to_json(const LatticeConfig& c);
nlohmann::json to_json(const ExtendedASM& a);

/// {alpha2, beta2, gamma2, delta2, weight_re, weight_im}
nlohmann::json weight_record(const VertexSpins& v, cdouble w);

}  // namespace dwpf
