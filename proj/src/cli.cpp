#include "dwpf/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "dwpf/io.hpp"

namespace dwpf {

namespace {

Precision resolve_precision(const CliConfig& cfg) {
  if (cfg.precision) return precision_from_string(*cfg.precision);
  if (const char* env = std::getenv("DWPF_PRECISION"); env && *env) return precision_from_string(env);
  return Precision::f64;
}

BracketParams bracket_params(const CliConfig& cfg) {
  BracketParams p;
  p.lambda = parse_complex(cfg.lambda);
  p.precision = resolve_precision(cfg);
  p.genericity_tol = cfg.genericity_tol;
  p.validate();
  return p;
}

std::string format_or(const CliConfig& cfg, const std::string& fallback) {
  const std::string f = cfg.format.value_or(fallback);
  if (f != "json" && f != "csv" && f != "pretty") throw InvalidArgument("unknown format '" + f + "'");
  return f;
}

WeightModel weight_model(const std::string& s, int k) {
  if (s.empty() || s == "default") return default_weight_model(k);
  if (s == "fused") return WeightModel::fused;
  if (s == "spin1_table" || s == "table") return WeightModel::spin1_table;
  if (s == "six_vertex") return WeightModel::six_vertex;
  if (s == "unit") return WeightModel::unit;
  throw InvalidArgument("unknown weight model '" + s + "'");
}

void check_level(int k) {
  if (k < 1) throw InvalidArgument("--k must be >= 1");
}

// --- compute ---------------------------------------------------------------

PFResult compute(const CliConfig& cfg) {
  const int k = cfg.k.value_or(1);
  check_level(k);
  const BracketParams p = bracket_params(cfg);
  Rapidities xs = cfg.xs.empty() ? Rapidities{} : parse_rapidities(cfg.xs);
  Rapidities ys = cfg.ys.empty() ? Rapidities{} : parse_rapidities(cfg.ys);
  if (cfg.u) {
    if (!xs.empty() || !ys.empty()) throw InvalidArgument("give either --u or --x/--y, not both");
    xs = {cdouble(0)};
    ys = {parse_complex(*cfg.u)};
  }
  if (xs.empty() || ys.empty()) throw InvalidArgument("rapidities missing: pass --x and --y (or --u)");
  const int L = cfg.L.value_or(static_cast<int>(std::max(xs.size(), ys.size())));
  if (L < 1) throw InvalidArgument("--L must be >= 1");
  // A single value stands for L equal rapidities.
  if (xs.size() == 1) xs.assign(L, xs.front());
  if (ys.size() == 1) ys.assign(L, ys.front());
  if (static_cast<int>(xs.size()) != L || static_cast<int>(ys.size()) != L)
    throw InvalidArgument("--x and --y must each list L = " + std::to_string(L) + " rapidities");

  const Method m = cfg.method == "determinant" ? Method::fused : method_from_string(cfg.method);
  switch (m) {
    case Method::ik:
      if (k != 1) throw InvalidArgument("method ik requires k = 1");
      return ik_pf(p, xs, ys);
    case Method::fused: return fused_pf(p, k, xs, ys);
    case Method::spin1:
      if (k != 2) throw InvalidArgument("method spin1 requires k = 2");
      return spin1_pf(p, xs, ys);
    case Method::semi_homogeneous:
      for (const auto& x : xs)
        if (x != xs.front()) throw InvalidArgument("semi_homogeneous needs a single x");
      return semi_homogeneous_pf(p, k, xs.front(), ys);
    case Method::homogeneous:
      for (int i = 0; i < L; ++i)
        if (xs[i] != xs.front() || ys[i] != ys.front()) throw InvalidArgument("homogeneous needs a single x and y");
      {
        PFResult r = homogeneous_pf(p, k, L, ys.front() - xs.front());
        r.xs = xs;
        r.ys = ys;
        return r;
      }
    case Method::brute_force:
      return brute_force_result(p, k, xs, ys, weight_model(cfg.model, k), EnumerationBudget{cfg.budget});
  }
  throw InvalidArgument("unknown method");
}

int cmd_compute(const CliConfig& cfg, std::ostream& out) {
  const std::string fmt = format_or(cfg, "json");
  const PFResult r = compute(cfg);
  if (fmt == "json") {
    out << to_json(r).dump() << "\n";
  } else if (fmt == "csv") {
    out << "method,k,L,lambda,value_re,value_im,condition_estimate,precision\n"
        << to_string(r.method) << "," << r.k << "," << r.L << "," << format_complex(r.lambda) << ","
        << format_real(r.value.real()) << "," << format_real(r.value.imag()) << ","
        << format_real(r.condition_estimate) << "," << to_string(r.precision) << "\n";
  } else {
    out << "method     " << to_string(r.method) << "\n"
        << "k, L       " << r.k << ", " << r.L << "\n"
        << "lambda     " << format_complex(r.lambda) << "\n"
        << "value      " << format_complex(r.value) << "\n"
        << "condition  " << format_real(r.condition_estimate) << "\n"
        << "precision  " << to_string(r.precision) << "\n";
  }
  return kExitOk;
}

// --- enumerate -------------------------------------------------------------

int cmd_enumerate(const CliConfig& cfg, std::ostream& out) {
  const int k = cfg.k.value_or(1);
  check_level(k);
  if (!cfg.L) throw InvalidArgument("--L is required");
  const int L = *cfg.L;
  const EnumerationBudget budget{cfg.budget};
  if (cfg.count_only) {
    out << count_configs(k, L, budget) << "\n";
    return kExitOk;
  }
  if (cfg.asm_output) {
    const std::string fmt = format_or(cfg, "csv");
    auto all = nlohmann::json::array();
    if (fmt == "csv") {
      out << "matrix,row";
      for (int j = 0; j < L; ++j) out << ",c" << j;
      out << "\n";
    }
    int index = 0;
    for_each_config(k, L, [&](const LatticeConfig& c) {
      const ExtendedASM a = asm_of_config(c);
      if (fmt == "json") {
        all.push_back(to_json(a));
      } else if (fmt == "csv") {
        for (int i = 0; i < L; ++i) {
          out << index << "," << i;
          for (int j = 0; j < L; ++j) out << "," << a.entries(i, j);
          out << "\n";
        }
      } else {
        out << "# " << index << "\n" << a.entries << "\n";
      }
      ++index;
      return true;
    }, budget);
    if (fmt == "json") out << all.dump() << "\n";
    return kExitOk;
  }
  if (format_or(cfg, "json") != "json") throw InvalidArgument("configurations are written as JSON lines only");
  for_each_config(k, L, [&](const LatticeConfig& c) {
    out << to_json(c).dump() << "\n";
    return true;
  }, budget);
  return kExitOk;
}

// --- verify ----------------------------------------------------------------

int cmd_verify(const CliConfig& cfg, std::ostream& out) {
  const std::string& suite = cfg.suite;
  const bool spin1_only = suite == "recursion" || suite == "degree";
  CheckSpec spec;
  spec.name = suite;
  spec.k_min = cfg.k.value_or(spin1_only ? 2 : 1);
  spec.k_max = cfg.k_max.value_or(spec.k_min);
  spec.L_min = cfg.L.value_or(2);
  spec.L_max = cfg.L_max.value_or(spec.L_min);
  spec.draws = cfg.draws;
  spec.seed = cfg.seed;
  spec.precision = resolve_precision(cfg);
  spec.genericity_tol = cfg.genericity_tol;
  spec.budget.max_nodes = cfg.budget;
  if (cfg.lambda_given) spec.lambda = parse_complex(cfg.lambda);
  spec.tolerance = cfg.tolerance.value_or(suite == "recursion" ? 1e-9 : 1e-8);

  CheckReport report;
  if (suite == "equivalence") {
    const Method lhs = method_from_string(cfg.lhs);
    report = cfg.rhs == "constant" ? run_initial_condition(spec, lhs)
                                   : run_equivalence(spec, lhs, method_from_string(cfg.rhs));
  } else if (suite == "recursion") {
    report = run_recursion_suite(spec);
  } else if (suite == "degree") {
    report = run_degree_check(spec);
  } else if (suite == "homogeneous") {
    report = run_homogeneous_suite(spec);
  } else if (suite == "all") {
    report = run_all(spec);
  } else {
    throw InvalidArgument("unknown suite '" + suite + "'");
  }
  report.spec.name = suite;

  const std::string fmt = format_or(cfg, "json");
  if (fmt == "json") {
    out << to_json(report).dump() << "\n";
  } else if (fmt == "csv") {
    out << "label,k,L,lambda,lhs,rhs,rel_err,cond,tolerance,pass\n";
    for (const auto& c : report.cases)
      out << '"' << c.label << "\"," << c.k << "," << c.L << "," << format_complex(c.lambda) << ","
          << format_complex(c.lhs) << "," << format_complex(c.rhs) << "," << format_real(c.rel_err) << ","
          << format_real(c.cond) << "," << format_real(c.tolerance) << "," << (c.pass ? "true" : "false") << "\n";
  } else {
    double worst = 0;
    for (const auto& c : report.cases) worst = std::max(worst, c.rel_err);
    out << suite << ": " << (report.pass ? "pass" : "fail") << " (" << report.cases.size()
        << " cases, worst rel err " << format_real(worst) << ")\n";
    for (const auto& c : report.cases)
      if (!c.pass)
        out << "  FAIL " << c.label << " k=" << c.k << " L=" << c.L << " rel_err=" << format_real(c.rel_err) << "\n";
  }
  return report.pass ? kExitOk : kExitFailed;
}

// --- weights ---------------------------------------------------------------

int cmd_weights(const CliConfig& cfg, std::ostream& out) {
  const int k = cfg.k.value_or(1);
  check_level(k);
  if (k > 3) throw InvalidArgument("weights are dumped for k <= 3");
  if (!cfg.u) throw InvalidArgument("--u is required");
  const BracketParams p = bracket_params(cfg);
  const Bracket<double> br(p);
  const cdouble u = parse_complex(*cfg.u);
  const WeightModel model = weight_model(cfg.model, k);
  if (model == WeightModel::six_vertex && k != 1) throw InvalidArgument("six_vertex weights need k = 1");
  if (model == WeightModel::spin1_table && k != 2) throw InvalidArgument("spin1_table weights need k = 2");
  if (cfg.compare_table && k != 2) throw InvalidArgument("--compare-table needs k = 2");

  auto fused = [&](const VertexSpins& v) { return fuse_block_regularized(br, k, v, u); };
  auto weights = nlohmann::json::array();
  std::vector<std::pair<VertexSpins, cdouble>> rows;
  for (const auto& v : conserving_vertices(k)) {
    cdouble w;
    switch (model) {
      case WeightModel::six_vertex: w = six_vertex_weight(br, v, u); break;
      case WeightModel::fused: w = fused(v); break;
      case WeightModel::spin1_table:
        w = in_spin1_table(v) ? spin1_table_weight(br, v, u) : spin1_symmetric_gauge(br, v) * fused(v);
        break;
      case WeightModel::unit: w = 1.0; break;
    }
    rows.emplace_back(v, w);
    weights.push_back(weight_record(v, w));
  }

  auto comparison = nlohmann::json::array();
  double worst_gauged = 0;
  int raw_matches = 0;
  if (cfg.compare_table) {
    for (const auto& [v, cls] : spin1_table()) {
      const cdouble table = spin1_class_weight(br, cls, u);
      const cdouble raw = fused(v);
      const cdouble gauged = spin1_symmetric_gauge(br, v) * raw;
      const double e_raw = relative_error(raw, table);
      const double e_gauged = relative_error(gauged, table);
      worst_gauged = std::max(worst_gauged, e_gauged);
      if (e_raw <= 1e-9) ++raw_matches;
      auto rec = weight_record(v, table);
      rec.erase("weight_re");
      rec.erase("weight_im");
      rec["class"] = to_string(cls);
      rec["table"] = format_complex(table);
      rec["fused"] = format_complex(raw);
      rec["fused_gauged"] = format_complex(gauged);
      rec["rel_err_raw"] = e_raw;
      rec["rel_err_gauged"] = e_gauged;
      comparison.push_back(std::move(rec));
    }
  }

  const std::string fmt = format_or(cfg, "json");
  if (fmt == "json") {
    if (cfg.compare_table)
      out << nlohmann::json{{"weights", weights},
                            {"comparison", comparison},
                            {"max_rel_err_gauged", worst_gauged},
                            {"raw_matches", raw_matches}}
                 .dump()
          << "\n";
    else
      out << weights.dump() << "\n";
  } else if (fmt == "csv") {
    if (cfg.compare_table) {
      out << "alpha2,beta2,gamma2,delta2,class,table,fused,fused_gauged,rel_err_raw,rel_err_gauged\n";
      for (const auto& c : comparison)
        out << c["alpha2"] << "," << c["beta2"] << "," << c["gamma2"] << "," << c["delta2"] << ","
            << c["class"].get<std::string>() << "," << c["table"].get<std::string>() << ","
            << c["fused"].get<std::string>() << "," << c["fused_gauged"].get<std::string>() << ","
            << format_real(c["rel_err_raw"].get<double>()) << "," << format_real(c["rel_err_gauged"].get<double>())
            << "\n";
    } else {
      out << "alpha2,beta2,gamma2,delta2,weight_re,weight_im\n";
      for (const auto& [v, w] : rows)
        out << v.alpha << "," << v.beta << "," << v.gamma << "," << v.delta << "," << format_real(w.real()) << ","
            << format_real(w.imag()) << "\n";
    }
  } else {
    for (const auto& [v, w] : rows) out << to_string(v) << "  " << format_complex(w) << "\n";
    if (cfg.compare_table)
      out << "table vs gauged fusion: max rel err " << format_real(worst_gauged) << ", raw matches " << raw_matches
          << "/12\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Domain-wall partition functions of spin-k/2 vertex models", "dwpf"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--k", cfg.k, "level: bonds carry spin k/2");
    sub->add_option("--L", cfg.L, "lattice size");
    sub->add_option("--lambda", cfg.lambda, "crossing parameter, e.g. 1 or 0.7+0.2i");
    sub->add_option("--format", cfg.format, "json, csv or pretty");
    sub->add_option("--precision", cfg.precision, "f64 or extended (default: $DWPF_PRECISION, else f64)");
    sub->add_option("--budget", cfg.budget, "enumeration node budget");
    sub->add_option("--genericity-tol", cfg.genericity_tol, "tolerance for vanishing brackets");
  };

  auto* compute_cmd = app.add_subcommand("compute", "evaluate one partition function");
  add_common(compute_cmd);
  compute_cmd->add_option("--x", cfg.xs, "horizontal rapidities, comma separated");
  compute_cmd->add_option("--y", cfg.ys, "vertical rapidities, comma separated");
  compute_cmd->add_option("--u", cfg.u, "homogeneous shortcut: x = 0, y = u");
  compute_cmd->add_option("--method", cfg.method,
                          "determinant, ik, fused, spin1, semi_homogeneous, homogeneous or bruteforce");
  compute_cmd->add_option("--model", cfg.model, "brute-force weights: fused, spin1_table, six_vertex or unit");
  cfg.model.clear();

  auto* enumerate_cmd = app.add_subcommand("enumerate", "list domain-wall configurations");
  add_common(enumerate_cmd);
  enumerate_cmd->add_flag("--count-only", cfg.count_only, "print only the number of configurations");
  enumerate_cmd->add_flag("--asm", cfg.asm_output, "print extended alternating sign matrices");

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  add_common(verify_cmd);
  verify_cmd->add_option("--suite", cfg.suite, "equivalence, recursion, degree, homogeneous or all");
  verify_cmd->add_option("--k-max", cfg.k_max, "upper end of the k range");
  verify_cmd->add_option("--L-max", cfg.L_max, "upper end of the L range");
  verify_cmd->add_option("--draws", cfg.draws, "random draws per (k, L)");
  verify_cmd->add_option("--seed", cfg.seed, "random seed");
  verify_cmd->add_option("--tol", cfg.tolerance, "relative tolerance");
  verify_cmd->add_option("--lhs", cfg.lhs, "equivalence suite: left method");
  verify_cmd->add_option("--rhs", cfg.rhs, "equivalence suite: right method, or 'constant' for [k]_k at L = 1");

  auto* weights_cmd = app.add_subcommand("weights", "dump vertex weights at one u");
  add_common(weights_cmd);
  weights_cmd->add_option("--u", cfg.u, "spectral parameter u = -x + y");
  weights_cmd->add_option("--model", cfg.model, "fused, spin1_table or six_vertex");
  weights_cmd->add_flag("--compare-table", cfg.compare_table, "k = 2: compare with the spin-1 closed forms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (auto* sub : app.get_subcommands()) {
    cfg.subcommand = sub->get_name();
    if (auto* opt = sub->get_option_no_throw("--lambda"); opt && opt->count() > 0) cfg.lambda_given = true;
  }

  try {
    if (cfg.subcommand == "compute") return cmd_compute(cfg, out);
    if (cfg.subcommand == "enumerate") return cmd_enumerate(cfg, out);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out);
    if (cfg.subcommand == "weights") return cmd_weights(cfg, out);
  } catch (const BudgetExceeded& e) {
    err << "dwpf: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    err << "dwpf: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "dwpf: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dwpf
