#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hmp/exact_core.hpp"
#include "hmp/moment_ops.hpp"
#include "hmp/range_diagnostics.hpp"
#include "hmp/stability_lab.hpp"

namespace hmp::cli {

namespace {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename Scalar>
TestFunction<Scalar> named_function(const std::string& name, const std::string& poly) {
  if (name == "peaked") return peaked_profile<Scalar>();
  if (name == "abs") return abs_kink<Scalar>();
  if (name == "cubic_exp") return cubic_exp<Scalar>();
  if (!name.empty()) throw ConfigError("unknown function '" + name + "' (peaked, abs, cubic_exp)");
  const std::vector<double> c = parse_polynomial(poly);
  return polynomial<Scalar>(std::vector<Scalar>(c.begin(), c.end()), poly);
}

PowerIterationOptions power_opts(const ExperimentConfig& cfg) {
  PowerIterationOptions o;
  o.precision_bits = cfg.precision_bits;
  return o;
}

RunOutput run_hilbert(const ExperimentConfig& cfg) {
  if (!cfg.norms.empty()) {
    RunOutput r{Table("hilbert", {"n", "lambda_max", "ln_lambda_over_n"}), {{"ln_rate", "n", "ln_lambda_over_n"}}};
    for (long n : cfg.norms) {
      const BigFloat lam = spectral_norm(inverse_hilbert(n), power_opts(cfg)).value;
      r.table.add_row({static_cast<long long>(n), lam.to_double(), log(lam).to_double() / static_cast<double>(n)});
    }
    return r;
  }
  const RationalMatrix m = cfg.inverse ? inverse_hilbert(cfg.n) : hilbert_matrix(cfg.n);
  RunOutput r{Table("hilbert", {"i", "j", "value", "approx"}), {}};
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      r.table.add_row({static_cast<long long>(i + 1), static_cast<long long>(j + 1), m(i, j).str(), m(i, j).to_double()});
  return r;
}

RunOutput run_linv(const ExperimentConfig& cfg) {
  const FactoredTriangular f = inverse_factor_Linv(cfg.n);
  RunOutput r{Table("linv", {"i", "j", "rational_part", "weight", "value"}), {}};
  for (Index i = 0; i < f.size(); ++i)
    for (Index j = 0; j <= i; ++j)
      r.table.add_row({static_cast<long long>(i + 1), static_cast<long long>(j + 1), f.rational_part(i, j).str(),
                       static_cast<long long>(f.diag_weights[static_cast<std::size_t>(i)]), f.entry(i, j)});
  return r;
}

RunOutput run_reconstruct(const ExperimentConfig& cfg) {
  using LD = long double;
  const TestFunction<LD> f = named_function<LD>(cfg.function, cfg.poly);
  const int n = static_cast<int>(cfg.n);
  const MomentSequence<LD> y = forward_moments(f, n, LD(1e-18));
  const LegendreExpansion<LD> lam = pseudoinverse(y);
  const LegendreExpansion<LD> truth = project<LD>(f.value, n, adapted_rule(f, n + 16, 2));
  const LD proj = projection_error(f, n).error;
  const LD coef = l2_distance(lam, truth);
  RunOutput r{Table("reconstruct", {"n", "function", "l2_error", "projection_error", "coefficient_error"}), {}};
  r.table.add_row({static_cast<long long>(n), f.label, static_cast<double>(std::sqrt(coef * coef + proj * proj)),
                   static_cast<double>(proj), static_cast<double>(coef)});
  return r;
}

RunOutput run_hausdorff(const ExperimentConfig& cfg) {
  const Index len = cfg.n_max + 1;
  RationalVector y;
  if (cfg.data == "one") {
    y = monomial_moments_exact(len, 0);
  } else if (cfg.data == "t") {
    y = monomial_moments_exact(len, 1);
  } else if (cfg.data == "delta") {
    y = RationalVector::Constant(len, Rational(0L));
    y(0) = Rational(1L);
  } else {
    throw ConfigError("unknown data '" + cfg.data + "' (one, t, delta)");
  }
  RunOutput r{Table("hausdorff", {"N", "criterion_value", "picard_partial", "criterion_exact"}),
              {{"criterion", "N", "criterion_value"}, {"picard", "N", "picard_partial"}}};
  for (Index N = 0; N <= cfg.n_max; ++N) {
    const HausdorffStats<Rational> st = hausdorff_criterion(y, N);
    r.table.add_row({static_cast<long long>(N), st.criterion_value.to_double(), st.picard_partial.to_double(),
                     st.criterion_value.str()});
  }
  return r;
}

RunOutput run_amplification(const ExperimentConfig& cfg) {
  const TestFunction<double> f = peaked_profile<double>();
  RunOutput r{Table("amplification", {"n", "f_n", "ln_fn_over_n", "r_squared", "exact_norm"}),
              {{"f_n", "n", "f_n"}, {"ln_fn_over_n", "n", "ln_fn_over_n"}}};
  for (long n : cfg.n_values) {
    const AmplificationEstimate e = amplification_experiment(f, n, cfg.deltas, cfg.realizations, cfg.seed);
    r.table.add_row({static_cast<long long>(n), e.f_n, e.rate, e.r_squared, e.exact_norm});
  }
  return r;
}

RunOutput run_growth(const ExperimentConfig& cfg) {
  RunOutput r{Table("growth", {"i", "norm", "row_max", "diag", "bound"}),
              {{"bound", "i", "bound"}, {"norm", "i", "norm"}, {"row_max", "i", "row_max"}, {"diag", "i", "diag"}}};
  for (const GrowthRow& g : linv_growth_study(cfg.n_max, power_opts(cfg)))
    r.table.add_row({static_cast<long long>(g.i), g.norm, g.row_max, g.diag, g.bound});
  return r;
}

RunOutput run_pointvalue(const ExperimentConfig& cfg) {
  Vec<double> v(cfg.N_max_pv);
  for (Index j = 0; j < cfg.N_max_pv; ++j) v(j) = 1.0 / static_cast<double>(j + 2);  // moments of x = t
  const MomentSequence<double> y(v);
  RunOutput r{Table("pointvalue", {"delta", "best_N", "min_error"}), {{"min_error", "delta", "min_error"}}};
  for (const PointValueRow& row : point_value_noise_study(y, 1.0, cfg.deltas, cfg.N_max_pv))
    r.table.add_row({row.delta, static_cast<long long>(row.best_N), row.min_error});
  return r;
}

RunOutput run_counterexample(const ExperimentConfig& cfg) {
  CounterexampleOptions o;
  o.q_max = cfg.q_max;
  const CounterexampleResult res = holder_counterexample(cfg.mu, cfg.k, cfg.target, o);
  RunOutput r{Table("counterexample", {"q", "r", "m", "ratio", "growth"}), {{"ratio", "q", "ratio"}}};
  for (const CounterexampleStep& s : res.steps)
    r.table.add_row({static_cast<long long>(s.q), s.r, static_cast<long long>(res.m), s.ratio, s.growth});
  return r;
}

RunOutput run_laplace(const ExperimentConfig& cfg) {
  const TestFunction<double> f = cfg.function.empty() ? peaked_profile<double>() : named_function<double>(cfg.function, cfg.poly);
  std::vector<Index> js(cfg.j_list.begin(), cfg.j_list.end());
  RunOutput r{Table("laplace", {"j", "moment", "laplace", "difference", "agrees"}), {}};
  for (const LaplaceRow& row : laplace_consistency(f, js, cfg.tol))
    r.table.add_row({static_cast<long long>(row.j), row.moment, row.laplace, row.difference,
                     static_cast<long long>(row.agrees)});
  return r;
}

RunOutput run_eit(const ExperimentConfig& cfg) {
  std::function<double(double)> sigma;
  if (cfg.sigma == "one") sigma = [](double) { return 1.0; };
  else if (cfg.sigma == "r2") sigma = [](double x) { return x * x; };
  else if (cfg.sigma == "r") sigma = [](double x) { return x; };
  else throw ConfigError("unknown sigma '" + cfg.sigma + "' (one, r2, r)");
  std::vector<Index> modes(cfg.modes.begin(), cfg.modes.end());
  const std::vector<double> v = eit_forward(sigma, modes);
  RunOutput r{Table("eit", {"mode", "value"}), {}};
  for (std::size_t i = 0; i < modes.size(); ++i) r.table.add_row({static_cast<long long>(modes[i]), v[i]});
  return r;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 1 || cfg.n_max < 1) throw ConfigError("sizes must be positive");
  if (cfg.n_values.empty() || cfg.deltas.empty() || cfg.j_list.empty() || cfg.modes.empty())
    throw ConfigError("ranges must be non-empty");
  for (long v : cfg.n_values)
    if (v < 1) throw ConfigError("n values must be positive");
  for (double d : cfg.deltas)
    if (!(d > 0)) throw ConfigError("noise levels must be positive");
  if (cfg.realizations < 1) throw ConfigError("realizations must be positive");
  if (cfg.precision_bits < BigFloat::kMinPrecision) throw ConfigError("precision below 64 bits");
  if (cfg.N_max_pv < 1) throw ConfigError("N-max must be positive");
}

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["n"] = c.n;
  j["n_max"] = c.n_max;
  j["n_values"] = c.n_values;
  j["deltas"] = c.deltas;
  j["realizations"] = c.realizations;
  j["seed"] = c.seed;
  j["precision_bits"] = c.precision_bits;
  j["format"] = c.format == Format::Csv ? "csv" : "json";
  j["out"] = c.out;
  j["plot_data"] = c.plot_data;
  j["plot_dir"] = c.plot_dir;
  j["inverse"] = c.inverse;
  j["norms"] = c.norms;
  j["poly"] = c.poly;
  j["function"] = c.function;
  j["data"] = c.data;
  j["N_max_pointvalue"] = c.N_max_pv;
  j["mu"] = c.mu;
  j["k"] = c.k;
  j["target"] = c.target;
  j["q_max"] = c.q_max;
  j["j_list"] = c.j_list;
  j["tol"] = c.tol;
  j["sigma"] = c.sigma;
  j["modes"] = c.modes;
  return j;
}

}  // namespace

std::vector<long> parse_index_range(const std::string& text) {
  std::vector<long> out;
  try {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
      const long a = std::stol(text.substr(0, dots)), b = std::stol(text.substr(dots + 2));
      if (b < a) throw ConfigError("empty range '" + text + "'");
      for (long v = a; v <= b; ++v) out.push_back(v);
      return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse range '" + text + "'");
  }
  if (out.empty()) throw ConfigError("empty range '" + text + "'");
  return out;
}

std::vector<double> parse_delta_grid(const std::string& text) {
  std::vector<double> out;
  try {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
      const double a = std::stod(text.substr(0, dots)), b = std::stod(text.substr(dots + 2));
      if (!(a > 0 && b > 0)) throw ConfigError("grid endpoints must be positive");
      const double la = std::log10(a), lb = std::log10(b);
      const int steps = static_cast<int>(std::lround(std::abs(lb - la)));
      for (int s = 0; s <= steps; ++s) out.push_back(std::pow(10.0, la + (lb - la) * (steps ? double(s) / steps : 0.0)));
      return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse grid '" + text + "'");
  }
  if (out.empty()) throw ConfigError("empty grid '" + text + "'");
  return out;
}

RunOutput execute(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.command == "hilbert") return run_hilbert(cfg);
  if (cfg.command == "linv") return run_linv(cfg);
  if (cfg.command == "reconstruct") return run_reconstruct(cfg);
  if (cfg.command == "hausdorff") return run_hausdorff(cfg);
  if (cfg.command == "amplification") return run_amplification(cfg);
  if (cfg.command == "growth") return run_growth(cfg);
  if (cfg.command == "pointvalue") return run_pointvalue(cfg);
  if (cfg.command == "counterexample") return run_counterexample(cfg);
  if (cfg.command == "laplace") return run_laplace(cfg);
  if (cfg.command == "eit") return run_eit(cfg);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  CLI::App app{"Hausdorff moment problem: exact kernels, reconstruction and stability experiments"};
  app.set_config("--config", "", "key=value configuration file; flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  std::string format = "csv";
  app.add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
  app.add_option("--precision-bits", cfg.precision_bits, "BigFloat precision")->capture_default_str();
  app.add_option("--out", cfg.out, "Table output path (default stdout)");
  app.add_option("--meta", cfg.meta, "Metadata path (default <out>.meta.json, or stderr)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_flag("--plot-data", cfg.plot_data, "Write <command>_<series>.dat files");
  app.add_option("--plot-dir", cfg.plot_dir, "Directory for plot data")->capture_default_str();

  std::string n_range, delta_grid, j_range, mode_range, norm_range;
  auto* hil = app.add_subcommand("hilbert", "Entries of H_n or H_n^{-1}, or lambda_max rows");
  hil->add_option("--n", cfg.n, "Size")->capture_default_str();
  hil->add_flag("--inverse", cfg.inverse, "Print the exact inverse");
  hil->add_option("--norms", norm_range, "Sizes a..b for lambda_max(H^{-1}) rows");
  auto* lin = app.add_subcommand("linv", "Entries of the inverse Cholesky factor");
  lin->add_option("--n", cfg.n, "Size")->capture_default_str();
  auto* rec = app.add_subcommand("reconstruct", "Pseudoinverse reconstruction error");
  rec->add_option("--n", cfg.n, "Truncation")->capture_default_str();
  rec->add_option("--poly", cfg.poly, "Polynomial in t")->capture_default_str();
  rec->add_option("--function", cfg.function, "Named function instead of --poly: peaked, abs, cubic_exp");
  auto* hau = app.add_subcommand("hausdorff", "Hausdorff criterion and Picard sums (exact)");
  hau->add_option("--N-max", cfg.n_max, "Largest level")->capture_default_str();
  hau->add_option("--data", cfg.data, "one, t or delta")->capture_default_str();
  auto* amp = app.add_subcommand("amplification", "Noise-amplification regression");
  amp->add_option("--n", n_range, "Truncations a..b or list");
  amp->add_option("--deltas", delta_grid, "Noise grid, e.g. 1e-2..1e-7");
  amp->add_option("--R", cfg.realizations, "Realizations")->capture_default_str();
  auto* gro = app.add_subcommand("growth", "Norm, row maxima and diagonal of L_i^{-1}");
  gro->add_option("--n-max", cfg.n_max, "Largest size")->capture_default_str();
  auto* pv = app.add_subcommand("pointvalue", "Point value at t=1 under worst-case noise");
  pv->add_option("--N-max", cfg.N_max_pv, "Largest averaging length")->capture_default_str();
  pv->add_option("--deltas", delta_grid, "Noise grid");
  auto* ce = app.add_subcommand("counterexample", "Scaled bump counterexample to Hoelder stability");
  ce->add_option("--mu", cfg.mu, "Exponent in (0,1)")->capture_default_str();
  ce->add_option("--k", cfg.k, "Sobolev order")->capture_default_str();
  ce->add_option("--C", cfg.target, "Target ratio")->capture_default_str();
  ce->add_option("--q-max", cfg.q_max, "Largest halving count")->capture_default_str();
  auto* lap = app.add_subcommand("laplace", "Moments against Laplace samples");
  lap->add_option("--j", j_range, "Orders a..b or list");
  lap->add_option("--tol", cfg.tol, "Agreement tolerance")->capture_default_str();
  lap->add_option("--function", cfg.function, "peaked (default), abs, cubic_exp");
  auto* eit = app.add_subcommand("eit", "Linearised radial EIT forward map");
  eit->add_option("--sigma", cfg.sigma, "one, r2 or r")->capture_default_str();
  eit->add_option("--modes", mode_range, "Modes a..b or list");

  const auto start = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  RunOutput result;
  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.format = format == "json" ? Format::Json : Format::Csv;
    if (!n_range.empty()) cfg.n_values = parse_index_range(n_range);
    if (!delta_grid.empty()) cfg.deltas = parse_delta_grid(delta_grid);
    if (!j_range.empty()) cfg.j_list = parse_index_range(j_range);
    if (!mode_range.empty()) cfg.modes = parse_index_range(mode_range);
    if (!norm_range.empty()) cfg.norms = parse_index_range(norm_range);
    if (cfg.command == "pointvalue" && delta_grid.empty()) cfg.deltas = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    result = execute(cfg);
  } catch (const ConvergenceError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 2;
  } catch (const QuadratureError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 2;
  }

  try {
    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out.empty()) {
      file.open(cfg.out, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open " + cfg.out);
      sink = &file;
    }
    if (cfg.format == Format::Csv) write_csv(result.table, *sink);
    else write_json(result.table, *sink);

    std::vector<std::string> plot_files;
    if (cfg.plot_data && !result.series.empty())
      for (const auto& p : emit_plotdata(result.table, result.series, cfg.plot_dir)) plot_files.push_back(p.string());

    nlohmann::ordered_json meta;
    meta["config"] = config_json(cfg);
    meta["library_version"] = HMP_VERSION;
    meta["rows"] = result.table.rows.size();
    meta["plot_files"] = plot_files;
    meta["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string meta_path = !cfg.meta.empty() ? cfg.meta : (cfg.out.empty() ? "" : cfg.out + ".meta.json");
    if (meta_path.empty()) {
      err << meta.dump() << '\n';
    } else {
      std::ofstream m(meta_path, std::ios::binary);
      if (!m) throw std::runtime_error("cannot open " + meta_path);
      m << meta.dump(2) << '\n';
    }
  } catch (const std::exception& e) {
    err << "output failure: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace hmp::cli
