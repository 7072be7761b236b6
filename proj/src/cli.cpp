#include "kitten/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>

#include "kitten/acceptance.hpp"
#include "kitten/analysis.hpp"
#include "kitten/detect.hpp"
#include "kitten/errors.hpp"
#include "kitten/figures.hpp"
#include "kitten/registry.hpp"
#include "kitten/table.hpp"

namespace kitten {

namespace {

struct RunConfig {
  std::string format = "csv";
  std::string out_path;
  std::optional<int> dim;
  std::optional<double> tail_tol;
  std::optional<double> eta;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  std::string figure;
  bool list = false;

  TruncationPolicy policy() const {
    TruncationPolicy p;
    if (tail_tol) p.tail_tol = *tail_tol;
    p.fixed_dim = dim;
    return p;
  }
};

struct SweepFlags {
  std::string quantity;
  std::string var;
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;
  std::string var2;
  double lo2 = 0.0;
  double hi2 = 0.0;
  int points2 = 0;
  std::vector<std::string> params;
};

void emit(const Table& table, const RunConfig& cfg, std::ostream& out) {
  const TableFormat fmt = parse_format(cfg.format);
  if (cfg.out_path.empty()) {
    write_table(table, fmt, out);
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + cfg.out_path + "' for writing");
  write_table(table, fmt, file);
  if (!file) throw UsageError("failed writing '" + cfg.out_path + "'");
}

void print_list(std::ostream& out) {
  out << "figures:\n";
  for (const auto& f : figure_list()) out << "  " << f.selector << "  " << f.description << '\n';
  out << "quantities:\n";
  for (const auto& q : quantity_registry()) {
    out << "  " << q.name << "(";
    for (std::size_t i = 0; i < q.parameters.size(); ++i) out << (i ? ", " : "") << q.parameters[i];
    out << ")  " << q.description << '\n';
  }
}

FigureOptions figure_options(const RunConfig& cfg) {
  FigureOptions o;
  o.policy = cfg.policy();
  o.eta = cfg.eta;
  o.alpha = cfg.alpha;
  o.seed = cfg.seed;
  return o;
}

int cmd_figure(const RunConfig& cfg, std::ostream& out) {
  if (cfg.figure.empty()) throw UsageError("figure: no selector given (see --list)");
  emit(make_figure(cfg.figure, figure_options(cfg)), cfg, out);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const TruncationPolicy policy = cfg.policy();
  const auto results = run_acceptance(policy);
  print_results(results, out);
  bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  if (cfg.eta) {
    try {
      const auto r = quality_crossover(DetectorModel(*cfg.eta), policy);
      out << "crossover(eta=" << format_number(*cfg.eta) << "): "
          << (r ? format_number(*r) : std::string("none on (0, 2]")) << '\n';
    } catch (const Error& e) {
      out << "crossover(eta=" << format_number(*cfg.eta) << "): error: " << e.what() << '\n';
      ok = false;
    }
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

Params parse_params(const std::vector<std::string>& items) {
  Params p;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + item + "'");
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw UsageError("--param '" + item + "': bad number");
    p[item.substr(0, eq)] = v;
  }
  return p;
}

int cmd_sweep(const RunConfig& cfg, const SweepFlags& f, std::ostream& out) {
  const Quantity& q = find_quantity(f.quantity);
  SweepSpec spec;
  spec.axes.push_back({f.var, f.lo, f.hi, f.points});
  if (!f.var2.empty()) spec.axes.push_back({f.var2, f.lo2, f.hi2, f.points2});
  if (cfg.eta) spec.fixed["eta"] = *cfg.eta;
  if (cfg.alpha) spec.fixed["alpha"] = *cfg.alpha;
  for (const auto& [k, v] : parse_params(f.params)) spec.fixed[k] = v;
  for (const auto& a : spec.axes)
    if (std::find(q.parameters.begin(), q.parameters.end(), a.name) == q.parameters.end())
      throw UsageError("sweep: '" + q.name + "' has no parameter '" + a.name + "'");

  const SweepResult res = sweep(spec, q, cfg.policy());
  Table t;
  t.metadata.emplace_back("quantity", q.name);
  t.metadata.emplace_back("description", q.description);
  for (const auto& [k, v] : spec.fixed)
    if (std::find(q.parameters.begin(), q.parameters.end(), k) != q.parameters.end())
      t.metadata.emplace_back(k, format_number(v));
  add_run_metadata(t, cfg.policy());
  t.columns = res.input_names;
  t.columns.push_back(q.name);
  for (const auto& row : res.rows) {
    std::vector<double> r = row.inputs;
    r.push_back(row.value);
    t.rows.push_back(std::move(r));
  }
  emit(t, cfg, out);
  return kExitOk;
}

bool is_selector(const std::string& s) {
  const auto& figs = figure_list();
  return std::any_of(figs.begin(), figs.end(), [&](const auto& f) { return f.selector == s; });
}

}  // namespace

int run_cli(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = args_in;
  // `kitten fig2 ...` is shorthand for `kitten figure fig2 ...`.
  if (!args.empty() && is_selector(args.front())) args.insert(args.begin(), "figure");

  RunConfig cfg;
  SweepFlags sw;
  CLI::App app{"Photon-pair statistics of split squeezed cat states", "kitten"};
  app.set_version_flag("--version", std::string(kVersion));
  app.add_option("--format", cfg.format, "Table format: csv or json")->capture_default_str();
  app.add_option("--out", cfg.out_path, "Write the table to this file instead of stdout");
  app.add_option("--dim", cfg.dim, "Force this Fock cutoff per mode")->check(CLI::Range(2, 100000));
  app.add_option("--tail-tol", cfg.tail_tol, "Probability mass the cutoff may drop")
      ->check(CLI::Range(1e-300, 1e-2));
  app.add_option("--eta", cfg.eta, "Detector efficiency")->check(CLI::Range(0.0, 1.0));
  app.add_option("--alpha", cfg.alpha, "Probe coherent amplitude");
  app.add_option("--seed", cfg.seed, "Seed for Monte Carlo columns");
  app.add_option("--figure", cfg.figure, "Figure selector (same as the figure subcommand)");
  app.add_flag("--list", cfg.list, "List figure selectors and registered quantities");

  auto* fig = app.add_subcommand("figure", "Write the data table behind one figure");
  fig->add_option("selector", cfg.figure, "Figure selector, e.g. fig2");
  fig->fallthrough();

  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->fallthrough();

  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a registered quantity on a grid");
  sweep_cmd->add_option("--quantity", sw.quantity, "Registered quantity name")->required();
  sweep_cmd->add_option("--var", sw.var, "First axis parameter")->required();
  sweep_cmd->add_option("--lo", sw.lo, "First axis lower bound")->required();
  sweep_cmd->add_option("--hi", sw.hi, "First axis upper bound")->required();
  sweep_cmd->add_option("--points", sw.points, "First axis point count")->required();
  sweep_cmd->add_option("--var2", sw.var2, "Second axis parameter");
  sweep_cmd->add_option("--lo2", sw.lo2, "Second axis lower bound");
  sweep_cmd->add_option("--hi2", sw.hi2, "Second axis upper bound");
  sweep_cmd->add_option("--points2", sw.points2, "Second axis point count");
  sweep_cmd->add_option("--param", sw.params, "Fixed parameter key=value (repeatable)");
  sweep_cmd->fallthrough();
  app.require_subcommand(0, 1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    parse_format(cfg.format);
    if (cfg.list) {
      print_list(out);
      return kExitOk;
    }
    if (*verify) return cmd_verify(cfg, out);
    if (*sweep_cmd) return cmd_sweep(cfg, sw, out);
    if (*fig || !cfg.figure.empty()) return cmd_figure(cfg, out);
    err << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace kitten
