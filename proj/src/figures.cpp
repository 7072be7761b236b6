#include "kitten/figures.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "kitten/analysis.hpp"
#include "kitten/kerr.hpp"
#include "kitten/registry.hpp"

namespace kitten {

namespace {

struct Column {
  std::string label;
  std::string quantity;
  Params overrides;
};

struct FigureDef {
  FigureInfo info;
  std::vector<Axis> axes;
  Params fixed;
  std::vector<Column> columns;
  std::function<void(Table&, const FigureOptions&)> finish;
};

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Axis r_axis(int points) { return {"r", 0.0, 2.0, points}; }
Axis eta_axis() { return {"eta", 0.7, 1.0, 31}; }

// Overlays exp(-lambda sigma^2) fitted on sigma in [0, 0.001] for each alpha.
void add_lambda_fits(Table& table, const FigureOptions& opts) {
  const double r = 0.725;
  for (double alpha : {9.0, 10.0, 11.0}) {
    const auto samples = lambda_fit_samples(SqueezeParam(r), alpha, opts.policy);
    const LambdaFit fit = fit_lambda(samples);
    const std::string tag = "alpha" + format_number(alpha);
    table.metadata.emplace_back("lambda_" + tag, format_number(fit.lambda));
    table.metadata.emplace_back("lambda_stderr_" + tag, format_number(fit.std_error));
    table.metadata.emplace_back("lambda_rms_residual_" + tag, format_number(fit.rms_residual));
    table.columns.push_back("fit_" + tag);
    for (auto& row : table.rows) row.push_back(std::exp(-fit.lambda * row[0] * row[0]));
  }
  if (opts.seed) {
    constexpr int kSamples = 4000;
    table.columns.push_back("R_alpha10_monte_carlo");
    table.metadata.emplace_back("monte_carlo_seed", std::to_string(*opts.seed));
    table.metadata.emplace_back("monte_carlo_samples", std::to_string(kSamples));
    for (auto& row : table.rows)
      row.push_back(monte_carlo_averaged_ratio(SqueezeParam(r), 10.0, row[0], kSamples, *opts.seed,
                                               opts.policy));
  }
}

std::vector<FigureDef> definitions(const FigureOptions& o) {
  const double eta = o.eta.value_or(0.9);
  const double alpha = o.alpha.value_or(10.0);
  std::vector<FigureDef> f;

  f.push_back({{"fig2", "P(1,n;r), P(1,n;r;-), P(1,n;r;+) at r=0.725"},
               {{"n", 0.0, 12.0, 13}},
               {{"r", 0.725}},
               {{"P(1,n;r)", "p1n_squeezed", {}},
                {"P(1,n;r;-)", "p1n_cat_minus", {}},
                {"P(1,n;r;+)", "p1n_cat_plus", {}}},
               {}});
  f.push_back({{"fig3a", "heralded single-photon probability N_-(r)P(1,1;r;-)/4"},
               {r_axis(201)},
               {},
               {{"N-P(1,1;r;-)/4", "emission_cat_minus", {}}},
               {}});
  f.push_back({{"fig3b", "conditional probabilities and P(1,1) for |r;-> and |r>"},
               {r_axis(201)},
               {},
               {{"P_c(r;-)", "pc_cat_minus", {}},
                {"P_c(r)", "pc_squeezed", {}},
                {"P(1,1;r;-)", "p11_cat_minus", {}},
                {"P(1,1;r)", "p11_squeezed", {}}},
               {}});
  f.push_back({{"fig4a", "generation probability P_0 over (tau, r)"},
               {{"tau", 0.0, kTwoPi, 73}, {"r", 0.0, 2.0, 41}},
               {{"alpha", alpha}},
               {{"P_0", "p0", {}}},
               {}});
  f.push_back({{"fig4b", "heralded single-photon probability P_1 over (tau, r)"},
               {{"tau", 0.0, kTwoPi, 73}, {"r", 0.0, 2.0, 41}},
               {{"alpha", alpha}},
               {{"P_1", "p1", {}}},
               {}});
  f.push_back({{"fig5a", "Gaussian-averaged ratio R(r,alpha,sigma) at r=0.725 with exp(-lambda sigma^2) fits"},
               {{"sigma", 0.0, 0.004, 41}},
               {{"r", 0.725}},
               {{"R_alpha9", "ratio_sigma", {{"alpha", 9.0}}},
                {"R_alpha10", "ratio_sigma", {{"alpha", 10.0}}},
                {"R_alpha11", "ratio_sigma", {{"alpha", 11.0}}}},
               add_lambda_fits});
  f.push_back({{"fig5b", "Gaussian-averaged ratio R(r,alpha,sigma) over (r, sigma)"},
               {r_axis(41), {"sigma", 0.0, 0.004, 41}},
               {{"alpha", alpha}},
               {{"R", "ratio_sigma", {}}},
               {}});
  f.push_back({{"fig6a", "click-and-single-photon probabilities versus r"},
               {r_axis(201)},
               {{"eta", eta}},
               {{"P_click,1(r,eta;-)", "pclick1_cat_minus", {}},
                {"tilde P_click,1(r,eta)", "pclick1_tmss", {}},
                {"N-P_click,1(r,eta;-)/4", "emission_click_cat_minus", {}}},
               {}});
  f.push_back({{"fig6b", "click-conditioned single-photon probabilities versus r"},
               {r_axis(201)},
               {{"eta", eta}},
               {{"P_click,c(r,eta;-)", "pclickc_cat_minus", {}},
                {"tilde P_click,c(r,eta)", "pclickc_tmss", {}}},
               {}});
  f.push_back({{"fig7a", "click-and-single-photon probabilities over (r, eta)"},
               {r_axis(41), eta_axis()},
               {},
               {{"P_click,1(r,eta;-)", "pclick1_cat_minus", {}},
                {"tilde P_click,1(r,eta)", "pclick1_tmss", {}},
                {"N-P_click,1(r,eta;-)/4", "emission_click_cat_minus", {}}},
               {}});
  f.push_back({{"fig7b", "click-conditioned single-photon probabilities over (r, eta)"},
               {r_axis(41), eta_axis()},
               {},
               {{"P_click,c(r,eta;-)", "pclickc_cat_minus", {}},
                {"tilde P_click,c(r,eta)", "pclickc_tmss", {}}},
               {}});
  f.push_back({{"fig8", "P(1,1;r;-), tilde P(1,1;r) and N_-(r)P(1,1;r;-)/4"},
               {r_axis(201)},
               {},
               {{"P(1,1;r;-)", "p11_cat_minus", {}},
                {"tilde P(1,1;r)", "p11_tmss", {}},
                {"N-P(1,1;r;-)/4", "emission_cat_minus", {}}},
               {}});
  f.push_back({{"fig9a", "heralded g2(0) versus r"},
               {r_axis(201)},
               {{"eta", eta}},
               {{"g2_cat_minus", "g2_cat_minus", {}}, {"g2_tmss", "g2_tmss", {}}},
               {}});
  f.push_back({{"fig9b", "heralded g2(0) over (r, eta)"},
               {r_axis(41), eta_axis()},
               {},
               {{"g2_cat_minus", "g2_cat_minus", {}}, {"g2_tmss", "g2_tmss", {}}},
               {}});
  return f;
}

}  // namespace

const std::vector<FigureInfo>& figure_list() {
  static const std::vector<FigureInfo> list = [] {
    std::vector<FigureInfo> out;
    for (const auto& d : definitions({})) out.push_back(d.info);
    return out;
  }();
  return list;
}

void add_run_metadata(Table& table, const TruncationPolicy& policy) {
  table.metadata.emplace_back("version", std::string("kitten ") + kVersion);
  table.metadata.emplace_back("tail_tol", format_number(policy.tail_tol));
  table.metadata.emplace_back("dim", policy.fixed_dim ? std::to_string(*policy.fixed_dim)
                                                      : std::string("auto"));
  table.metadata.emplace_back("convergence_check", "recompute at 1.5x dim, |delta| < " +
                                                       format_number(kConvergenceTol));
}

Table make_figure(const std::string& selector, const FigureOptions& options) {
  const auto defs = definitions(options);
  const FigureDef* def = nullptr;
  for (const auto& d : defs)
    if (d.info.selector == selector) def = &d;
  if (!def) {
    std::string msg = "unknown figure '" + selector + "'; available:";
    for (const auto& d : defs) msg += " " + d.info.selector;
    throw UsageError(msg);
  }

  Table table;
  table.metadata.emplace_back("figure", def->info.selector);
  table.metadata.emplace_back("description", def->info.description);
  add_run_metadata(table, options.policy);
  for (const auto& [k, v] : def->fixed) table.metadata.emplace_back(k, format_number(v));

  for (const auto& a : def->axes) table.columns.push_back(a.name);
  bool first = true;
  for (const auto& col : def->columns) {
    SweepSpec spec{def->axes, def->fixed};
    for (const auto& [k, v] : col.overrides) spec.fixed[k] = v;
    const SweepResult res = sweep(spec, find_quantity(col.quantity), options.policy);
    table.columns.push_back(col.label);
    if (first) {
      for (const auto& row : res.rows) table.rows.push_back(row.inputs);
      first = false;
    }
    for (std::size_t i = 0; i < res.rows.size(); ++i) table.rows[i].push_back(res.rows[i].value);
  }
  if (def->finish) def->finish(table, options);
  return table;
}

}  // namespace kitten
