#include "kitten/acceptance.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "kitten/analysis.hpp"
#include "kitten/detect.hpp"
#include "kitten/kerr.hpp"
#include "kitten/optics.hpp"
#include "kitten/oracles.hpp"
#include "kitten/registry.hpp"
#include "kitten/sources.hpp"
#include "kitten/table.hpp"

namespace kitten {

namespace {

class Check {
 public:
  void near(const std::string& what, double measured, double expected, double tol) {
    record(std::abs(measured - expected) <= tol, what + "=" + num(measured) + " (expect " +
                                                      num(expected) + " +- " + num(tol) + ")");
  }
  void within(const std::string& what, double measured, double lo, double hi) {
    record(measured > lo && measured < hi,
           what + "=" + num(measured) + " (expect in (" + num(lo) + ", " + num(hi) + "))");
  }
  void below(const std::string& what, double measured, double bound) {
    record(measured <= bound, what + "=" + num(measured) + " (expect <= " + num(bound) + ")");
  }
  void holds(bool ok, const std::string& what) { record(ok, what); }

  bool ok() const { return ok_; }
  std::string detail() const { return detail_.str(); }

 private:
  static std::string num(double x) {
    std::ostringstream os;
    os.precision(7);
    os << x;
    return os.str();
  }
  void record(bool ok, const std::string& text) {
    if (!first_) detail_ << "; ";
    first_ = false;
    detail_ << (ok ? "" : "FAILED ") << text;
    ok_ = ok_ && ok;
  }

  std::ostringstream detail_;
  bool ok_ = true;
  bool first_ = true;
};

struct Criterion {
  int id;
  std::string title;
  std::function<void(Check&, const TruncationPolicy&)> body;
};

double value(const std::string& quantity, const Params& params, const TruncationPolicy& policy) {
  return evaluate_converged(find_quantity(quantity), params, policy);
}

std::vector<double> grid(double lo, double hi, int points) {
  return Axis{"x", lo, hi, points}.values();
}

void cat_norms(Check& c, const TruncationPolicy&) {
  const SqueezeParam r(0.725);
  c.near("N+(0.725)/4", heralding_success_probability(r, CatSign::plus), 0.833, 5e-4);
  c.near("N-(0.725)/4", heralding_success_probability(r, CatSign::minus), 0.167, 5e-4);
}

void fig2_row(Check& c, const TruncationPolicy& pol) {
  const Params r{{"r", 0.725}};
  auto at = [&](const char* q, int n) {
    Params p = r;
    p["n"] = n;
    return value(q, p, pol);
  };
  c.near("P(1,1;-)", at("p1n_cat_minus", 1), 0.453, 5e-4);
  c.near("P(1,5;-)", at("p1n_cat_minus", 5), 7.85e-3, 5e-5);
  for (int n : {0, 2, 3, 4}) c.below("P(1," + std::to_string(n) + ";-)", at("p1n_cat_minus", n), 1e-12);
  c.near("P(1,1;r)", at("p1n_squeezed", 1), 7.54e-2, 5e-5);
}

void conditionals(Check& c, const TruncationPolicy& pol) {
  c.near("P_c(0.725;-)", value("pc_cat_minus", {{"r", 0.725}}, pol), 0.983, 5e-4);
  c.near("P_c(0.725)", value("pc_squeezed", {{"r", 0.725}}, pol), 0.859, 5e-4);
  c.near("P_c(1.146;-)", value("pc_cat_minus", {{"r", 1.146}}, pol), 0.9488, 5e-4);
}

void maximization(Check& c, const TruncationPolicy& pol) {
  const Quantity& q = find_quantity("emission_cat_minus");
  const MaxResult m = maximize_1d([&](double r) { return q.eval({{"r", r}}, pol); }, 0.0, 2.0, 1e-4);
  c.near("argmax", m.argmax, 1.146, 1e-3);
  c.near("max", m.max, 0.09623, 1e-4);
  c.holds(!m.unimodality_warning, "unimodal on 201-point grid");
  c.near("converged value at argmax", value("emission_cat_minus", {{"r", m.argmax}}, pol), m.max, 1e-8);
}

void tmss(Check& c, const TruncationPolicy& pol) {
  const Quantity& q = find_quantity("p11_tmss");
  const MaxResult m = maximize_1d([&](double r) { return q.eval({{"r", r}}, pol); }, 0.0, 2.0, 1e-4);
  c.near("argmax", m.argmax, 0.881, 1e-3);
  c.near("max", m.max, 0.25, 1e-6);
  double off = 0.0;
  for (double r : {0.1, 0.5, 0.881, 1.5, 2.0}) {
    const JointDistribution d = tmss_joint_probability(SqueezeParam(r), pol.for_tmss(r));
    for (int n = 0; n < d.dim(); ++n)
      if (n != 1) off = std::max(off, d(1, n));
  }
  c.below("max_{n!=1} P~(1,n)", off, 1e-12);
}

void intro_benchmark(Check& c, const TruncationPolicy&) {
  c.near("P~_click,1(0.5,0.9)", tmss_click_statistics(SqueezeParam(0.5), DetectorModel(0.9)).p_click_1,
         0.151, 5e-4);
}

void lambda_fits(Check& c, const TruncationPolicy& pol) {
  const std::pair<double, double> cases[] = {{9.0, 3401.0}, {10.0, 5102.0}, {11.0, 7360.0}};
  for (const auto& [alpha, expected] : cases) {
    const LambdaFit fit = fit_lambda(lambda_fit_samples(SqueezeParam(0.725), alpha, pol));
    c.near("lambda(alpha=" + format_number(alpha) + ")", fit.lambda, expected, 0.01 * expected);
  }
}

void small_r_clicks(Check& c, const TruncationPolicy& pol) {
  const Params p{{"r", 0.01}, {"eta", 0.9}};
  c.near("P_click,c(0.01;-)", value("pclickc_cat_minus", p, pol), 0.9524, 1e-3);
  c.within("P_click,1(0.01;-)", value("pclick1_cat_minus", p, pol), 0.44, 0.46);
  c.below("P~_click,1(0.01)", value("pclick1_tmss", p, pol), 1e-3);
}

void g2_oracles(Check& c, const TruncationPolicy& pol) {
  double worst = 0.0;
  for (double r : grid(0.05, 2.0, 40))
    for (double eta : {0.7, 0.8, 0.9, 0.95, 1.0}) {
      const DetectorModel det(eta);
      worst = std::max(worst, std::abs(g2_tmss_numeric(SqueezeParam(r), det, pol) -
                                       g2_tmss_analytic(SqueezeParam(r), det)));
    }
  c.below("max |g2 numeric - closed form|", worst, 1e-8);
  double at_unity = 0.0;
  for (double r : grid(0.0, 2.0, 41)) {
    at_unity = std::max(at_unity, std::abs(g2_tmss_analytic(SqueezeParam(r), DetectorModel(1.0))));
    if (r > 0.0)
      at_unity = std::max(at_unity, std::abs(g2_tmss_numeric(SqueezeParam(r), DetectorModel(1.0), pol)));
  }
  c.below("max |g2 tmss(eta=1)|", at_unity, 1e-10);
  c.near("g2 tmss(r=0, eta=0.9)", g2_tmss_analytic(SqueezeParam(0.0), DetectorModel(0.9)), 0.2222, 1e-4);
  c.near("g2 tmss(r=1e-3, eta=0.9)", g2_tmss_numeric(SqueezeParam(1e-3), DetectorModel(0.9), pol), 0.2222,
         1e-4);
}

void crossover(Check& c, const TruncationPolicy& pol) {
  const auto r = quality_crossover(DetectorModel(0.9), pol);
  c.holds(r.has_value(), "crossing found for eta=0.9");
  if (r) c.near("crossover(eta=0.9)", *r, 0.504, 5e-3);
}

void properties(Check& c, const TruncationPolicy& pol) {
  // Parity selection rules of the split superpositions.
  double parity = 0.0;
  for (double r : {0.3, 0.725, 1.5})
    for (CatSign s : {CatSign::minus, CatSign::plus}) {
      const JointDistribution d = cat_joint_distribution(SqueezeParam(r), s, pol);
      const int allowed = s == CatSign::minus ? 2 : 0;
      for (int a = 0; a < d.dim(); ++a)
        for (int b = 0; b < d.dim(); ++b)
          if ((a + b) % 4 != allowed) parity = std::max(parity, d(a, b));
    }
  c.below("parity-forbidden mass", parity, 1e-14);

  // Photon-number conservation block by block.
  double blocks = 0.0;
  for (double r : {0.725, 1.2}) {
    const SingleModeState in = squeezed_cat(SqueezeParam(r), CatSign::minus, pol.for_squeezing(r));
    const JointDistribution d = joint_probability(split(in));
    for (int n = 0; n < in.dim(); ++n) {
      double mass = 0.0;
      for (int k = 0; k <= n; ++k) mass += d(k, n - k);
      blocks = std::max(blocks, std::abs(mass - std::norm(in[n])));
    }
  }
  c.below("block mass change", blocks, 1e-14);

  // Direct beam splitter vs the two-mode squeezer decomposition.
  double paths = 0.0;
  const Truncation oracle_trunc(48, 1e-6);
  for (double r : {0.3, 0.725}) {
    const SqueezeParam sr(r);
    const std::pair<std::optional<CatSign>, JointDistribution> cases[] = {
        {std::nullopt, squeezed_joint_distribution(sr, pol)},
        {CatSign::minus, cat_joint_distribution(sr, CatSign::minus, pol)},
        {CatSign::plus, cat_joint_distribution(sr, CatSign::plus, pol)}};
    for (const auto& [sign, direct] : cases) {
      const JointDistribution dec = oracle::decomposition_joint_distribution(sr, sign, oracle_trunc);
      for (int a = 0; a <= 12; ++a)
        for (int b = 0; a + b <= 12; ++b) paths = std::max(paths, std::abs(dec(a, b) - direct(a, b)));
    }
  }
  c.below("direct vs decomposition", paths, 1e-8);

  // Truncation convergence (each value re-evaluated at 1.5x dim).
  int converged = 0;
  for (double r : grid(0.05, 2.0, 14))
    for (const char* q : {"p11_cat_minus", "pc_cat_minus", "pc_squeezed", "pclickc_cat_minus",
                          "pclick_cat_minus", "g2_cat_minus", "p11_tmss"}) {
      value(q, {{"r", r}, {"eta", 0.9}}, pol);
      ++converged;
    }
  c.holds(true, std::to_string(converged) + " values stable under 1.5x dim");

  // Dominance of the odd superposition on the ideal-detector quantities.
  bool dominance = true;
  bool ordering = true;
  for (double r : grid(0.01, 2.0, 200)) {
    const SqueezeParam sr(r);
    const JointDistribution cat = cat_joint_distribution(sr, CatSign::minus, pol);
    const JointDistribution sq = squeezed_joint_distribution(sr, pol);
    const JointDistribution tm = tmss_joint_probability(sr, pol.for_tmss(r));
    dominance = dominance && cat(1, 1) > tm(1, 1);
    ordering = ordering && conditional_single_photon(cat) >= conditional_single_photon(sq);
  }
  c.holds(dominance, "P(1,1;r;-) > P~(1,1;r) on r in (0,2]");
  c.holds(ordering, "P_c(r;-) >= P_c(r) on r in (0,2]");

  // Click orderings on the (r, eta) grid, and the monotone decay at eta = 0.9.
  bool click1 = true;
  bool clickc = true;
  for (double r : grid(0.05, 2.0, 40))
    for (double eta : grid(0.7, 0.98, 8)) {
      const DetectorModel det(eta);
      const HeraldedStatistics cat =
          click_statistics(cat_joint_distribution(SqueezeParam(r), CatSign::minus, pol), det);
      const HeraldedStatistics tm = tmss_click_statistics(SqueezeParam(r), det);
      click1 = click1 && cat.p_click_1 > tm.p_click_1;
      clickc = clickc && cat.p_click_c < tm.p_click_c;
    }
  c.holds(click1, "P_click,1(-) > P~_click,1 on the (r, eta) grid");
  c.holds(clickc, "P_click,c(-) < P~_click,c on the (r, eta) grid");
  bool monotone = true;
  double prev = 2.0;
  for (double r : grid(0.05, 2.0, 80)) {
    const double v = value("pclickc_cat_minus", {{"r", r}, {"eta", 0.9}}, pol);
    monotone = monotone && v <= prev + 1e-9;
    prev = v;
  }
  c.holds(monotone, "P_click,c(r,0.9;-) nonincreasing on [0.05, 2]");
}

void spdc_floor(Check& c, const TruncationPolicy& pol) {
  std::vector<double> rs = grid(0.004, 0.006, 21);
  for (double r : grid(0.004, 2.0, 200)) rs.push_back(r);
  double cat_min = 1.0;
  double tmss_min = 1.0;
  double cat_arg = 0.0;
  for (double r : rs) {
    const double cat = value("emission_cat_minus", {{"r", r}}, pol);
    const double tm = value("p11_tmss", {{"r", r}}, pol);
    if (cat < cat_min) {
      cat_min = cat;
      cat_arg = r;
    }
    tmss_min = std::min(tmss_min, tm);
  }
  c.holds(cat_min > 4e-6, "min N-P(1,1;-)/4 over r >= 0.004 is " + format_number(cat_min) + " at r=" +
                              format_number(cat_arg) + " (expect > 4e-6)");
  c.holds(tmss_min > 4e-6, "min P~(1,1) over r >= 0.004 is " + format_number(tmss_min) + " (expect > 4e-6)");
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "cat norms at r=0.725", cat_norms},
      {2, "P(1,n) row at r=0.725", fig2_row},
      {3, "conditional single-photon probabilities", conditionals},
      {4, "maximum of N-(r)P(1,1;r;-)/4", maximization},
      {5, "two-mode squeezed vacuum P~(1,1;r)", tmss},
      {6, "click benchmark P~_click,1(0.5, 0.9)", intro_benchmark},
      {7, "exp(-lambda sigma^2) fits", lambda_fits},
      {8, "small-r click limits at eta=0.9", small_r_clicks},
      {9, "g2 oracles", g2_oracles},
      {10, "g2 quality crossover at eta=0.9", crossover},
      {11, "property suites", properties},
      {12, "emission floor 4e-6 for r >= 0.004", spdc_floor},
  };
  return list;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const TruncationPolicy& policy) {
  std::vector<CriterionResult> out;
  for (const auto& crit : criteria()) {
    Check check;
    CriterionResult res{crit.id, crit.title, false, {}};
    try {
      crit.body(check, policy);
      res.passed = check.ok();
      res.detail = check.detail();
    } catch (const std::exception& e) {
      res.passed = false;
      const std::string partial = check.detail();
      res.detail = (partial.empty() ? "" : partial + "; ") + "error: " + e.what();
    }
    out.push_back(std::move(res));
  }
  return out;
}

void print_results(const std::vector<CriterionResult>& results, std::ostream& os) {
  int passed = 0;
  for (const auto& r : results) {
    os << (r.passed ? "[PASS] " : "[FAIL] ") << "#" << r.id << " " << r.title << ": " << r.detail << '\n';
    passed += r.passed ? 1 : 0;
  }
  os << passed << "/" << results.size() << " criteria passed\n";
}

}  // namespace kitten
