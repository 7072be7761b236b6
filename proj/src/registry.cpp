#include "kitten/registry.hpp"

#include <algorithm>
#include <cmath>

#include "kitten/detect.hpp"
#include "kitten/kerr.hpp"
#include "kitten/optics.hpp"
#include "kitten/sources.hpp"

namespace kitten {

namespace {

double param(const Params& p, const char* key) { return p.at(key); }

int level(const Params& p, const char* key) {
  const double v = p.at(key);
  const double rounded = std::round(v);
  if (rounded < 0.0 || std::abs(v - rounded) > 1e-9)
    throw UsageError(std::string("parameter '") + key + "' must be a photon number");
  return static_cast<int>(rounded);
}

SqueezeParam squeeze(const Params& p) { return SqueezeParam(param(p, "r")); }
DetectorModel detector(const Params& p) { return DetectorModel(param(p, "eta")); }

double row_entry(const JointDistribution& d, int n) { return n < d.dim() ? d(1, n) : 0.0; }

using Eval = std::function<double(const Params&, const TruncationPolicy&)>;

Quantity make(std::string name, std::string description, std::vector<std::string> params,
              bool truncation_sensitive, Eval eval) {
  return Quantity{std::move(name), std::move(description), std::move(params), truncation_sensitive,
                  std::move(eval)};
}

std::vector<Quantity> build() {
  std::vector<Quantity> q;

  q.push_back(make("cat_norm_plus", "N_+(r)/4", {"r"}, false, [](const Params& p, const auto&) {
    return heralding_success_probability(squeeze(p), CatSign::plus);
  }));
  q.push_back(make("cat_norm_minus", "N_-(r)/4", {"r"}, false, [](const Params& p, const auto&) {
    return heralding_success_probability(squeeze(p), CatSign::minus);
  }));

  q.push_back(make("p1n_squeezed", "P(1,n;r)", {"r", "n"}, true, [](const Params& p, const auto& pol) {
    return row_entry(squeezed_joint_distribution(squeeze(p), pol), level(p, "n"));
  }));
  q.push_back(make("p1n_cat_minus", "P(1,n;r;-)", {"r", "n"}, true, [](const Params& p, const auto& pol) {
    return row_entry(cat_joint_distribution(squeeze(p), CatSign::minus, pol), level(p, "n"));
  }));
  q.push_back(make("p1n_cat_plus", "P(1,n;r;+)", {"r", "n"}, true, [](const Params& p, const auto& pol) {
    return row_entry(cat_joint_distribution(squeeze(p), CatSign::plus, pol), level(p, "n"));
  }));

  q.push_back(make("p11_squeezed", "P(1,1;r)", {"r"}, true, [](const Params& p, const auto& pol) {
    return squeezed_joint_distribution(squeeze(p), pol)(1, 1);
  }));
  q.push_back(make("p11_cat_minus", "P(1,1;r;-)", {"r"}, true, [](const Params& p, const auto& pol) {
    return cat_joint_distribution(squeeze(p), CatSign::minus, pol)(1, 1);
  }));
  q.push_back(make("p11_cat_plus", "P(1,1;r;+)", {"r"}, true, [](const Params& p, const auto& pol) {
    return cat_joint_distribution(squeeze(p), CatSign::plus, pol)(1, 1);
  }));
  q.push_back(make("p11_tmss", "tilde P(1,1;r)", {"r"}, true, [](const Params& p, const auto& pol) {
    return tmss_joint_probability(squeeze(p), pol.for_tmss(param(p, "r")))(1, 1);
  }));
  q.push_back(make("emission_cat_minus", "N_-(r) P(1,1;r;-)/4", {"r"}, true,
                   [](const Params& p, const auto& pol) {
                     const SqueezeParam r = squeeze(p);
                     return heralding_success_probability(r, CatSign::minus) *
                            cat_joint_distribution(r, CatSign::minus, pol)(1, 1);
                   }));

  // At r = 0 the herald row is empty; the r -> 0 limits are 1 for |r> (the
  // |1,1> term dominates) and 0 for |r;+> (P(1,1;r;+) vanishes identically).
  q.push_back(make("pc_squeezed", "P_c(r)", {"r"}, true, [](const Params& p, const auto& pol) {
    if (param(p, "r") == 0.0) return 1.0;
    return conditional_single_photon(squeezed_joint_distribution(squeeze(p), pol));
  }));
  q.push_back(make("pc_cat_minus", "P_c(r;-)", {"r"}, true, [](const Params& p, const auto& pol) {
    return conditional_single_photon(cat_joint_distribution(squeeze(p), CatSign::minus, pol));
  }));
  q.push_back(make("pc_cat_plus", "P_c(r;+)", {"r"}, true, [](const Params& p, const auto& pol) {
    if (param(p, "r") == 0.0) return 0.0;
    return conditional_single_photon(cat_joint_distribution(squeeze(p), CatSign::plus, pol));
  }));

  // The r -> 0 limit of both generation probabilities is 0 (N_-(0) = 0).
  q.push_back(make("p0", "P_0(tau, r, alpha)", {"tau", "r", "alpha"}, true,
                   [](const Params& p, const TruncationPolicy& pol) {
                     const double r = param(p, "r");
                     if (r == 0.0) return 0.0;
                     return p0_generation(KerrSchedule(param(p, "tau"), param(p, "alpha")),
                                          SqueezeParam(r), pol.for_squeezing(r));
                   }));
  q.push_back(make("p1", "P_1(tau, r, alpha)", {"tau", "r", "alpha"}, true,
                   [](const Params& p, const TruncationPolicy& pol) {
                     const double r = param(p, "r");
                     if (r == 0.0) return 0.0;
                     return p1_heralded(KerrSchedule(param(p, "tau"), param(p, "alpha")),
                                        SqueezeParam(r), pol.for_squeezing(r));
                   }));
  q.push_back(make("ratio_dtheta", "R(r, alpha, dtheta)", {"r", "alpha", "dtheta"}, true,
                   [](const Params& p, const auto& pol) {
                     return phase_error_ratio(squeeze(p), param(p, "alpha"), param(p, "dtheta"), pol);
                   }));
  q.push_back(make("ratio_sigma", "R(r, alpha, sigma)", {"r", "alpha", "sigma"}, true,
                   [](const Params& p, const auto& pol) {
                     return gaussian_averaged_ratio(squeeze(p), param(p, "alpha"), param(p, "sigma"), pol);
                   }));

  auto cat_click = [](const Params& p, const TruncationPolicy& pol) {
    return click_statistics(cat_joint_distribution(squeeze(p), CatSign::minus, pol), detector(p));
  };
  q.push_back(make("pclick_cat_minus", "P_click(r,eta;-)", {"r", "eta"}, true,
                   [=](const Params& p, const auto& pol) { return cat_click(p, pol).p_click; }));
  q.push_back(make("pclick1_cat_minus", "P_click,1(r,eta;-)", {"r", "eta"}, true,
                   [=](const Params& p, const auto& pol) { return cat_click(p, pol).p_click_1; }));
  q.push_back(make("pclickc_cat_minus", "P_click,c(r,eta;-)", {"r", "eta"}, true,
                   [=](const Params& p, const auto& pol) { return cat_click(p, pol).p_click_c; }));
  q.push_back(make("emission_click_cat_minus", "N_-(r) P_click,1(r,eta;-)/4", {"r", "eta"}, true,
                   [=](const Params& p, const auto& pol) {
                     return heralding_success_probability(squeeze(p), CatSign::minus) *
                            cat_click(p, pol).p_click_1;
                   }));
  q.push_back(make("pclick_tmss", "tilde P_click(r,eta)", {"r", "eta"}, false,
                   [](const Params& p, const auto&) {
                     return tmss_click_statistics(squeeze(p), detector(p)).p_click;
                   }));
  q.push_back(make("pclick1_tmss", "tilde P_click,1(r,eta)", {"r", "eta"}, false,
                   [](const Params& p, const auto&) {
                     return tmss_click_statistics(squeeze(p), detector(p)).p_click_1;
                   }));
  q.push_back(make("pclickc_tmss", "tilde P_click,c(r,eta)", {"r", "eta"}, false,
                   [](const Params& p, const auto&) {
                     return tmss_click_statistics(squeeze(p), detector(p)).p_click_c;
                   }));

  q.push_back(make("g2_cat_minus", "heralded g2(0) of |r;->", {"r", "eta"}, true,
                   [](const Params& p, const auto& pol) {
                     return g2_heralded_cat(squeeze(p), detector(p), pol);
                   }));
  q.push_back(make("g2_tmss", "heralded g2(0) of the two-mode squeezed vacuum (closed form)",
                   {"r", "eta"}, false, [](const Params& p, const auto&) {
                     return g2_tmss_analytic(squeeze(p), detector(p));
                   }));
  q.push_back(make("g2_tmss_numeric", "heralded g2(0) of the two-mode squeezed vacuum (tabulated)",
                   {"r", "eta"}, true, [](const Params& p, const auto& pol) {
                     return g2_tmss_numeric(squeeze(p), detector(p), pol);
                   }));

  std::sort(q.begin(), q.end(), [](const Quantity& a, const Quantity& b) { return a.name < b.name; });
  return q;
}

}  // namespace

const std::vector<Quantity>& quantity_registry() {
  static const std::vector<Quantity> registry = build();
  return registry;
}

const Quantity& find_quantity(const std::string& name) {
  const auto& reg = quantity_registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const Quantity& q) { return q.name == name; });
  if (it == reg.end()) {
    std::string msg = "unknown quantity '" + name + "'; registered:";
    for (const auto& q : reg) msg += " " + q.name;
    throw UsageError(msg);
  }
  return *it;
}

}  // namespace kitten
