#include "farfield.hpp"

#include <algorithm>
#include <cmath>

namespace rdfront::detail {

PowerSum::PowerSum(std::vector<PowerTerm> terms) : terms_(std::move(terms)) { normalize(); }

PowerSum PowerSum::monomial(double coef, double exponent) {
  return PowerSum({PowerTerm{coef, exponent}});
}

void PowerSum::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });
  std::vector<PowerTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && std::abs(merged.back().exponent - t.exponent) <= 1e-12) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const PowerTerm& t) { return t.coef == 0.0; });
  terms_ = std::move(merged);
}

PowerSum PowerSum::operator+(const PowerSum& o) const {
  std::vector<PowerTerm> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return PowerSum(std::move(all));
}

PowerSum PowerSum::operator*(const PowerSum& o) const {
  std::vector<PowerTerm> all;
  all.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) all.push_back({a.coef * b.coef, a.exponent + b.exponent});
  }
  return PowerSum(std::move(all));
}

PowerSum PowerSum::scaled(double s) const {
  std::vector<PowerTerm> all = terms_;
  for (auto& t : all) t.coef *= s;
  return PowerSum(std::move(all));
}

PowerSum PowerSum::second_derivative() const {
  std::vector<PowerTerm> all;
  all.reserve(terms_.size());
  for (const auto& t : terms_) {
    all.push_back({t.coef * t.exponent * (t.exponent - 1.0), t.exponent - 2.0});
  }
  return PowerSum(std::move(all));
}

PowerSum PowerSum::divided_by(const PowerTerm& d) const {
  std::vector<PowerTerm> all = terms_;
  for (auto& t : all) {
    t.coef /= d.coef;
    t.exponent -= d.exponent;
  }
  return PowerSum(std::move(all));
}

double PowerSum::operator()(double y) const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.coef * std::pow(y, t.exponent);
  return s;
}

namespace {

// t-coefficients of (Σ a_k t^k)^p by the recurrence
// k a_0 v_k = Σ_{j=1..k} ((p+1) j - k) a_j v_{k-j}, v_0 = a_0^p.
PowerSum power_coefficient(const std::vector<PowerSum>& a, std::vector<PowerSum>& v, double p,
                           std::size_t k) {
  const PowerTerm lead = a[0].terms().front();
  if (k == 0) return PowerSum::monomial(std::pow(lead.coef, p), lead.exponent * p);
  PowerSum acc;
  for (std::size_t j = 1; j <= k; ++j) {
    const double w = (p + 1.0) * static_cast<double>(j) - static_cast<double>(k);
    if (w == 0.0 || a[j].empty() || v[k - j].empty()) continue;
    acc = acc + (a[j] * v[k - j]).scaled(w);
  }
  return acc.divided_by({static_cast<double>(k) * lead.coef, lead.exponent});
}

}  // namespace

FarFieldSeries::FarFieldSeries(double m, double beta, double b, double C, double alpha,
                               int order) {
  coeffs_.push_back(PowerSum::monomial(C, alpha));
  std::vector<PowerSum> diffusion;
  std::vector<PowerSum> reaction;
  for (int k = 0; k < order; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    diffusion.push_back(power_coefficient(coeffs_, diffusion, m, uk));
    PowerSum rhs = diffusion[uk].second_derivative();
    if (b != 0.0) {
      reaction.push_back(power_coefficient(coeffs_, reaction, beta, uk));
      rhs = rhs + reaction[uk].scaled(-b);
    }
    coeffs_.push_back(rhs.scaled(1.0 / static_cast<double>(k + 1)));
  }
}

double FarFieldSeries::value(double y, double t) const {
  double s = 0.0;
  double tk = 1.0;
  for (const auto& c : coeffs_) {
    s += c(y) * tk;
    tk *= t;
  }
  return s;
}

double FarFieldSeries::last_term(double y, double t) const {
  return std::abs(coeffs_.back()(y) * std::pow(t, order()));
}

}  // namespace rdfront::detail
