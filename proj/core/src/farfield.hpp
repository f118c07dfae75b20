#pragma once

#include <vector>

namespace rdfront::detail {

struct PowerTerm {
  double coef;
  double exponent;
};

/// Finite sum of terms c * y^e on y > 0, kept sorted by exponent with like
/// powers merged.
class PowerSum {
public:
  PowerSum() = default;
  explicit PowerSum(std::vector<PowerTerm> terms);

  static PowerSum monomial(double coef, double exponent);

  const std::vector<PowerTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  PowerSum operator+(const PowerSum& o) const;
  PowerSum operator*(const PowerSum& o) const;
  PowerSum scaled(double s) const;
  PowerSum second_derivative() const;
  /// Division by a single monomial.
  PowerSum divided_by(const PowerTerm& t) const;

  double operator()(double y) const;

private:
  void normalize();
  std::vector<PowerTerm> terms_;
};

/// Taylor series in t of the solution of w_t = (w^m)_yy - b w^β with
/// w(y, 0) = C y^α, built term by term from the equation. It converges for y
/// large compared with the distance travelled by the front and is exact when
/// the solution is a polynomial in t (the traveling waves).
class FarFieldSeries {
public:
  FarFieldSeries(double m, double beta, double b, double C, double alpha, int order);

  double value(double y, double t) const;
  /// Magnitude of the highest retained term, a truncation error estimate.
  double last_term(double y, double t) const;
  /// t^k coefficient at y.
  double coefficient(int k, double y) const { return coeffs_.at(static_cast<std::size_t>(k))(y); }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

private:
  std::vector<PowerSum> coeffs_;
};

}  // namespace rdfront::detail
