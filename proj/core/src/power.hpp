#pragma once

#include <cmath>
#include <span>

namespace rdfront::detail {

// x^p over a span, with multiplication/sqrt fast paths for the exponents that
// dominate desk-scale runs (1, 2, 3, 1/2, 3/2, 5/2).
class Power {
public:
  explicit Power(double p) : p_(p) {
    if (p == 1.0) kind_ = Kind::One;
    else if (p == 2.0) kind_ = Kind::Two;
    else if (p == 3.0) kind_ = Kind::Three;
    else if (p == 0.5) kind_ = Kind::Half;
    else if (p == 1.5) kind_ = Kind::ThreeHalves;
    else if (p == 2.5) kind_ = Kind::FiveHalves;
    else kind_ = Kind::General;
  }

  double operator()(double x) const {
    switch (kind_) {
      case Kind::One: return x;
      case Kind::Two: return x * x;
      case Kind::Three: return x * x * x;
      case Kind::Half: return std::sqrt(x);
      case Kind::ThreeHalves: return x * std::sqrt(x);
      case Kind::FiveHalves: return x * x * std::sqrt(x);
      case Kind::General: return x > 0.0 ? std::pow(x, p_) : 0.0;
    }
    return std::pow(x, p_);
  }

  void apply(std::span<const double> in, std::span<double> out) const {
    const std::size_t n = in.size();
    const double* a = in.data();
    double* r = out.data();
    switch (kind_) {
      case Kind::One:
        for (std::size_t i = 0; i < n; ++i) r[i] = a[i];
        break;
      case Kind::Two:
        for (std::size_t i = 0; i < n; ++i) r[i] = a[i] * a[i];
        break;
      case Kind::Three:
        for (std::size_t i = 0; i < n; ++i) r[i] = a[i] * a[i] * a[i];
        break;
      case Kind::Half:
        for (std::size_t i = 0; i < n; ++i) r[i] = std::sqrt(a[i]);
        break;
      case Kind::ThreeHalves:
        for (std::size_t i = 0; i < n; ++i) r[i] = a[i] * std::sqrt(a[i]);
        break;
      case Kind::FiveHalves:
        for (std::size_t i = 0; i < n; ++i) r[i] = a[i] * a[i] * std::sqrt(a[i]);
        break;
      case Kind::General:
        for (std::size_t i = 0; i < n; ++i) r[i] = a[i] > 0.0 ? std::pow(a[i], p_) : 0.0;
        break;
    }
  }

private:
  enum class Kind { One, Two, Three, Half, ThreeHalves, FiveHalves, General };
  double p_;
  Kind kind_ = Kind::General;
};

}  // namespace rdfront::detail
