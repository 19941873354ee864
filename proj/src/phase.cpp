// SPDX-License-Identifier: Apache-2.0
#include "qiso/phase.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace qiso {

namespace {

double frac(double t) {
  double f = t - std::floor(t);
  return f >= 1.0 ? 0.0 : f;
}

}  // namespace

cplx unit_from_turns(std::int64_t num, std::int64_t den) {
  std::int64_t r = ((num % den) + den) % den;
  if (r == 0) return {1.0, 0.0};
  if (2 * r == den) return {-1.0, 0.0};
  if (4 * r == den) return {0.0, 1.0};
  if (4 * r == 3 * den) return {0.0, -1.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den));
}

Phase Phase::rational(std::int64_t num, std::int64_t den) {
  Phase p;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  p.num_ = num;
  p.den_ = den == 0 ? 1 : den;
  p.normalize();
  return p;
}

Phase Phase::turns(double t) {
  Phase p;
  p.approx_ = frac(t);
  return p;
}

Phase Phase::from_complex(cplx z, std::int64_t max_den, double tol) {
  double t = frac(std::arg(z) / (2.0 * std::numbers::pi));
  for (std::int64_t q = 1; q <= max_den; ++q) {
    double p = std::round(t * static_cast<double>(q));
    if (std::abs(t * static_cast<double>(q) - p) < tol * static_cast<double>(q))
      return rational(static_cast<std::int64_t>(p), q);
  }
  return turns(t);
}

void Phase::normalize() {
  if (approx_) return;
  std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  num_ = ((num_ % den_) + den_) % den_;
}

double Phase::turns_value() const {
  if (approx_) return *approx_;
  return static_cast<double>(num_) / static_cast<double>(den_);
}

cplx Phase::value() const {
  if (approx_) return std::polar(1.0, 2.0 * std::numbers::pi * *approx_);
  return unit_from_turns(num_, den_);
}

Phase Phase::operator*(const Phase& o) const {
  if (approx_ || o.approx_) return turns(turns_value() + o.turns_value());
  std::int64_t l = std::lcm(den_, o.den_);
  return rational(num_ * (l / den_) + o.num_ * (l / o.den_), l);
}

Phase Phase::inverse() const {
  if (approx_) return turns(-*approx_);
  return rational(-num_, den_);
}

Phase Phase::pow(std::int64_t e) const {
  if (approx_) return turns(*approx_ * static_cast<double>(e));
  // reduce first so the product cannot overflow
  std::int64_t r = ((e % den_) + den_) % den_;
  return rational(num_ * r, den_);
}

bool Phase::operator==(const Phase& o) const {
  if (is_exact() && o.is_exact()) return num_ == o.num_ && den_ == o.den_;
  double d = frac(turns_value() - o.turns_value());
  return d < 1e-14 || d > 1.0 - 1e-14;
}

std::string Phase::to_string() const {
  std::ostringstream os;
  if (approx_)
    os << *approx_ << " turns";
  else
    os << num_ << "/" << den_ << " turns";
  return os.str();
}

}  // namespace qiso
