// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace qiso {

using cplx = std::complex<double>;

/// A unit-modulus complex number stored as an angle measured in turns.
///
/// When the angle is rational (p/q turns) it is kept exactly, so products of
/// commutation phases never accumulate rounding error. Irrational angles fall
/// back to a double.
class Phase {
 public:
  Phase() = default;

  static Phase rational(std::int64_t num, std::int64_t den);
  static Phase turns(double t);
  /// Recovers an exact rational angle when `z` is a root of unity of order
  /// at most `max_den`; otherwise keeps the float angle.
  static Phase from_complex(cplx z, std::int64_t max_den = 720, double tol = 1e-12);

  bool is_exact() const { return !approx_.has_value(); }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double turns_value() const;

  cplx value() const;

  Phase operator*(const Phase& o) const;
  Phase inverse() const;
  Phase pow(std::int64_t e) const;
  Phase conj() const { return inverse(); }

  bool operator==(const Phase& o) const;

  std::string to_string() const;

 private:
  void normalize();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::optional<double> approx_;
};

/// exp(2*pi*i*t) with the rational cases 0, 1/2, 1/4, 3/4 returned exactly.
cplx unit_from_turns(std::int64_t num, std::int64_t den);

}  // namespace qiso
