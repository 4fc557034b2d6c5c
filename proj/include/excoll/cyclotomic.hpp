#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace excoll {

/// Exact rational number; always canonical (coprime, positive denominator).
using Rat = mpq_class;
using BigInt = mpz_class;

std::string to_string(const Rat& r);
Rat parse_rat(std::string_view text);

long euler_phi(long n);

/// Coefficients (constant term first) of the n-th cyclotomic polynomial.
/// Computed as the Moebius product of (x^d - 1)^{mu(n/d)} over divisors d.
std::vector<BigInt> cyclotomic_polynomial(long n);

/// Element of the cyclotomic field Q(zeta_N), stored in the power basis
/// 1, z, ..., z^{phi(N)-1} modulo the N-th cyclotomic polynomial.
///
/// Values of different conductors can be mixed freely: both operands are
/// embedded into the field of conductor lcm(N1, N2) first. The result keeps
/// the larger conductor; it is never shrunk automatically.
class CycNum {
 public:
  CycNum();
  CycNum(long value);  // NOLINT(google-explicit-constructor)
  CycNum(const Rat& value);  // NOLINT(google-explicit-constructor)

  /// zeta_N^k.
  static CycNum zeta(long conductor, long k = 1);
  static CycNum from_coeffs(long conductor, std::vector<Rat> coeffs);

  long conductor() const { return conductor_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Rational value; only meaningful when is_rational().
  Rat rational_part() const { return coeffs_.front(); }

  /// Same value written over Q(zeta_M); M must be a multiple of the conductor.
  CycNum embed(long target_conductor) const;
  /// Complex conjugation zeta -> zeta^{-1}.
  CycNum conjugate() const;
  CycNum inverse() const;

  CycNum& operator+=(const CycNum& other);
  CycNum& operator-=(const CycNum& other);
  CycNum& operator*=(const CycNum& other);
  CycNum& operator/=(const CycNum& other);

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
  CycNum operator-() const;

  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  /// Literal form: "<rat>" or a sum of "<rat>*z<N>^<k>" terms.
  std::string to_string() const;
  static CycNum parse(std::string_view text);

 private:
  CycNum(long conductor, std::vector<Rat> coeffs);
  void reduce_from(std::vector<Rat> poly);
  void unify_with(CycNum& other);

  long conductor_ = 1;
  std::vector<Rat> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CycNum& x);

long lcm_conductor(long a, long b);

}  // namespace excoll
