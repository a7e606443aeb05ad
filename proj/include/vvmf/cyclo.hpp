#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_M).
//
// An element is stored as an integer numerator vector over the power basis
// 1, z, ..., z^(phi(M)-1) (z = zeta_M), reduced modulo the M-th cyclotomic
// polynomial, together with one positive common denominator. The pair is kept
// in lowest terms so that equal field elements of the same modulus have
// identical representations.

#include "vvmf/numth.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace vvmf {

/// Precomputed data of one cyclotomic field.
struct CycloField {
  long modulus = 1;
  long degree = 1;                               // phi(M)
  std::vector<Int> poly;                         // Phi_M, dense, length degree+1
  std::vector<std::pair<long, long>> sparse;     // nonzero (index, coeff) of Phi_M below degree
};

/// Memoized and safe for concurrent use; the returned reference stays valid.
const CycloField& cyclo_field(long modulus);

/// Reduce a coefficient vector (any length) modulo Phi_M in place; result has length phi(M).
void reduce_mod_cyclotomic(std::vector<Int>& coeffs, const CycloField& field);

class CycNum {
 public:
  CycNum();  // zero of Q
  CycNum(long value);  // NOLINT: integers embed implicitly
  CycNum(const Rat& value, long modulus = 1);

  /// e(a/M) = exp(2 pi i a / M).
  static CycNum zeta(long a, long modulus);
  /// Element with the given rational power-basis coefficients (any length; reduced here).
  static CycNum from_coeffs(long modulus, const std::vector<Rat>& coeffs);
  /// Element num/den from an integer coefficient vector of any length.
  static CycNum from_integer_poly(long modulus, std::vector<Int> num, Int den = 1);
  /// Positive square root of a positive integer, in the smallest convenient cyclotomic field.
  static CycNum sqrt_of(long n);

  long modulus() const { return modulus_; }
  const std::vector<Int>& numerators() const { return num_; }
  const Int& denominator() const { return den_; }
  std::vector<Rat> coeffs() const;

  bool is_zero() const;
  std::optional<Rat> as_rational() const;

  /// Same element viewed in Q(zeta_L); L must be a multiple of the modulus.
  CycNum lift(long target_modulus) const;
  /// The element expressed in Q(zeta_L) for L dividing the modulus, if it lies there.
  std::optional<CycNum> lower(long target_modulus) const;

  /// Galois automorphism zeta_M -> zeta_M^u for u prime to M.
  CycNum galois(long u) const;
  CycNum conjugate() const { return galois(-1); }
  CycNum inverse() const;
  CycNum pow(long exponent) const;
  CycNum mul_zeta(long a) const;  // multiply by zeta_M^a

  std::complex<double> embed() const;

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& other);
  CycNum& operator-=(const CycNum& other);
  CycNum& operator*=(const CycNum& other);
  CycNum& operator/=(const CycNum& other);
  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  CycNum& scale(const Rat& factor);

 private:
  void normalize();
  static std::pair<CycNum, CycNum> common(const CycNum& a, const CycNum& b);

  long modulus_ = 1;
  std::vector<Int> num_;
  Int den_ = 1;
};

CycNum zeta(long a, long modulus);

/// Accumulates integer multiples of roots of unity in Z[x]/(x^M - 1) and reduces
/// modulo Phi_M once at the end. Used by the hot loops of the representation and
/// Hecke engines.
class ZetaAccumulator {
 public:
  explicit ZetaAccumulator(long modulus);

  long modulus() const { return field_->modulus; }
  /// buf += factor * z^shift * p(z^scale) where p has integer coefficients.
  void add_poly(const std::vector<Int>& poly, long scale, long shift, const Int& factor = 1);
  void add_monomial(long shift, const Int& factor);
  void clear();
  /// Reduced integer numerator vector (length phi(M)); the accumulator is cleared.
  std::vector<Int> take_reduced();
  CycNum take(const Int& den = 1);

 private:
  const CycloField* field_;
  std::vector<Int> buf_;
};

}  // namespace vvmf
