#pragma once

// Integer and rational helpers shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vvmf {

using Int = mpz_class;
using Rat = mpq_class;

/// Precondition violated by the caller (bad modulus, non-unit, wrong arity, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input expansion is too short to produce the requested output.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal identity that must always hold failed.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Nonnegative residue of a modulo |m|.
Int mod(const Int& a, const Int& m);
long mod(long a, long m);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
long gcd(long a, long b);
long lcm(long a, long b);

struct Xgcd {
  Int g, x, y;  // g = x*a + y*b, g >= 0
};
Xgcd xgcd(const Int& a, const Int& b);

// Inverse of a modulo m (m >= 1); throws DomainError if not a unit.
long inv_mod(long a, long m);

// Kronecker symbol (a/b) for arbitrary integers.
int kronecker(const Int& a, const Int& b);

// Quadratic residue symbol (c/d) for odd d, extended to d < 0 by
// (c/d) = (c/|d|) except that (c/d) = -(c/|d|) when c < 0 and d < 0;
// (0/+-1) = 1.
int shimura_symbol(const Int& c, const Int& d);

// Legendre symbol (x/p) of a rational x whose denominator is prime to p.
int legendre_rational(const Rat& x, long p);

// p-adic valuation of a nonzero rational.
int valuation(const Rat& x, long p);

bool is_prime(long n);
long euler_phi(long n);
std::vector<long> prime_factors(long n);  // distinct, ascending
std::vector<long> divisors(long n);       // ascending

bool is_square(const Int& n);
bool is_square(long n);
long isqrt(long n);

// num / den in lowest terms.
Rat ratio(const Int& num, const Int& den);

// Representative of x mod 1 in [0, 1).
Rat frac(const Rat& x);

Rat pow(const Rat& base, long exponent);

// "p/q" or "p"; accepts surrounding whitespace.
Rat parse_rat(const std::string& text);
std::string format_rat(const Rat& x);

long to_long(const Int& x);  // throws DomainError when out of range

}  // namespace vvmf
