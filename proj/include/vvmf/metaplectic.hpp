#pragma once

// The metaplectic cover of GL2+(Q) restricted to integral matrices, words in
// the generators S, T, Z, and the SL2(Z) normal forms used by the Weil and
// Hecke engines.

#include "vvmf/numth.hpp"

#include <random>
#include <string>
#include <vector>

namespace vvmf {

struct Mat2 {
  Int a = 1, b = 0, c = 0, d = 1;

  Int det() const { return a * d - b * c; }
  friend bool operator==(const Mat2&, const Mat2&) = default;
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
  Mat2 adjugate() const { return {d, -b, -c, a}; }
  bool is_primitive() const;
  std::string str() const;
};

/// (M, sign * sqrt(c tau + d)) with the principal branch of the square root.
struct MetaElem {
  Mat2 m;
  int sign = 1;

  friend bool operator==(const MetaElem&, const MetaElem&) = default;
};

/// Sign threshold and test point of the branch cocycle.
inline constexpr double kCocycleTolerance = 1e-6;

MetaElem mp_mul(const MetaElem& g, const MetaElem& h);
inline MetaElem operator*(const MetaElem& g, const MetaElem& h) { return mp_mul(g, h); }
/// Inverse in the metaplectic group; requires det = 1.
MetaElem mp_inverse(const MetaElem& g);
MetaElem mp_pow(const MetaElem& g, long e);

MetaElem meta_T(const Int& n = 1);
MetaElem meta_S();
MetaElem meta_Z();
/// The lift of (1,0;m,1) with the positive square root of m tau + 1.
MetaElem meta_U(const Int& m);
MetaElem meta_identity();
/// (M, +sqrt(c tau + d)).
MetaElem meta_lift(const Mat2& m);

enum class TokenKind { S, Sinv, T, Z };

struct Token {
  TokenKind kind;
  Int exp = 1;  // exponent of T, or of Z (taken mod 4)

  friend bool operator==(const Token&, const Token&) = default;
};
using Word = std::vector<Token>;

MetaElem evaluate(const Word& w);
Word inverse_word(const Word& w);
std::string word_str(const Word& w);

/// Word evaluating exactly to g (matrix and sign); length O(log max|entry|).
Word word_decompose(const MetaElem& g);
/// Word for (M, +sqrt(c tau + d)).
Word word_decompose(const Mat2& m);

/// M in SL2(Z) with M congruent to mbar entrywise mod n.
Mat2 lift_mod_n(const Mat2& mbar, long n);

/// u * D * v = diag(1, det D) with u, v in SL2(Z).
struct SnfSl2 {
  Mat2 u, v;
  Int det;
};
SnfSl2 snf_sl2(const Mat2& d);

/// delta = gamma * alpha * gamma_prime with alpha = (diag(m^2, 1), 1).
struct DoubleCosetSplit {
  MetaElem gamma, gamma_prime;
  long m = 1;
};
/// delta must have a primitive matrix of square determinant.
DoubleCosetSplit split_double_coset(const MetaElem& delta);
/// Same, computed from the Smith form of r * D * r' for the given r, r' in SL2(Z).
DoubleCosetSplit split_double_coset(const MetaElem& delta, const Mat2& r, const Mat2& r_prime);

/// Uniform-ish SL2(Z) matrix with bottom row entries bounded by bound.
Mat2 random_sl2(std::mt19937_64& rng, long bound);

}  // namespace vvmf
