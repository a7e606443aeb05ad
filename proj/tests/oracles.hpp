#pragma once

// Brute-force reference computations for the tests. Everything here works from
// first principles (complex floating point, box enumeration, divisor sums) and
// shares no code path with the library routine it checks.

#include "vvmf/theta.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using vvmf::Int;
using vvmf::Rat;
using Cx = std::complex<double>;
using CMat = std::vector<std::vector<Cx>>;

inline Cx e(double x) { return std::polar(1.0, 2 * std::numbers::pi * x); }

inline CMat cmat(std::size_t n) { return CMat(n, std::vector<Cx>(n, 0)); }

inline CMat mul(const CMat& a, const CMat& b) {
  CMat c = cmat(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a.size(); ++k)
      for (std::size_t j = 0; j < a.size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline double distance(const CMat& a, const vvmf::RepMatrix& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      d = std::max(d, std::abs(a[i][j] - b.at(static_cast<long>(i), static_cast<long>(j)).embed()));
  return d;
}

inline double qv(const vvmf::DiscForm& a, long i) { return a.q(a.element(i)).get_d(); }
inline double bv(const vvmf::DiscForm& a, long i, long j) { return a.b(a.element(i), a.element(j)).get_d(); }

// Column lambda holds the image of e_lambda.
inline CMat rho_T(const vvmf::DiscForm& a) {
  CMat m = cmat(static_cast<std::size_t>(a.order()));
  for (long i = 0; i < a.order(); ++i) m[i][i] = e(qv(a, i));
  return m;
}

inline CMat rho_S(const vvmf::DiscForm& a) {
  const long n = a.order();
  CMat m = cmat(static_cast<std::size_t>(n));
  Cx c = e(-a.signature() / 8.0) / std::sqrt(static_cast<double>(n));
  for (long l = 0; l < n; ++l)
    for (long mu = 0; mu < n; ++mu) m[mu][l] = c * e(-bv(a, l, mu));
  return m;
}

inline Cx gauss_sum(const vvmf::DiscForm& a, long d) {
  Cx s = 0;
  for (long i = 0; i < a.order(); ++i) s += e(d * qv(a, i));
  return s;
}

/// Signature of a real symmetric matrix by cyclic Jacobi rotations.
inline int jacobi_signature(const vvmf::IntMatrix& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g[i][j].get_d();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-22) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        double t = (theta >= 0 ? 1 : -1) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  int sig = 0;
  for (std::size_t i = 0; i < n; ++i) sig += a[i][i] > 0 ? 1 : -1;
  return sig;
}

/// Holomorphic square root of c tau + d with principal branch, times the sign.
inline Cx branch(const vvmf::MetaElem& g, Cx tau) {
  Cx z = g.m.c.get_d() * tau + g.m.d.get_d();
  return static_cast<double>(g.sign) * std::sqrt(z);
}

inline Cx act(const vvmf::Mat2& m, Cx tau) {
  return (m.a.get_d() * tau + m.b.get_d()) / (m.c.get_d() * tau + m.d.get_d());
}

inline long sigma(long k, long n) {
  long s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) {
      long p = 1;
      for (long i = 0; i < k; ++i) p *= d;
      s += p;
    }
  return s;
}

/// Number of integers x with x^2 = n.
inline long r1(long n) {
  if (n == 0) return 1;
  long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
  return r * r == n ? 2 : 0;
}

/// Roots of E8 counted in the even coordinate system: D8 roots plus the half-integral spinor vectors.
inline long e8_root_count() {
  long count = 0;
  std::vector<int> v(8);
  for (long code = 0; code < 6561; ++code) {  // {-1, 0, 1}^8
    long c = code, norm = 0, sum = 0;
    for (int i = 0; i < 8; ++i) {
      v[i] = static_cast<int>(c % 3) - 1;
      c /= 3;
      norm += v[i] * v[i];
      sum += v[i];
    }
    if (norm == 2 && sum % 2 == 0) ++count;
  }
  for (long signs = 0; signs < 256; ++signs)
    if (__builtin_popcountl(signs) % 2 == 0) ++count;
  return count;
}

}  // namespace oracle
