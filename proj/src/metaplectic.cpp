#include "vvmf/metaplectic.hpp"

#include <cmath>
#include <sstream>

namespace vvmf {

bool Mat2::is_primitive() const { return gcd(gcd(a, b), gcd(c, d)) == 1; }

std::string Mat2::str() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

namespace {

double arg_of(const Int& re, const Int& im) { return std::atan2(im.get_d(), re.get_d()); }

// sigma in sqrt(c1 (M2 tau) + d1) sqrt(c2 tau + d2) = sigma sqrt(c3 tau + d3), at tau = i.
int branch_sign(const Mat2& m2, const Mat2& m3) {
  // (c3 i + d3) / (c2 i + d2) has the direction of X + iY.
  Int x = m3.c * m2.c + m3.d * m2.d;
  Int y = m3.c * m2.d - m3.d * m2.c;
  double t1 = arg_of(x, y);
  double t2 = arg_of(m2.d, m2.c);
  double t3 = arg_of(m3.d, m3.c);
  double c = std::cos((t1 + t2 - t3) / 2);
  if (std::abs(c - 1) < kCocycleTolerance) return 1;
  if (std::abs(c + 1) < kCocycleTolerance) return -1;
  throw InvariantError("metaplectic cocycle: branch ratio is not +-1 (cos = " + std::to_string(c) + ")");
}

Int round_div(const Int& a, const Int& c) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  Int r = a - q * c;
  if (2 * abs(r) > abs(c)) q += 1;
  return q;
}

MetaElem token_value(const Token& t) {
  switch (t.kind) {
    case TokenKind::S:
      return meta_S();
    case TokenKind::Sinv:
      return mp_inverse(meta_S());
    case TokenKind::T:
      return meta_T(t.exp);
    case TokenKind::Z:
      return mp_pow(meta_Z(), to_long(mod(t.exp, Int(4))));
  }
  throw InvariantError("unknown token");
}

}  // namespace

MetaElem mp_mul(const MetaElem& g, const MetaElem& h) {
  Mat2 m = g.m * h.m;
  return MetaElem{m, g.sign * h.sign * branch_sign(h.m, m)};
}

MetaElem mp_inverse(const MetaElem& g) {
  if (g.m.det() != 1) throw DomainError("mp_inverse: determinant must be 1, got " + g.m.str());
  MetaElem inv{g.m.adjugate(), 1};
  if (mp_mul(g, inv).sign != 1) inv.sign = -1;
  return inv;
}

MetaElem mp_pow(const MetaElem& g, long e) {
  if (e < 0) return mp_pow(mp_inverse(g), -e);
  MetaElem r = meta_identity(), b = g;
  while (e > 0) {
    if (e & 1) r = mp_mul(r, b);
    e >>= 1;
    if (e > 0) b = mp_mul(b, b);
  }
  return r;
}

MetaElem meta_T(const Int& n) { return MetaElem{Mat2{1, n, 0, 1}, 1}; }
MetaElem meta_S() { return MetaElem{Mat2{0, -1, 1, 0}, 1}; }
MetaElem meta_Z() { return MetaElem{Mat2{-1, 0, 0, -1}, 1}; }
MetaElem meta_U(const Int& m) { return MetaElem{Mat2{1, 0, m, 1}, 1}; }
MetaElem meta_identity() { return MetaElem{Mat2{}, 1}; }
MetaElem meta_lift(const Mat2& m) { return MetaElem{m, 1}; }

MetaElem evaluate(const Word& w) {
  MetaElem r = meta_identity();
  for (const Token& t : w) r = mp_mul(r, token_value(t));
  return r;
}

Word inverse_word(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    switch (it->kind) {
      case TokenKind::S:
        r.push_back({TokenKind::Sinv, 1});
        break;
      case TokenKind::Sinv:
        r.push_back({TokenKind::S, 1});
        break;
      case TokenKind::T:
        r.push_back({TokenKind::T, -it->exp});
        break;
      case TokenKind::Z:
        r.push_back({TokenKind::Z, mod(Int(-it->exp), Int(4))});
        break;
    }
  }
  return r;
}

std::string word_str(const Word& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    switch (w[i].kind) {
      case TokenKind::S:
        os << "S";
        break;
      case TokenKind::Sinv:
        os << "S^-1";
        break;
      case TokenKind::T:
        os << "T^" << w[i].exp;
        break;
      case TokenKind::Z:
        os << "Z^" << w[i].exp;
        break;
    }
  }
  return os.str();
}

Word word_decompose(const MetaElem& g) {
  if (g.m.det() != 1) throw DomainError("word_decompose: determinant must be 1, got " + g.m.str());
  const MetaElem s_inv = mp_inverse(meta_S());
  Word w;
  MetaElem cur = g;
  while (cur.m.c != 0) {
    Int q = round_div(cur.m.a, cur.m.c);
    if (q != 0) w.push_back({TokenKind::T, q});
    w.push_back({TokenKind::S, 1});
    cur = mp_mul(s_inv, mp_mul(meta_T(-q), cur));
  }
  // cur = (+-1, b; 0, +-1): one of Z^j T^x.
  const Int& dd = cur.m.d;
  Int x = cur.m.b * dd;
  for (int j = (dd == 1 ? 0 : 1); j < 4; j += 2) {
    MetaElem cand = mp_mul(mp_pow(meta_Z(), j), meta_T(x));
    if (cand == cur) {
      if (j != 0) w.push_back({TokenKind::Z, j});
      if (x != 0) w.push_back({TokenKind::T, x});
      return w;
    }
  }
  throw InvariantError("word_decompose: no central correction matches " + cur.m.str());
}

Word word_decompose(const Mat2& m) { return word_decompose(meta_lift(m)); }

Mat2 lift_mod_n(const Mat2& mbar, long n) {
  if (n <= 0) throw DomainError("lift_mod_n: modulus must be positive");
  const Int nn(n);
  if (mod(mbar.det() - 1, nn) != 0)
    throw DomainError("lift_mod_n: determinant of " + mbar.str() + " is not 1 mod " + std::to_string(n));
  if (n == 1) return Mat2{};
  Int a = mod(mbar.a, nn), b = mod(mbar.b, nn), c = mod(mbar.c, nn), d = mod(mbar.d, nn);
  if (d == 0) d = nn;
  // c' = c + tN coprime to d, with t the product of the primes of d not dividing c.
  Int t = 1;
  for (long p : prime_factors(to_long(d)))
    if (c % p != 0) t *= p;
  Int c1 = c + t * nn;
  Xgcd e = xgcd(d, c1);  // x d + y c1 = 1
  if (e.g != 1) throw InvariantError("lift_mod_n: bottom row not coprime");
  Int a0 = e.x, b0 = -e.y;
  Int k = mod(e.x * (b - b0) + e.y * (a - a0), nn);
  return Mat2{a0 + k * c1, b0 + k * d, c1, d};
}

SnfSl2 snf_sl2(const Mat2& dm) {
  if (dm.det() <= 0) throw DomainError("snf_sl2: determinant must be positive");
  if (!dm.is_primitive()) throw DomainError("snf_sl2: matrix " + dm.str() + " is not primitive; use primitive part");
  Mat2 u, v, x = dm;
  while (true) {
    if (x.b != 0) {
      Xgcd e = xgcd(x.a, x.b);
      Mat2 col{e.x, -x.b / e.g, e.y, x.a / e.g};
      x = x * col;
      v = v * col;
    }
    if (x.c != 0) {
      Xgcd e = xgcd(x.a, x.c);
      Mat2 row{e.x, e.y, -x.c / e.g, x.a / e.g};
      x = row * x;
      u = row * u;
      continue;
    }
    if (abs(x.a) == 1) break;
    Mat2 row{1, 1, 0, 1};
    x = row * x;
    u = row * u;
  }
  if (x.a == -1) {
    Mat2 neg{-1, 0, 0, -1};
    x = neg * x;
    u = neg * u;
  }
  if (!(x.a == 1 && x.b == 0 && x.c == 0 && x.d == dm.det()))
    throw InvariantError("snf_sl2: reduction did not reach diag(1, det)");
  return SnfSl2{u, v, x.d};
}

namespace {

DoubleCosetSplit finish_split(const MetaElem& delta, const Mat2& left, const Mat2& right, long m) {
  const Mat2 s{0, -1, 1, 0}, s_inv{0, 1, -1, 0};
  DoubleCosetSplit out;
  out.m = m;
  out.gamma = meta_lift(left * s_inv);
  out.gamma_prime = meta_lift(s * right);
  MetaElem alpha{Mat2{Int(m) * m, 0, 0, 1}, 1};
  MetaElem p = mp_mul(mp_mul(out.gamma, alpha), out.gamma_prime);
  if (!(p.m == delta.m)) throw InvariantError("split_double_coset: matrix mismatch");
  if (p.sign != delta.sign) out.gamma_prime.sign = -out.gamma_prime.sign;
  return out;
}

long square_root_of_det(const Mat2& m) {
  Int det = m.det();
  if (det <= 0 || !is_square(det)) throw DomainError("coset action: determinant of " + m.str() + " is not a perfect square");
  if (!m.is_primitive()) throw DomainError("coset action: matrix " + m.str() + " is not primitive");
  Int r;
  mpz_sqrt(r.get_mpz_t(), det.get_mpz_t());
  return to_long(r);
}

}  // namespace

DoubleCosetSplit split_double_coset(const MetaElem& delta) {
  long m = square_root_of_det(delta.m);
  SnfSl2 f = snf_sl2(delta.m);
  return finish_split(delta, f.u.adjugate(), f.v.adjugate(), m);
}

DoubleCosetSplit split_double_coset(const MetaElem& delta, const Mat2& r, const Mat2& r_prime) {
  long m = square_root_of_det(delta.m);
  if (r.det() != 1 || r_prime.det() != 1) throw DomainError("split_double_coset: conjugators must lie in SL2(Z)");
  SnfSl2 f = snf_sl2(r * delta.m * r_prime);
  return finish_split(delta, r.adjugate() * f.u.adjugate(), f.v.adjugate() * r_prime.adjugate(), m);
}

Mat2 random_sl2(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  while (true) {
    long c = dist(rng), d = dist(rng);
    if (gcd(c, d) != 1) continue;
    Xgcd e = xgcd(Int(d), Int(c));
    Mat2 m{e.x, -e.y, c, d};
    long k = dist(rng);
    return Mat2{m.a + k * m.c, m.b + k * m.d, m.c, m.d};
  }
}

}  // namespace vvmf
