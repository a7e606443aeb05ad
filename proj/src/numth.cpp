#include "vvmf/numth.hpp"

#include <algorithm>
#include <cctype>

namespace vvmf {

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

long mod(long a, long m) {
  if (m < 0) m = -m;
  long r = a % m;
  return r < 0 ? r + m : r;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

long gcd(long a, long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long lcm(long a, long b) {
  if (a == 0 || b == 0) return 0;
  long g = gcd(a, b);
  long l = (a / g) * b;
  return l < 0 ? -l : l;
}

Xgcd xgcd(const Int& a, const Int& b) {
  Xgcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

long inv_mod(long a, long m) {
  if (m <= 0) throw DomainError("inv_mod: modulus must be positive");
  if (m == 1) return 0;
  Xgcd e = xgcd(Int(a), Int(m));
  if (e.g != 1) throw DomainError("inv_mod: " + std::to_string(a) + " is not a unit mod " + std::to_string(m));
  return mod(to_long(e.x), m);
}

int kronecker(const Int& a, const Int& b) { return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t()); }

int shimura_symbol(const Int& c, const Int& d) {
  if (mpz_even_p(d.get_mpz_t())) throw DomainError("shimura_symbol: d must be odd");
  if (c == 0) return (d == 1 || d == -1) ? 1 : 0;
  Int ad = abs(d);
  int s = kronecker(c, ad);
  if (c < 0 && d < 0) s = -s;
  return s;
}

int legendre_rational(const Rat& x, long p) {
  Int num = x.get_num() * x.get_den();
  return kronecker(num, Int(p));
}

int valuation(const Rat& x, long p) {
  if (x == 0) throw DomainError("valuation of zero");
  int v = 0;
  Int num = x.get_num(), den = x.get_den();
  while (mpz_divisible_ui_p(num.get_mpz_t(), p)) {
    num /= p;
    ++v;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
    den /= p;
    --v;
  }
  return v;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> ps;
  n = n < 0 ? -n : n;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      ps.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

long euler_phi(long n) {
  long r = n;
  for (long p : prime_factors(n)) r = r / p * (p - 1);
  return r;
}

std::vector<long> divisors(long n) {
  std::vector<long> ds;
  for (long q = 1; q * q <= n; ++q) {
    if (n % q == 0) {
      ds.push_back(q);
      if (q != n / q) ds.push_back(n / q);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }
bool is_square(long n) { return n >= 0 && isqrt(n) * isqrt(n) == n; }

long isqrt(long n) {
  if (n < 0) throw DomainError("isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), Int(n).get_mpz_t());
  return r.get_si();
}

Rat ratio(const Int& num, const Int& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat frac(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rat r = x - Rat(q);
  return r;
}

Rat pow(const Rat& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw DomainError("pow: zero to negative power");
    return pow(Rat(1) / base, -exponent);
  }
  Rat r = 1, b = base;
  while (exponent > 0) {
    if (exponent & 1) r *= b;
    b *= b;
    exponent >>= 1;
  }
  return r;
}

Rat parse_rat(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty rational");
  auto valid = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den) || den[0] == '-') throw ParseError("bad rational '" + text + "'");
  if (num[0] == '+') num = num.substr(1);
  if (den[0] == '+') den = den.substr(1);
  Rat r;
  r.get_num() = Int(num);
  r.get_den() = Int(den);
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

std::string format_rat(const Rat& x) { return x.get_str(); }

long to_long(const Int& x) {
  if (!x.fits_slong_p()) throw DomainError("integer out of machine range: " + x.get_str());
  return x.get_si();
}

}  // namespace vvmf
