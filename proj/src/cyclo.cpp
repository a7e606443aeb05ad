#include "vvmf/cyclo.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>

namespace vvmf {

namespace {

std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
  // den is monic up to sign of leading coefficient +1
  const std::size_t dn = den.size() - 1;
  std::vector<Int> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    Int c = num[i];
    if (c == 0) continue;
    q[i - dn] = c;
    for (std::size_t k = 0; k <= dn; ++k) num[i - dn + k] -= c * den[k];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw InvariantError("cyclotomic division left a remainder");
  return q;
}

std::shared_mutex field_mutex;
std::map<long, std::unique_ptr<CycloField>> field_table;

std::unique_ptr<CycloField> build_field(long m) {
  auto f = std::make_unique<CycloField>();
  f->modulus = m;
  std::vector<Int> p(static_cast<std::size_t>(m) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (long d : divisors(m)) {
    if (d == m) continue;
    p = poly_divide_exact(std::move(p), cyclo_field(d).poly);
  }
  f->poly = p;
  f->degree = static_cast<long>(p.size()) - 1;
  for (long k = 0; k < f->degree; ++k)
    if (p[static_cast<std::size_t>(k)] != 0)
      f->sparse.emplace_back(k, to_long(p[static_cast<std::size_t>(k)]));
  return f;
}

}  // namespace

const CycloField& cyclo_field(long modulus) {
  if (modulus <= 0) throw DomainError("cyclotomic modulus must be positive");
  {
    std::shared_lock lock(field_mutex);
    auto it = field_table.find(modulus);
    if (it != field_table.end()) return *it->second;
  }
  // Built outside the lock: construction recursively requests smaller fields.
  auto built = build_field(modulus);
  std::unique_lock lock(field_mutex);
  auto [it, inserted] = field_table.emplace(modulus, std::move(built));
  return *it->second;
}

void reduce_mod_cyclotomic(std::vector<Int>& coeffs, const CycloField& field) {
  const long deg = field.degree;
  for (long j = static_cast<long>(coeffs.size()) - 1; j >= deg; --j) {
    Int& c = coeffs[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    const long base = j - deg;
    for (auto [k, a] : field.sparse) {
      if (a == 1)
        coeffs[static_cast<std::size_t>(base + k)] -= c;
      else if (a == -1)
        coeffs[static_cast<std::size_t>(base + k)] += c;
      else
        coeffs[static_cast<std::size_t>(base + k)] -= c * a;
    }
    c = 0;
  }
  coeffs.resize(static_cast<std::size_t>(deg), 0);
}

// ---------------------------------------------------------------------------

CycNum::CycNum() : modulus_(1), num_(1, 0), den_(1) {}

CycNum::CycNum(long value) : modulus_(1), num_(1, value), den_(1) {}

CycNum::CycNum(const Rat& value, long modulus) : modulus_(modulus) {
  const auto& f = cyclo_field(modulus);
  num_.assign(static_cast<std::size_t>(f.degree), 0);
  num_[0] = value.get_num();
  den_ = value.get_den();
}

CycNum CycNum::zeta(long a, long modulus) {
  const auto& f = cyclo_field(modulus);
  std::vector<Int> p(static_cast<std::size_t>(modulus), 0);
  p[static_cast<std::size_t>(mod(a, modulus))] = 1;
  reduce_mod_cyclotomic(p, f);
  CycNum r;
  r.modulus_ = modulus;
  r.num_ = std::move(p);
  r.den_ = 1;
  return r;
}

CycNum zeta(long a, long modulus) { return CycNum::zeta(a, modulus); }

CycNum CycNum::from_coeffs(long modulus, const std::vector<Rat>& coeffs) {
  Int den = 1;
  for (const auto& c : coeffs) den = lcm(den, Int(c.get_den()));
  std::vector<Int> num(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) num[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
  return from_integer_poly(modulus, std::move(num), den);
}

CycNum CycNum::from_integer_poly(long modulus, std::vector<Int> num, Int den) {
  if (den == 0) throw DomainError("zero denominator");
  const auto& f = cyclo_field(modulus);
  // Fold exponents >= M back using z^M = 1 before the cyclotomic reduction.
  if (static_cast<long>(num.size()) > modulus) {
    for (std::size_t i = static_cast<std::size_t>(modulus); i < num.size(); ++i)
      num[i % static_cast<std::size_t>(modulus)] += num[i];
    num.resize(static_cast<std::size_t>(modulus));
  }
  if (static_cast<long>(num.size()) < f.degree) num.resize(static_cast<std::size_t>(f.degree), 0);
  reduce_mod_cyclotomic(num, f);
  CycNum r;
  r.modulus_ = modulus;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.normalize();
  return r;
}

CycNum CycNum::sqrt_of(long n) {
  if (n <= 0) throw DomainError("sqrt_of: argument must be positive");
  long square = 1, rest = n;
  for (long p : prime_factors(n)) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) square *= p;
    if (e % 2 == 1) rest *= p;
  }
  CycNum r(square);
  for (long p : prime_factors(rest)) {
    if (p == 2) {
      r *= zeta(1, 8) + zeta(7, 8);
      continue;
    }
    CycNum g;
    for (long x = 0; x < p; ++x) g += zeta(x * x % p, p);
    if (p % 4 == 3) g *= zeta(3, 4);  // g = i sqrt(p)
    r *= g;
  }
  return r;
}

std::vector<Rat> CycNum::coeffs() const {
  std::vector<Rat> c(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) {
    c[i] = ratio(num_[i], den_);
    c[i].canonicalize();
  }
  return c;
}

bool CycNum::is_zero() const {
  for (const auto& c : num_)
    if (c != 0) return false;
  return true;
}

std::optional<Rat> CycNum::as_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return std::nullopt;
  Rat r(num_[0], den_);
  r.canonicalize();
  return r;
}

void CycNum::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  Int g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    if (c != 0) g = gcd(g, c);
  }
  if (is_zero()) {
    den_ = 1;
    return;
  }
  if (g != 1) {
    for (auto& c : num_) c /= g;
    den_ /= g;
  }
}

CycNum CycNum::lift(long target) const {
  if (target == modulus_) return *this;
  if (target % modulus_ != 0) throw DomainError("lift: target modulus is not a multiple");
  const long step = target / modulus_;
  ZetaAccumulator acc(target);
  acc.add_poly(num_, step, 0);
  return acc.take(den_);
}

namespace {

struct LowerMap {
  std::vector<long> rows;             // pivot rows in the big field
  std::vector<std::vector<Rat>> inv;  // inverse of the pivot submatrix
};

std::mutex lower_mutex;
std::map<std::pair<long, long>, std::shared_ptr<const LowerMap>> lower_table;

std::shared_ptr<const LowerMap> lower_map(long big, long small) {
  {
    std::lock_guard lock(lower_mutex);
    auto it = lower_table.find({big, small});
    if (it != lower_table.end()) return it->second;
  }
  const long db = cyclo_field(big).degree;
  const long ds = cyclo_field(small).degree;
  std::vector<std::vector<Rat>> e(static_cast<std::size_t>(db), std::vector<Rat>(static_cast<std::size_t>(ds)));
  for (long i = 0; i < ds; ++i) {
    CycNum z = CycNum::zeta(i * (big / small), big);
    for (long r = 0; r < db; ++r) e[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = z.numerators()[static_cast<std::size_t>(r)];
  }
  // Choose ds independent rows greedily.
  auto map = std::make_shared<LowerMap>();
  std::vector<std::vector<Rat>> basis;  // echelon rows for independence test
  std::vector<long> pivcols;
  for (long r = 0; r < db && static_cast<long>(map->rows.size()) < ds; ++r) {
    std::vector<Rat> v = e[static_cast<std::size_t>(r)];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Rat& f = v[static_cast<std::size_t>(pivcols[b])];
      if (f == 0) continue;
      for (long c = 0; c < ds; ++c) v[static_cast<std::size_t>(c)] -= f * basis[b][static_cast<std::size_t>(c)];
    }
    long piv = -1;
    for (long c = 0; c < ds; ++c)
      if (v[static_cast<std::size_t>(c)] != 0) {
        piv = c;
        break;
      }
    if (piv < 0) continue;
    Rat inv = 1 / v[static_cast<std::size_t>(piv)];
    for (auto& x : v) x *= inv;
    basis.push_back(v);
    pivcols.push_back(piv);
    map->rows.push_back(r);
  }
  // Invert the selected square submatrix by Gauss-Jordan.
  const std::size_t n = static_cast<std::size_t>(ds);
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = e[static_cast<std::size_t>(map->rows[i])][j];
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    Rat inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  map->inv.assign(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) map->inv[i][j] = a[i][n + j];
  std::lock_guard lock(lower_mutex);
  lower_table[{big, small}] = map;
  return map;
}

}  // namespace

std::optional<CycNum> CycNum::lower(long target) const {
  if (target == modulus_) return *this;
  if (target <= 0 || modulus_ % target != 0) throw DomainError("lower: target must divide the modulus");
  auto map = lower_map(modulus_, target);
  const std::size_t n = map->rows.size();
  std::vector<Rat> y(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Int& x = num_[static_cast<std::size_t>(map->rows[j])];
      if (x != 0) s += map->inv[i][j] * Rat(x);
    }
    y[i] = s / Rat(den_);
  }
  CycNum candidate = from_coeffs(target, y);
  if (candidate.lift(modulus_) != *this) return std::nullopt;
  return candidate;
}

CycNum CycNum::galois(long u) const {
  if (gcd(u, modulus_) != 1 && modulus_ > 1) throw DomainError("galois: exponent not prime to modulus");
  ZetaAccumulator acc(modulus_);
  acc.add_poly(num_, mod(u, modulus_), 0);
  return acc.take(den_);
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw DomainError("division by zero in cyclotomic field");
  if (auto r = as_rational()) return CycNum(1 / *r, modulus_);
  const std::size_t n = num_.size();
  const auto& f = cyclo_field(modulus_);
  // Columns: this * z^j. Solve (matrix) y = e_0 over Q.
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1, 0));
  std::vector<Int> col = num_;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) a[i][j] = col[i];
    col.insert(col.begin(), Int(0));
    reduce_mod_cyclotomic(col, f);
  }
  a[0][n] = Rat(den_);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw InvariantError("singular multiplication matrix");
    std::swap(a[p], a[c]);
    Rat inv = 1 / a[c][c];
    for (std::size_t k = c; k <= n; ++k) a[c][k] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat fct = a[r][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= fct * a[c][k];
    }
  }
  std::vector<Rat> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = a[i][n];
  return from_coeffs(modulus_, y);
}

CycNum CycNum::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNum r(Rat(1), modulus_), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return r;
}

CycNum CycNum::mul_zeta(long a) const {
  ZetaAccumulator acc(modulus_);
  acc.add_poly(num_, 1, a);
  return acc.take(den_);
}

std::complex<double> CycNum::embed() const {
  std::complex<long double> s = 0;
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  for (std::size_t j = 0; j < num_.size(); ++j) {
    if (num_[j] == 0) continue;
    Rat c(num_[j], den_);
    c.canonicalize();
    long double v = c.get_d();
    long double ang = two_pi * static_cast<long double>(j) / static_cast<long double>(modulus_);
    s += std::complex<long double>(v * std::cos(ang), v * std::sin(ang));
  }
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

std::pair<CycNum, CycNum> CycNum::common(const CycNum& a, const CycNum& b) {
  long m = lcm(a.modulus_, b.modulus_);
  return {a.lift(m), b.lift(m)};
}

CycNum& CycNum::operator+=(const CycNum& other) {
  if (other.modulus_ != modulus_) {
    auto [x, y] = common(*this, other);
    *this = x;
    return *this += y;
  }
  if (den_ == other.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += other.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * other.den_ + other.num_[i] * den_;
    den_ *= other.den_;
  }
  normalize();
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& other) { return *this += -other; }

CycNum& CycNum::operator*=(const CycNum& other) {
  if (other.modulus_ != modulus_) {
    auto [x, y] = common(*this, other);
    *this = x;
    return *this *= y;
  }
  const auto& f = cyclo_field(modulus_);
  std::vector<Int> prod(num_.size() + other.num_.size() - 1, 0);
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < other.num_.size(); ++j) {
      if (other.num_[j] == 0) continue;
      mpz_addmul(prod[i + j].get_mpz_t(), num_[i].get_mpz_t(), other.num_[j].get_mpz_t());
    }
  }
  reduce_mod_cyclotomic(prod, f);
  num_ = std::move(prod);
  den_ *= other.den_;
  normalize();
  return *this;
}

CycNum& CycNum::operator/=(const CycNum& other) { return *this *= other.inverse(); }

CycNum& CycNum::scale(const Rat& factor) {
  for (auto& c : num_) c *= factor.get_num();
  den_ *= factor.get_den();
  normalize();
  return *this;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.modulus_ != b.modulus_) {
    auto [x, y] = CycNum::common(a, b);
    return x == y;
  }
  return a.den_ == b.den_ && a.num_ == b.num_;
}

// ---------------------------------------------------------------------------

ZetaAccumulator::ZetaAccumulator(long modulus)
    : field_(&cyclo_field(modulus)), buf_(static_cast<std::size_t>(modulus), 0) {}

void ZetaAccumulator::add_poly(const std::vector<Int>& poly, long scale, long shift, const Int& factor) {
  const long m = field_->modulus;
  long pos = mod(shift, m);
  const long step = mod(scale, m);
  const bool unit = factor == 1;
  for (std::size_t j = 0; j < poly.size(); ++j, pos = (pos + step) % m) {
    if (poly[j] == 0) continue;
    if (unit)
      buf_[static_cast<std::size_t>(pos)] += poly[j];
    else
      mpz_addmul(buf_[static_cast<std::size_t>(pos)].get_mpz_t(), poly[j].get_mpz_t(), factor.get_mpz_t());
  }
}

void ZetaAccumulator::add_monomial(long shift, const Int& factor) {
  buf_[static_cast<std::size_t>(mod(shift, field_->modulus))] += factor;
}

void ZetaAccumulator::clear() {
  for (auto& c : buf_) c = 0;
}

std::vector<Int> ZetaAccumulator::take_reduced() {
  std::vector<Int> out = buf_;
  reduce_mod_cyclotomic(out, *field_);
  clear();
  return out;
}

CycNum ZetaAccumulator::take(const Int& den) {
  return CycNum::from_integer_poly(field_->modulus, take_reduced(), den);
}

}  // namespace vvmf
