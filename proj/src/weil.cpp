#include "vvmf/weil.hpp"

#include <algorithm>

namespace vvmf {

// ---------------------------------------------------------------------------
// RepMatrix

RepMatrix::RepMatrix(long dim, long modulus)
    : dim_(dim), modulus_(modulus), e_(static_cast<std::size_t>(dim * dim), CycNum(Rat(0), modulus)) {}

RepMatrix RepMatrix::identity(long dim, long modulus) {
  RepMatrix r(dim, modulus);
  for (long i = 0; i < dim; ++i) r.set(i, i, CycNum(Rat(1), modulus));
  return r;
}

void RepMatrix::set(long row, long col, const CycNum& v) {
  if (modulus_ % v.modulus() != 0) *this = lifted(lcm(modulus_, v.modulus()));
  e_[static_cast<std::size_t>(row * dim_ + col)] = v.modulus() == modulus_ ? v : v.lift(modulus_);
}

RepMatrix RepMatrix::adjoint() const {
  RepMatrix r(dim_, modulus_);
  for (long i = 0; i < dim_; ++i)
    for (long j = 0; j < dim_; ++j) r.e_[static_cast<std::size_t>(j * dim_ + i)] = at(i, j).conjugate();
  return r;
}

RepMatrix RepMatrix::scaled(const CycNum& s) const {
  RepMatrix r = s.modulus() == modulus_ || modulus_ % s.modulus() == 0 ? *this : lifted(lcm(modulus_, s.modulus()));
  for (auto& x : r.e_) x *= s;
  return r;
}

RepMatrix RepMatrix::lifted(long modulus) const {
  if (modulus == modulus_) return *this;
  RepMatrix r(dim_, modulus);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].lift(modulus);
  return r;
}

bool RepMatrix::is_identity() const { return *this == identity(dim_, modulus_); }

bool RepMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const CycNum& x) { return x.is_zero(); });
}

std::vector<CycNum> RepMatrix::apply(const std::vector<CycNum>& v) const {
  if (static_cast<long>(v.size()) != dim_) throw DomainError("RepMatrix::apply: dimension mismatch");
  std::vector<CycNum> out(static_cast<std::size_t>(dim_), CycNum(Rat(0), modulus_));
  for (long i = 0; i < dim_; ++i)
    for (long j = 0; j < dim_; ++j)
      if (!at(i, j).is_zero() && !v[static_cast<std::size_t>(j)].is_zero())
        out[static_cast<std::size_t>(i)] += at(i, j) * v[static_cast<std::size_t>(j)];
  return out;
}

namespace {

struct IntForm {
  std::vector<std::vector<Int>> num;  // per entry, power-basis numerators
  Int den = 1;
};

IntForm integer_form(const std::vector<CycNum>& entries) {
  IntForm f;
  for (const auto& x : entries) f.den = lcm(f.den, x.denominator());
  f.num.reserve(entries.size());
  for (const auto& x : entries) {
    std::vector<Int> v = x.numerators();
    Int s = f.den / x.denominator();
    if (s != 1)
      for (auto& c : v) c *= s;
    f.num.push_back(std::move(v));
  }
  return f;
}

bool nonzero_poly(const std::vector<Int>& p) {
  return std::any_of(p.begin(), p.end(), [](const Int& c) { return c != 0; });
}

}  // namespace

RepMatrix operator*(const RepMatrix& x0, const RepMatrix& y0) {
  if (x0.dim_ != y0.dim_) throw DomainError("RepMatrix product: dimension mismatch");
  const long m = lcm(x0.modulus_, y0.modulus_);
  RepMatrix x = x0.lifted(m), y = y0.lifted(m);
  const long n = x.dim_;
  IntForm fx = integer_form(x.e_), fy = integer_form(y.e_);
  std::vector<char> nzx(fx.num.size()), nzy(fy.num.size());
  for (std::size_t i = 0; i < nzx.size(); ++i) nzx[i] = nonzero_poly(fx.num[i]);
  for (std::size_t i = 0; i < nzy.size(); ++i) nzy[i] = nonzero_poly(fy.num[i]);
  RepMatrix r(n, m);
  ZetaAccumulator acc(m);
  const Int den = fx.den * fy.den;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      bool any = false;
      for (long k = 0; k < n; ++k) {
        std::size_t a = static_cast<std::size_t>(i * n + k), b = static_cast<std::size_t>(k * n + j);
        if (!nzx[a] || !nzy[b]) continue;
        any = true;
        const auto& pa = fx.num[a];
        for (std::size_t t = 0; t < pa.size(); ++t)
          if (pa[t] != 0) acc.add_poly(fy.num[b], 1, static_cast<long>(t), pa[t]);
      }
      if (any) r.e_[static_cast<std::size_t>(i * n + j)] = acc.take(den);
    }
  return r;
}

bool operator==(const RepMatrix& x, const RepMatrix& y) {
  if (x.dim_ != y.dim_) return false;
  for (std::size_t i = 0; i < x.e_.size(); ++i)
    if (x.e_[i] != y.e_[i]) return false;
  return true;
}

CycNum inner(const std::vector<CycNum>& x, const std::vector<CycNum>& y) {
  if (x.size() != y.size()) throw DomainError("inner: dimension mismatch");
  CycNum s;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i].conjugate();
  return s;
}

// ---------------------------------------------------------------------------
// Word evaluation engine: a running product scalar * X where X has entries in
// Z[z]/(z^M - 1). Tokens are applied by left multiplication.

struct WeilRep::Engine {
  const WeilRep& w;
  long n, modulus;
  std::vector<Int> buf, tmp;
  long count_s = 0, count_sinv = 0;

  explicit Engine(const WeilRep& rep)
      : w(rep), n(rep.dim()), modulus(rep.modulus()),
        buf(static_cast<std::size_t>(n * n * modulus)), tmp(buf.size()) {
    for (long i = 0; i < n; ++i) at(buf, i, i)[0] = 1;
  }

  Int* at(std::vector<Int>& v, long row, long col) {
    return v.data() + static_cast<std::size_t>((row * n + col) * modulus);
  }

  void clear_tmp() {
    for (auto& c : tmp) c = 0;
  }

  void rotate_entry(Int* p, long shift) {
    shift = mod(shift, modulus);
    if (shift == 0) return;
    std::rotate(p, p + (modulus - shift), p + modulus);
  }

  void apply_t(const Int& e) {
    const long level = w.form_.level();
    const long em = to_long(mod(e, Int(level)));
    if (em == 0) return;
    const auto& q = w.form_.q_table();
    for (long row = 0; row < n; ++row) {
      long shift = mod(em * q[static_cast<std::size_t>(row)], level) * w.scale_;
      if (shift == 0) continue;
      for (long col = 0; col < n; ++col) rotate_entry(at(buf, row, col), shift);
    }
  }

  void apply_s(int sgn) {
    clear_tmp();
    for (long mu = 0; mu < n; ++mu) {
      for (long col = 0; col < n; ++col) {
        Int* src = at(buf, mu, col);
        bool nz = false;
        for (long k = 0; k < modulus && !nz; ++k) nz = src[k] != 0;
        if (!nz) continue;
        for (long nu = 0; nu < n; ++nu) {
          long shift = mod(-sgn * w.b_table_[static_cast<std::size_t>(mu * n + nu)] * w.scale_, modulus);
          Int* dst = at(tmp, nu, col);
          for (long k = 0, pos = shift; k < modulus; ++k, pos = pos + 1 == modulus ? 0 : pos + 1)
            if (src[k] != 0) dst[pos] += src[k];
        }
      }
    }
    buf.swap(tmp);
    (sgn > 0 ? count_s : count_sinv) += 1;
  }

  void apply_z(const Int& j) {
    long jj = to_long(mod(j, Int(4)));
    const long shift = mod(-static_cast<long>(w.form_.signature()) * (modulus / 4), modulus);
    for (long r = 0; r < jj; ++r) {
      clear_tmp();
      for (long mu = 0; mu < n; ++mu) {
        long to = w.form_.neg_index(mu);
        for (long col = 0; col < n; ++col) {
          Int* src = at(buf, mu, col);
          Int* dst = at(tmp, to, col);
          for (long k = 0; k < modulus; ++k) mpz_swap(dst[k].get_mpz_t(), src[k].get_mpz_t());
          rotate_entry(dst, shift);
        }
      }
      buf.swap(tmp);
    }
  }

  void apply_mul(long t) {
    clear_tmp();
    for (long mu = 0; mu < n; ++mu) {
      long to = w.form_.mul_index(mu, t);
      for (long col = 0; col < n; ++col) {
        Int* src = at(buf, mu, col);
        Int* dst = at(tmp, to, col);
        for (long k = 0; k < modulus; ++k)
          if (src[k] != 0) dst[k] += src[k];
      }
    }
    buf.swap(tmp);
  }

  void apply(const Token& t) {
    switch (t.kind) {
      case TokenKind::S:
        apply_s(1);
        break;
      case TokenKind::Sinv:
        apply_s(-1);
        break;
      case TokenKind::T:
        apply_t(t.exp);
        break;
      case TokenKind::Z:
        apply_z(t.exp);
        break;
    }
  }

  // Left-multiply by rho of the whole word.
  void apply_word(const Word& word) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) apply(*it);
  }
};

RepMatrix WeilRep::finish(const Engine& e) const {
  const long order = form_.order();
  const long sig = form_.signature();
  const long m = modulus();
  // conj(g)^s = |A|^(s div 2) e(-sig (s div 2)/4) conj(g)^(s mod 2), and the same for g.
  long s = e.count_s - e.count_sinv;
  long half = (s >= 0 ? s : -s) / 2;
  CycNum scalar = CycNum(Rat(1), m);
  if (s % 2 != 0) scalar = s > 0 ? g1_conj_ : g1_;
  long rot = mod((s >= 0 ? -1 : 1) * sig * half * (m / 8) * 2, m);
  scalar = scalar.mul_zeta(rot);
  Rat factor = pow(Rat(order), half - (s >= 0 ? e.count_s : e.count_sinv));
  scalar.scale(factor);

  RepMatrix r(dim(), m);
  const auto& field = cyclo_field(m);
  const long n = dim();
  for (long row = 0; row < n; ++row)
    for (long col = 0; col < n; ++col) {
      const Int* p = e.buf.data() + static_cast<std::size_t>((row * n + col) * m);
      bool nz = false;
      for (long k = 0; k < m && !nz; ++k) nz = p[k] != 0;
      if (!nz) continue;
      std::vector<Int> poly(p, p + m);
      reduce_mod_cyclotomic(poly, field);
      r.set(row, col, CycNum::from_integer_poly(m, std::move(poly)) * scalar);
    }
  return r;
}

// ---------------------------------------------------------------------------

WeilRep::WeilRep(DiscForm form) : form_(std::move(form)) {
  const long n = form_.order();
  b_table_.resize(static_cast<std::size_t>(n * n));
  for (long i = 0; i < n; ++i)
    for (long j = i; j < n; ++j)
      b_table_[static_cast<std::size_t>(i * n + j)] = b_table_[static_cast<std::size_t>(j * n + i)] = form_.b_num(i, j);
  g1_ = form_.gauss_sum(1);
  g1_conj_ = g1_.conjugate();
  scale_ = modulus() / form_.level();
}

RepMatrix WeilRep::generator(TokenKind g) const { return rho(Word{Token{g, 1}}); }

RepMatrix WeilRep::rho(const Word& w) const {
  Engine e(*this);
  e.apply_word(w);
  return finish(e);
}

RepMatrix WeilRep::rho(const MetaElem& g) const { return rho(word_decompose(g)); }

CycNum WeilRep::rho_unit(long r) const {
  if (gcd(r, form_.level()) != 1) throw DomainError("rho_unit: " + std::to_string(r) + " is not a unit mod the level");
  return g1_ / form_.gauss_sum(r);
}

RepMatrix WeilRep::rho_qn(const Mat2& mbar, long r) const {
  const long level = form_.level();
  if (gcd(r, level) != 1) throw DomainError("rho_qn: r must be a unit mod the level");
  const Int nn(level);
  if (mod(mbar.det() - Int(r) * r, nn) != 0)
    throw DomainError("rho_qn: det " + mbar.str() + " is not r^2 mod " + std::to_string(level));
  Int rinv(inv_mod(r, level));
  Mat2 reduced{mbar.a * rinv, mbar.b * rinv, mbar.c * rinv, mbar.d * rinv};
  Mat2 lift = lift_mod_n(reduced, level);
  return rho(meta_lift(lift)).scaled(rho_unit(r));
}

Word WeilRep::rd_word(long d) const {
  const long level = form_.level();
  if (gcd(d, level) != 1) throw DomainError("rd_word: d must be a unit mod the level");
  long a = inv_mod(mod(d, level), level);
  return Word{{TokenKind::S, 1}, {TokenKind::T, d}, {TokenKind::Sinv, 1},
              {TokenKind::T, a}, {TokenKind::S, 1}, {TokenKind::T, d}};
}

RepMatrix WeilRep::rho_rd_closed(long d) const {
  if (gcd(d, form_.level()) != 1) throw DomainError("rho_rd_closed: d must be a unit mod the level");
  return mul_map(d).scaled(form_.gauss_sum(d) / g1_);
}

RepMatrix WeilRep::rho_um_closed(long m) const {
  const long n = dim(), level = form_.level(), mm = modulus();
  const auto& q = form_.q_table();
  RepMatrix r(n, mm);
  ZetaAccumulator acc(mm);
  for (long nu = 0; nu < n; ++nu)
    for (long lam = 0; lam < n; ++lam) {
      for (long mu = 0; mu < n; ++mu) {
        long e = -mod(m, level) * q[static_cast<std::size_t>(mu)] + b_table_[static_cast<std::size_t>(mu * n + lam)] -
                 b_table_[static_cast<std::size_t>(mu * n + nu)];
        acc.add_monomial(mod(e, level) * scale_, 1);
      }
      r.set(nu, lam, acc.take(Int(n)));
    }
  return r;
}

CycNum WeilRep::chi(const MetaElem& g) const {
  const Int nn(form_.level());
  if (mod(g.m.b, nn) != 0 || mod(g.m.c, nn) != 0) throw DomainError("chi: b and c must be divisible by the level");
  RepMatrix r = rho(g);
  const long n = dim();
  const long d = to_long(mod(g.m.d, nn));
  CycNum value = r.at(form_.mul_index(0, d), 0);
  for (long col = 0; col < n; ++col) {
    long target = form_.mul_index(col, d);
    for (long row = 0; row < n; ++row) {
      const CycNum& x = r.at(row, col);
      if (row == target ? x != value : !x.is_zero())
        throw InvariantError("chi: rho(" + g.m.str() + ") is not a scalar times e_l -> e_{dl}");
    }
  }
  return value;
}

std::optional<CycNum> WeilRep::chi_closed(const Mat2& g) const {
  const long level = form_.level();
  const Int nn(level);
  if (g.det() != 1 || mod(g.b, nn) != 0 || mod(g.c, nn) != 0) return std::nullopt;
  if (!g.d.fits_slong_p()) return std::nullopt;
  long p = g.d.get_si();
  if (p <= 2 || !is_prime(p) || level % p == 0) return std::nullopt;
  const long order = form_.order();
  const int sig = form_.signature();
  int eps_exp = static_cast<int>(mod(1L - kronecker(Int(-1), Int(order)) - sig, 4L));
  CycNum eps = p % 4 == 1 ? CycNum(Rat(1), modulus()) : CycNum::zeta(modulus() / 4, modulus());
  CycNum value = eps.pow(eps_exp);
  Int two_sig = 1;
  for (int i = 0; i < sig; ++i) two_sig *= 2;
  value.scale(Rat(kronecker(g.c, Int(p)) * kronecker(Int(p), Int(order) * two_sig)));
  return value;
}

RepMatrix WeilRep::oa_matrix(const std::vector<std::vector<long>>& h) const {
  if (!form_.is_isometry(h)) throw DomainError("oa_matrix: map is not an isometry");
  const long n = dim();
  RepMatrix r(n, modulus());
  for (long lam = 0; lam < n; ++lam) {
    long image = form_.index_of(form_.apply(h, form_.element(lam)));
    // e_{h lam} -> e_lam
    r.set(lam, image, CycNum(Rat(1), modulus()));
  }
  return r;
}

RepMatrix WeilRep::mul_map(long t) const {
  const long n = dim();
  RepMatrix r(n, modulus());
  for (long lam = 0; lam < n; ++lam) r.set(form_.mul_index(lam, t), lam, CycNum(Rat(1), modulus()));
  return r;
}

RepMatrix WeilRep::preimage_map(long m) const {
  const long n = dim();
  RepMatrix r(n, modulus());
  for (long mu = 0; mu < n; ++mu) r.set(mu, form_.mul_index(mu, m), CycNum(Rat(1), modulus()));
  return r;
}

RepMatrix WeilRep::coset_action(const DoubleCosetSplit& split) const {
  Engine e(*this);
  e.apply_word(inverse_word(word_decompose(split.gamma)));
  e.apply_mul(split.m);
  e.apply_word(inverse_word(word_decompose(split.gamma_prime)));
  return finish(e);
}

RepMatrix WeilRep::coset_action(const MetaElem& delta, bool check) const {
  RepMatrix c = coset_action(split_double_coset(delta));
  if (check) {
    std::seed_seq seq{delta.m.a.get_si(), delta.m.b.get_si(), delta.m.c.get_si(), delta.m.d.get_si(),
                      static_cast<long>(delta.sign)};
    std::mt19937_64 rng(seq);
    Mat2 r = random_sl2(rng, 12), r2 = random_sl2(rng, 12);
    if (coset_action(split_double_coset(delta, r, r2)) != c)
      throw InvariantError("coset action of " + delta.m.str() + " depends on the decomposition");
  }
  return c;
}

MetaElem conjugate_by_diag(const MetaElem& g, long m, long n) {
  if (m <= 0 || n <= 0) throw DomainError("conjugate_by_diag: m and n must be positive");
  if (mod(g.m.c, Int(m)) != 0 || mod(g.m.b, Int(n)) != 0)
    throw DomainError("conjugate_by_diag: need m | c and n | b, got " + g.m.str());
  MetaElem alpha{Mat2{m, 0, 0, n}, 1};
  Mat2 g1{g.m.a, g.m.b * m / n, g.m.c * n / m, g.m.d};
  MetaElem left = mp_mul(alpha, g);
  for (int s : {1, -1}) {
    MetaElem cand{g1, s};
    if (mp_mul(cand, alpha) == left) return cand;
  }
  throw InvariantError("conjugate_by_diag: no sign matches");
}

namespace {

int sign_relating(const RepMatrix& x, const RepMatrix& y) {
  if (x == y) return 1;
  if (x == y.scaled(CycNum(-1))) return -1;
  throw InvariantError("t_character: conjugation condition holds for neither sign");
}

}  // namespace

int WeilRep::t_character(const MetaElem& g, long m, long n) const {
  if (!form_.odd_signature()) throw DomainError("t_character: signature must be odd");
  if (g.m.det() != 1) throw DomainError("t_character: element must lie in SL2(Z)");
  const long level = form_.level();
  MetaElem g1 = conjugate_by_diag(g, m, n);
  const long mn = m * n;
  if (gcd(mn, level) == 1) {
    long r = 0;
    for (long x = 1; x < level && r == 0; ++x)
      if (gcd(x, level) == 1 && mod(x * x - mn, level) == 0) r = x;
    RepMatrix lhs = rho(g1);
    RepMatrix rg = rho(g);
    if (r != 0) {
      // rho(xi) e_l = C e_{t l} with t = n r^-1; conjugation relabels indices.
      long t = mod(n * inv_mod(r, level), level);
      const long dimn = dim();
      RepMatrix conj(dimn, modulus());
      for (long i = 0; i < dimn; ++i)
        for (long j = 0; j < dimn; ++j) conj.set(form_.mul_index(i, t), form_.mul_index(j, t), rg.at(i, j));
      return sign_relating(lhs, conj);
    }
    const Int nn(level);
    if (mod(g.m.b, nn) == 0 && mod(g.m.c, nn) == 0) return sign_relating(lhs, rg);
    throw DomainError("t_character: m n is not a square mod the level and the element is not in Gamma_0^0(N)");
  }
  if (is_square(mn) && gcd(m, n) == 1) {
    RepMatrix x = coset_action(MetaElem{Mat2{m, 0, 0, n}, 1});
    return sign_relating(x * rho(g1), rho(g) * x);
  }
  throw DomainError("t_character: m n must be coprime to the level");
}

}  // namespace vvmf
