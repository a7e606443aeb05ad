#include "vvmf/hecke.hpp"

namespace vvmf {

namespace {

bool same_form(const DiscForm& x, const DiscForm& y) {
  return x.orders() == y.orders() && x.qdiag() == y.qdiag() && x.bmat() == y.bmat();
}

long two_k_of(const Rat& k) {
  Rat t = 2 * k;
  if (t.get_den() != 1) throw DomainError("weight must be a half-integer, got " + format_rat(k));
  return to_long(t.get_num());
}

// d^(-k) as (sqrt d)^(-2k).
CycNum inverse_weight_power(long d, long two_k) {
  if (two_k % 2 == 0) return CycNum(pow(Rat(d), -two_k / 2));
  CycNum s = CycNum::sqrt_of(d);
  return s.scale(pow(Rat(d), (-two_k - 1) / 2));
}

// Coefficient as (exponent in Z/W, integer) pairs over a common denominator.
using SparsePoly = std::vector<std::pair<long, Int>>;

SparsePoly sparse_in(const CycNum& c, long w, const Int& den) {
  SparsePoly out;
  const long step = w / c.modulus();
  const Int s = den / c.denominator();
  const auto& num = c.numerators();
  for (std::size_t j = 0; j < num.size(); ++j)
    if (num[j] != 0) out.emplace_back(static_cast<long>(j) * step, num[j] * s);
  return out;
}

void check_prime_to_level(long p, const DiscForm& a) {
  if (p < 2 || !is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (a.level() % p == 0) throw DomainError("p = " + std::to_string(p) + " divides the level");
}

template <class F>
FourierExpansion build(const FourierExpansion& f, const Rat& prec_out, F&& value) {
  FourierExpansion out(f.form_ptr(), f.weight(), prec_out);
  const DiscForm& a = f.form();
  for (long lam = 0; lam < a.order(); ++lam) {
    Rat q = a.q(a.element(lam));
    for (Rat n = q; n < prec_out; n += 1) out.set(lam, n, value(lam, n));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

FourierExpansion::FourierExpansion(std::shared_ptr<const DiscForm> form, Rat weight, Rat prec)
    : form_(std::move(form)), weight_(std::move(weight)), prec_(std::move(prec)) {
  if (!form_) throw DomainError("expansion needs a discriminant form");
  long two_k = two_k_of(weight_);
  if (mod(two_k - form_->signature(), 2L) != 0)
    throw DomainError("2k = " + std::to_string(two_k) + " has the wrong parity for signature " +
                      std::to_string(form_->signature()) + "; the space is zero");
  if (prec_ < 0) throw DomainError("precision must be nonnegative");
}

bool FourierExpansion::in_support(long lambda, const Rat& n) const {
  if (lambda < 0 || lambda >= form_->order() || n < 0) return false;
  return frac(n - form_->q(form_->element(lambda))) == 0;
}

CycNum FourierExpansion::coeff(long lambda, const Rat& n) const {
  if (n >= prec_)
    throw PrecisionError("coefficient at n = " + format_rat(n) + " requested from an expansion of precision " +
                         format_rat(prec_));
  auto it = coeffs_.find(ExpKey{lambda, n});
  return it == coeffs_.end() ? CycNum() : it->second;
}

void FourierExpansion::set(long lambda, const Rat& n, const CycNum& c) {
  if (!in_support(lambda, n))
    throw DomainError("key (" + std::to_string(lambda) + ", " + format_rat(n) + ") violates n = Q(lambda) mod 1");
  if (n >= prec_) throw DomainError("key n = " + format_rat(n) + " is beyond the precision " + format_rat(prec_));
  if (c.is_zero())
    coeffs_.erase(ExpKey{lambda, n});
  else
    coeffs_[ExpKey{lambda, n}] = c;
}

void FourierExpansion::add(long lambda, const Rat& n, const CycNum& c) {
  auto it = coeffs_.find(ExpKey{lambda, n});
  set(lambda, n, it == coeffs_.end() ? c : it->second + c);
}

FourierExpansion FourierExpansion::truncated(const Rat& prec) const {
  if (prec > prec_) throw PrecisionError("cannot extend precision " + format_rat(prec_) + " to " + format_rat(prec));
  FourierExpansion r(form_, weight_, prec);
  for (const auto& [key, c] : coeffs_)
    if (key.n < prec) r.coeffs_[key] = c;
  return r;
}

bool operator==(const FourierExpansion& x, const FourierExpansion& y) {
  if (!same_form(*x.form_, *y.form_) || x.weight_ != y.weight_ || x.prec_ != y.prec_) return false;
  if (x.coeffs_.size() != y.coeffs_.size()) return false;
  for (auto i = x.coeffs_.begin(), j = y.coeffs_.begin(); i != x.coeffs_.end(); ++i, ++j)
    if (!(i->first == j->first) || i->second != j->second) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::vector<Mat2> coset_reps(long D, bool primitive) {
  if (D < 1) throw DomainError("coset_reps: D must be positive");
  std::vector<Mat2> out;
  for (long a : divisors(D)) {
    long d = D / a;
    for (long b = 0; b < d; ++b)
      if (!primitive || gcd(gcd(a, b), d) == 1) out.push_back(Mat2{a, b, 0, d});
  }
  return out;
}

FourierExpansion apply_T_general(const FourierExpansion& f, long m, const HeckeOptions& opt) {
  if (m < 1) throw DomainError("apply_T_general: m must be positive");
  const long D = m * m;
  if (opt.target_prec && f.prec() < *opt.target_prec * D)
    throw PrecisionError("T(" + std::to_string(D) + ")* to precision " + format_rat(*opt.target_prec) +
                         " needs input precision " + format_rat(*opt.target_prec * D) + ", have " + format_rat(f.prec()));
  if (m == 1) return f;
  const DiscForm& a = f.form();
  const WeilRep w(a);
  const long base = w.modulus();
  const long two_k = two_k_of(f.weight());
  const Rat prec_out = f.prec() / D;
  const std::vector<Mat2> reps = coset_reps(D, true);

  long wmod = lcm(base, a.level() * D);
  Int den_f = 1;
  for (const auto& [key, c] : f.coeffs()) {
    wmod = lcm(wmod, c.modulus());
    den_f = lcm(den_f, c.denominator());
  }
  std::vector<CycNum> dpow(static_cast<std::size_t>(D + 1));
  for (long d : divisors(D)) {
    dpow[static_cast<std::size_t>(d)] = inverse_weight_power(d, two_k);
    wmod = lcm(wmod, dpow[static_cast<std::size_t>(d)].modulus());
  }
  std::map<ExpKey, SparsePoly> input;
  for (const auto& [key, c] : f.coeffs()) input.emplace(key, sparse_in(c, wmod, den_f));

  const long n_elems = a.order();
  const long basis_step = wmod / base;
  const Rat mpow = pow(Rat(m), two_k - 2);
  std::map<ExpKey, CycNum> out;
  ZetaAccumulator acc(wmod);

  for (const Mat2& rep : reps) {
    const long ra = rep.a.get_si(), rb = rep.b.get_si(), rd = rep.d.get_si();
    RepMatrix c = w.coset_action(MetaElem{rep, 1}, opt.check_cosets);
    Int den_c = 1;
    for (long i = 0; i < n_elems; ++i)
      for (long j = 0; j < n_elems; ++j) den_c = lcm(den_c, c.at(i, j).denominator());
    CycNum scalar = dpow[static_cast<std::size_t>(rd)];
    scalar.scale(mpow / (Rat(den_c) * Rat(den_f)));

    for (long mu = 0; mu < n_elems; ++mu) {
      const Rat q = a.q(a.element(mu));
      for (Rat n = q; n < prec_out; n += 1) {
        const Rat n_in = n * rd / ra;
        Rat phase_r = n * rb / ra * wmod;
        if (phase_r.get_den() != 1) throw InvariantError("apply_T_general: phase outside the working field");
        const long phase = to_long(mod(phase_r.get_num(), Int(wmod)));
        bool any = false;
        for (long lam = 0; lam < n_elems; ++lam) {
          const CycNum& entry = c.at(mu, lam);
          if (entry.is_zero()) continue;
          auto it = input.find(ExpKey{lam, n_in});
          if (it == input.end()) continue;
          std::vector<Int> num = entry.numerators();
          Int s = den_c / entry.denominator();
          if (s != 1)
            for (auto& x : num) x *= s;
          for (const auto& [e, coef] : it->second) acc.add_poly(num, basis_step, e + phase, coef);
          any = true;
        }
        if (!any) continue;
        CycNum v = acc.take() * scalar;
        auto [pos, inserted] = out.emplace(ExpKey{mu, n}, v);
        if (!inserted) pos->second += v;
      }
    }
  }

  FourierExpansion result(f.form_ptr(), f.weight(), prec_out);
  for (auto& [key, v] : out) {
    if (v.is_zero()) continue;
    std::optional<CycNum> low = v.lower(base);
    result.set(key.lambda, key.n, low ? *low : v);
  }
  return result;
}

FourierExpansion apply_T_p_even(const FourierExpansion& f, long p, long r) {
  const DiscForm& a = f.form();
  if (a.odd_signature()) throw DomainError("apply_T_p_even: signature must be even");
  if (p < 2 || !is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  const long level = a.level();
  if (gcd(r, level) != 1) throw DomainError("r must be a unit mod the level");
  if (mod(r * r - p, level) != 0) throw DomainError("r^2 is not p mod the level");
  const long rinv = inv_mod(mod(r, level), level);
  const Rat k = f.weight();
  const Rat factor = pow(Rat(p), to_long(Rat(k - 1).get_num()));
  return build(f, f.prec() / p, [&](long lam, const Rat& n) {
    CycNum b = f.coeff(a.mul_index(lam, r), n * p);
    if (n == 0 || valuation(n, p) >= 1) b += f.coeff(a.mul_index(lam, rinv), n / p).scale(factor);
    return b;
  });
}

FourierExpansion apply_T_p2_even(const FourierExpansion& f, long p) {
  const DiscForm& a = f.form();
  if (a.odd_signature()) throw DomainError("apply_T_p2_even: signature must be even");
  check_prime_to_level(p, a);
  const long level = a.level();
  const long pinv = level == 1 ? 0 : inv_mod(mod(p, level), level);
  const long k = to_long(f.weight().get_num());
  const CycNum ratio = a.gauss_sum(1) / a.gauss_sum(p);
  const Rat pk2 = pow(Rat(p), k - 2), p2k2 = pow(Rat(p), 2 * k - 2);
  return build(f, f.prec() / (p * p), [&](long lam, const Rat& n) {
    CycNum b = f.coeff(a.mul_index(lam, p), n * p * p);
    bool divisible = n == 0 || valuation(n, p) >= 1;
    Rat delta = divisible ? Rat(p) : Rat(0);
    CycNum c = f.coeff(lam, n);
    if (!c.is_zero() && delta != 1) b += ratio * c.scale(pk2 * (delta - 1));
    if (n == 0 || valuation(n, p) >= 2) b += f.coeff(a.mul_index(lam, pinv), n / (p * p)).scale(p2k2);
    return b;
  });
}

CycNum odd_hecke_factor(const DiscForm& a, long p) {
  const long mm = a.base_modulus();
  const int sig = a.signature();
  int e = static_cast<int>(mod(static_cast<long>(sig) + kronecker(Int(-1), Int(a.order())), 4L));
  CycNum eps = p % 4 == 1 ? CycNum(Rat(1), mm) : CycNum::zeta(mm / 4, mm);
  Int two_sig = 1;
  for (int i = 0; i < sig; ++i) two_sig *= 2;
  return eps.pow(e).scale(Rat(kronecker(Int(p), Int(a.order()) * two_sig)));
}

FourierExpansion apply_T_p2_odd(const FourierExpansion& f, long p) {
  const DiscForm& a = f.form();
  if (!a.odd_signature()) throw DomainError("apply_T_p2_odd: signature must be odd");
  if (p == 2) throw DomainError("apply_T_p2_odd: p must be odd");
  check_prime_to_level(p, a);
  const long level = a.level();
  const long pinv = inv_mod(mod(p, level), level);
  const long two_k = two_k_of(f.weight());
  const CycNum factor = odd_hecke_factor(a, p);
  const Rat pk = pow(Rat(p), (two_k - 3) / 2), p2k2 = pow(Rat(p), two_k - 2);
  return build(f, f.prec() / (p * p), [&](long lam, const Rat& n) {
    CycNum b = f.coeff(a.mul_index(lam, p), n * p * p);
    int leg = legendre_rational(-n, p);
    CycNum c = f.coeff(lam, n);
    if (leg != 0 && !c.is_zero()) b += factor * c.scale(pk * leg);
    if (n == 0 || valuation(n, p) >= 2) b += f.coeff(a.mul_index(lam, pinv), n / (p * p)).scale(p2k2);
    return b;
  });
}

// ---------------------------------------------------------------------------

MetaElem random_gamma_00(std::mt19937_64& rng, long level, long m, long n, long bound) {
  std::uniform_int_distribution<long> mag(1, bound);
  std::uniform_int_distribution<int> coin(0, 1);
  while (true) {
    Int c = Int(level) * m * mag(rng) * (coin(rng) ? 1 : -1);
    long d = 2 * mag(rng) + 1;
    if (coin(rng)) d = -d;
    Int modulus = Int(level) * n * abs(c);
    if (gcd(Int(d), modulus) != 1) continue;
    Int a;
    mpz_invert(a.get_mpz_t(), Int(d).get_mpz_t(), modulus.get_mpz_t());
    Int b = (a * d - 1) / c;
    Mat2 g{a, b, c, d};
    if (g.det() != 1) throw InvariantError("random_gamma_00: determinant");
    return meta_lift(g);
  }
}

bool hecke_vanishes(const WeilRep& w, long m, long n, std::mt19937_64& rng, int samples) {
  const DiscForm& a = w.form();
  if (!a.odd_signature()) throw DomainError("hecke_vanishes: signature must be odd");
  if (gcd(m * n, a.level()) != 1) throw DomainError("hecke_vanishes: m n must be coprime to the level");
  const long level = a.level();
  if (w.t_character(meta_T(n * level), m, n) == -1) return true;
  if (w.t_character(mp_pow(meta_U(1), m * level), m, n) == -1) return true;
  for (int i = 0; i < samples; ++i)
    if (w.t_character(random_gamma_00(rng, a.level(), m, n, 12), m, n) == -1) return true;
  return false;
}

std::optional<CycNum> eigenvalue(const FourierExpansion& c, const FourierExpansion& b) {
  const Rat& prec = b.prec();
  std::optional<CycNum> lambda;
  for (const auto& [key, v] : c.coeffs()) {
    if (key.n >= prec) continue;
    lambda = b.coeff(key.lambda, key.n) / v;
    break;
  }
  if (!lambda) return std::nullopt;
  for (const auto& [key, v] : c.coeffs())
    if (key.n < prec && b.coeff(key.lambda, key.n) != *lambda * v) return std::nullopt;
  for (const auto& [key, v] : b.coeffs())
    if (c.coeff(key.lambda, key.n).is_zero() && !v.is_zero()) return std::nullopt;
  return lambda;
}

}  // namespace vvmf
