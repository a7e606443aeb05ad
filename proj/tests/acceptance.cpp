// Acceptance run: one PASS/FAIL line per criterion, with wall time against its limit.

#include "oracles.hpp"
#include "vvmf/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace vvmf;

namespace {

using Corpus = std::vector<CorpusEntry>;

std::string fail_count(int bad, int total, const std::string& what) {
  if (bad == 0) return "";
  return std::to_string(bad) + "/" + std::to_string(total) + " " + what;
}

bool positive(const DiscForm& a) {
  return a.has_lattice() && oracle::jacobi_signature(a.gram()) == static_cast<int>(a.gram().size());
}

std::vector<long> units(long n) {
  std::vector<long> out;
  for (long x = 1; x <= std::max(1L, n - 1); ++x)
    if (gcd(x, n) == 1) out.push_back(x);
  return out;
}

std::string milgram(const Corpus& corpus) {
  for (const auto& [name, a] : corpus) {
    CycNum rhs = CycNum::sqrt_of(a->order()) * CycNum::zeta(a->signature(), 8);
    if (a->gauss_sum(1) != rhs) return name + ": Gauss sum";
    auto g = oracle::gauss_sum(*a, 1);
    if (std::abs(g - std::sqrt(static_cast<double>(a->order())) * oracle::e(a->signature() / 8.0)) > 1e-9)
      return name + ": complex Gauss sum";
    if (a->has_lattice() && mod(static_cast<long>(oracle::jacobi_signature(a->gram())), 8L) != a->signature())
      return name + ": lattice signature";
  }
  return "";
}

std::string generators(const Corpus& corpus) {
  for (const auto& [name, a] : corpus) {
    WeilRep w(*a);
    RepMatrix s = w.generator(TokenKind::S), t = w.generator(TokenKind::T), z = w.generator(TokenKind::Z);
    RepMatrix st = s * t;
    if (s * s != z) return name + ": S^2";
    if (st * st * st != z) return name + ": (ST)^3";
    if (z * z != RepMatrix::identity(w.dim(), w.modulus()).scaled(CycNum::zeta(-a->signature(), 2))) return name + ": Z^2";
  }
  return "";
}

std::string principal_congruence(const Corpus& corpus) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> dist(-8, 8);
  int bad = 0, total = 0;
  for (const auto& [name, a] : corpus) {
    WeilRep w(*a);
    const Int n(a->level());
    for (int i = 0; i < 50;) {
      Int c = n * dist(rng), d = 1 + n * dist(rng);
      if (gcd(c, d) != 1) continue;
      Xgcd e = xgcd(d, c);
      Mat2 g{e.x, -e.y, c, d};
      Int k = mod(-g.b, n);
      g.a += k * c;
      g.b += k * d;
      if (g.det() != 1 || mod(g.a - 1, n) != 0 || mod(g.b, n) != 0) return "bad sample " + g.str();
      ++i;
      ++total;
      int sign = a->odd_signature() ? shimura_symbol(c, d) : 1;
      if (!w.rho(MetaElem{g, sign}).is_identity()) ++bad;
    }
  }
  return fail_count(bad, total, "not the identity");
}

std::string weil_oracles(const Corpus& corpus) {
  int bad = 0, total = 0;
  for (const auto& [name, a] : corpus) {
    WeilRep w(*a);
    const long n = a->order();
    for (long d : units(a->level())) {
      oracle::CMat expect = oracle::cmat(static_cast<std::size_t>(n));
      auto c = oracle::gauss_sum(*a, d) / oracle::gauss_sum(*a, 1);
      for (long l = 0; l < n; ++l) expect[a->mul_index(l, d)][l] = c;
      RepMatrix got = w.rho(w.rd_word(d));
      ++total;
      if (oracle::distance(expect, got) > 1e-9 || got != w.rho_rd_closed(d)) ++bad;
    }
    for (long m = 0; m <= 2 * a->level(); ++m) {
      oracle::CMat expect = oracle::cmat(static_cast<std::size_t>(n));
      for (long l = 0; l < n; ++l)
        for (long nu = 0; nu < n; ++nu) {
          oracle::Cx s = 0;
          long diff = a->index_of(a->add(a->element(l), a->neg(a->element(nu))));
          for (long mu = 0; mu < n; ++mu) s += oracle::e(-m * oracle::qv(*a, mu) + oracle::bv(*a, mu, diff));
          expect[nu][l] = s / static_cast<double>(n);
        }
      RepMatrix got = w.rho(Word{{TokenKind::S, 1}, {TokenKind::T, -m}, {TokenKind::Sinv, 1}});
      ++total;
      if (oracle::distance(expect, got) > 1e-9 || got != w.rho_um_closed(m)) ++bad;
    }
  }
  return fail_count(bad, total, "oracle mismatches");
}

bool equal_up_to(const RepMatrix& x, const RepMatrix& y, bool sign) {
  return x == y || (sign && x == y.scaled(CycNum(-1)));
}

std::string qn_extension(const Corpus& corpus) {
  std::mt19937_64 rng(53);
  int bad = 0, total = 0;
  for (const auto& [name, a] : corpus) {
    WeilRep w(*a);
    const long n = a->level();
    const bool odd = a->odd_signature();
    std::vector<long> r = units(n);
    std::uniform_int_distribution<std::size_t> pick(0, r.size() - 1);
    for (int i = 0; i < 25; ++i) {
      long r1 = r[pick(rng)];
      std::vector<long> roots;
      for (long x : r)
        if (mod(x * x - r1 * r1, n) == 0) roots.push_back(x);
      long r2 = roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)];
      Mat2 m = random_sl2(rng, 30) * Mat2{Int(r1) * r1, 0, 0, 1};
      long h = mod(r1 * inv_mod(r2, n), n);
      ++total;
      if (!equal_up_to(w.rho_qn(m, r1), w.rho_qn(m, r2) * w.mul_map(inv_mod(h, n)), odd)) ++bad;
    }
    for (long x : r) {
      total += 2;
      if (!equal_up_to(w.rho_qn(Mat2{Int(x) * x, 0, 0, 1}, x), w.mul_map(inv_mod(x, n)), odd)) ++bad;
      if (!equal_up_to(w.rho_qn(Mat2{1, 0, 0, Int(x) * x}, x), w.mul_map(x), odd)) ++bad;
    }
  }
  return fail_count(bad, total, "relations fail");
}

MetaElem in_double_coset(std::mt19937_64& rng, long m) {
  return meta_lift(random_sl2(rng, 8)) * MetaElem{Mat2{Int(m) * m, 0, 0, 1}, 1} * meta_lift(random_sl2(rng, 8));
}

std::vector<CycNum> random_vector(std::mt19937_64& rng, long dim, long modulus) {
  std::uniform_int_distribution<long> dist(-5, 5);
  std::vector<CycNum> v;
  for (long i = 0; i < dim; ++i) v.push_back(CycNum(dist(rng)) + CycNum::zeta(dist(rng), modulus) * CycNum(dist(rng)));
  return v;
}

std::string coset_actions(const Corpus& corpus) {
  std::mt19937_64 rng(71);
  int bad = 0, total = 0;
  for (const auto& [name, a] : corpus) {
    WeilRep w(*a);
    for (long m : {2L, 3L, 4L, 6L}) {
      for (int i = 0; i < 25; ++i) {
        ++total;
        try {
          w.coset_action(in_double_coset(rng, m), true);
        } catch (const InvariantError&) {
          ++bad;
        }
      }
      RepMatrix x = w.coset_action(MetaElem{Mat2{Int(m) * m, 0, 0, 1}, 1});
      RepMatrix y = w.coset_action(MetaElem{Mat2{1, 0, 0, Int(m) * m}, 1});
      for (int i = 0; i < 5; ++i) {
        auto u = random_vector(rng, w.dim(), w.modulus()), v = random_vector(rng, w.dim(), w.modulus());
        ++total;
        if (inner(x.apply(u), v) != inner(u, y.apply(v))) ++bad;
      }
    }
    for (auto [m, n] : {std::pair<long, long>{2, 3}, std::pair<long, long>{3, 4}})
      for (int i = 0; i < 3; ++i) {
        MetaElem g = in_double_coset(rng, m), h = in_double_coset(rng, n);
        ++total;
        if (w.coset_action(h) * w.coset_action(g) != w.coset_action(g * h)) ++bad;
      }
  }
  return fail_count(bad, total, "coset action checks fail");
}

std::string coset_counts(const Corpus&) {
  for (long p : {2L, 3L, 5L, 7L})
    if (static_cast<long>(coset_reps(p * p, true).size()) != 1 + (p - 1) + p * p) return "p = " + std::to_string(p);
  return "";
}

std::string closed_forms(const Corpus& corpus) {
  int bad = 0, total = 0;
  for (const auto& [name, a] : corpus) {
    if (!positive(*a)) continue;
    for (long p : {3L, 5L, 7L}) {
      if (a->level() % p == 0) continue;
      FourierExpansion f = theta_series(a, Rat(10 * p * p));
      FourierExpansion g = apply_T_general(f, p);
      FourierExpansion h = a->odd_signature() ? apply_T_p2_odd(f, p) : apply_T_p2_even(f, p);
      ++total;
      if (g.prec() != 10 || !(g == h)) ++bad;
    }
  }
  return total == 0 ? "no cases" : fail_count(bad, total, "closed forms differ");
}

std::string multiplicativity(const Corpus&) {
  // [[2]] has A = Z/2 of level 4, so T(4) there is the p | N case.
  for (IntMatrix g : {e8_gram(), IntMatrix{{2}}}) {
    FourierExpansion f = theta_series(g, 360);
    FourierExpansion lhs = apply_T_general(apply_T_general(f, 2), 3);
    FourierExpansion rhs = apply_T_general(f, 6);
    if (lhs.prec() != 10 || !(lhs == rhs)) return "T(4) T(9) != T(36) for rank " + std::to_string(g.size());
    if (!(apply_T_general(apply_T_general(f, 3), 2) == rhs)) return "T(9) T(4) != T(36)";
  }
  return "";
}

std::string odd_structure(const Corpus& corpus) {
  std::mt19937_64 rng(97);
  int bad = 0, total = 0;
  for (const auto& [name, a] : corpus) {
    if (!a->odd_signature()) continue;
    WeilRep w(*a);
    const long n = a->level();
    for (auto [m, k] : std::vector<std::pair<long, long>>{{1, 4}, {9, 1}, {3, 1}}) {
      if (gcd(m * k, n) != 1 && !is_square(m * k)) continue;
      for (int i = 0; i < 25; ++i) {
        MetaElem g = random_gamma_00(rng, n, m, k, 15);
        ++total;
        if (w.t_character(g, m, k) != kronecker(Int(m * k), g.m.d)) ++bad;
      }
    }
    for (long m : {1L, 3L, 5L, 9L})
      for (long k : {1L, 3L, 5L, 7L, 25L}) {
        if (gcd(m * k, n) != 1) continue;
        ++total;
        if (hecke_vanishes(w, m, k, rng) == is_square(m * k)) ++bad;
      }
  }
  return total == 0 ? "no cases" : fail_count(bad, total, "odd-signature checks fail");
}

std::vector<long> classical_tp(const std::vector<long>& a, long p, long k) {
  std::vector<long> b(a.size() / p);
  long pk = 1;
  for (long i = 0; i < k - 1; ++i) pk *= p;
  for (std::size_t n = 0; n < b.size(); ++n) b[n] = a[n * p] + (n % p == 0 ? pk * a[n / p] : 0);
  return b;
}

std::string eigenforms(const Corpus&) {
  std::vector<long> e8(120);
  e8[0] = 1;
  for (long n = 1; n < 120; ++n) e8[n] = 240 * oracle::sigma(3, n);
  for (long p : {3L, 5L, 7L}) {
    const long p2 = p * p, p3 = p2 * p;
    auto t = classical_tp(classical_tp(e8, p, 4), p, 4);
    Rat expect = ratio(t[1] - p3 * e8[1], e8[1]) - p2;
    if (expect != 1 + p3 + p3 * p3 - p2) return "classical oracle disagrees for p = " + std::to_string(p);
    for (IntMatrix g : {IntMatrix{{2}}, e8_gram()}) {
      FourierExpansion f = theta_series(g, Rat(4 * p2));
      FourierExpansion b = apply_T_general(f, p);
      auto ev = eigenvalue(f.truncated(b.prec()), b);
      std::string tag = " (rank " + std::to_string(g.size()) + ", p = " + std::to_string(p) + ")";
      if (!ev) return "not an eigenform" + tag;
      auto r = ev->as_rational();
      if (!r) return "irrational eigenvalue" + tag;
      if (g.size() == 8 && *r != expect) return "E8 eigenvalue " + format_rat(*r) + tag;
    }
  }
  return "";
}

long rational_rank(const RepMatrix& m) {
  const long n = m.dim();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      auto r = m.at(i, j).as_rational();
      if (!r) throw InvariantError("projector entry is not rational");
      a[i][j] = *r;
    }
  long rank = 0;
  for (long col = 0; col < n && rank < n; ++col) {
    long piv = rank;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[rank]);
    for (long i = 0; i < n; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      Rat f = a[i][col] / a[rank][col];
      for (long j = col; j < n; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::string negation_splitting(const Corpus&) {
  for (auto [p, q] : {std::pair<long, Rat>{5, ratio(4, 5)}, std::pair<long, Rat>{13, ratio(12, 13)},
                      std::pair<long, Rat>{5, ratio(2, 5)}, std::pair<long, Rat>{13, ratio(1, 13)}}) {
    WeilRep w(DiscForm::from_data({p}, {q}, {{frac(2 * q)}}));
    RepMatrix id = RepMatrix::identity(w.dim(), w.modulus()), neg = w.mul_map(-1);
    for (int s : {1, -1}) {
      RepMatrix proj(w.dim(), w.modulus());
      for (long i = 0; i < w.dim(); ++i)
        for (long j = 0; j < w.dim(); ++j) proj.set(i, j, (id.at(i, j) + neg.at(i, j) * CycNum(s)) * CycNum(ratio(1, 2)));
      if (proj * proj != proj) return "not a projector";
      for (TokenKind k : {TokenKind::S, TokenKind::T}) {
        RepMatrix g = w.generator(k);
        if (g * proj != proj * g * proj) return "eigenspace not invariant for |A| = " + std::to_string(p);
      }
      long want = s == 1 ? (p + 1) / 2 : (p - 1) / 2;
      if (rational_rank(proj) != want) return "dimension " + std::to_string(rational_rank(proj)) + " for |A| = " + std::to_string(p);
    }
  }
  return "";
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::function<std::string(const Corpus&)> run;
};

}  // namespace

int main() {
  const Corpus corpus = builtin_corpus();
  const std::vector<Criterion> criteria{
      {1, "milgram", 1, milgram},
      {2, "generator_relations", 5, generators},
      {3, "principal_congruence_triviality", 60, principal_congruence},
      {4, "gauss_sum_and_unipotent_oracles", 60, weil_oracles},
      {5, "qn_extension", 30, qn_extension},
      {6, "coset_action", 120, coset_actions},
      {7, "coset_counts", 1, coset_counts},
      {8, "engine_vs_closed_forms", 300, closed_forms},
      {9, "multiplicativity", 300, multiplicativity},
      {10, "odd_signature_structure", 60, odd_structure},
      {11, "eigenforms", 120, eigenforms},
      {12, "negation_splitting", 5, negation_splitting},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    try {
      detail = c.run(corpus);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (detail.empty() && secs > c.limit) detail = "over time limit";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %d %s (%.2f s, limit %.0f s)", detail.empty() ? "PASS" : "FAIL", c.id, c.name,
                  secs, c.limit);
    std::cout << buf << (detail.empty() ? "" : ": " + detail) << std::endl;
    if (!detail.empty()) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
