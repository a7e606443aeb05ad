#include "oracles.hpp"

#include <doctest.h>

using namespace vvmf;

namespace {

std::vector<DiscForm> forms() {
  std::vector<DiscForm> out;
  for (IntMatrix g : std::vector<IntMatrix>{{{2}}, {{-2}}, {{2, 1}, {1, 2}}, {{2, 1}, {1, -2}}, {{4}}, {{6}}, e8_gram()})
    out.push_back(DiscForm::from_gram(g));
  out.push_back(DiscForm::from_data({5}, {ratio(4, 5)}, {{ratio(3, 5)}}));
  return out;
}

oracle::CMat embed(const RepMatrix& m) {
  oracle::CMat c = oracle::cmat(static_cast<std::size_t>(m.dim()));
  for (long i = 0; i < m.dim(); ++i)
    for (long j = 0; j < m.dim(); ++j) c[i][j] = m.at(i, j).embed();
  return c;
}

}  // namespace

TEST_CASE("generators match the defining formulas") {
  for (const DiscForm& a : forms()) {
    WeilRep w(a);
    CHECK(oracle::distance(oracle::rho_T(a), w.generator(TokenKind::T)) < 1e-9);
    CHECK(oracle::distance(oracle::rho_S(a), w.generator(TokenKind::S)) < 1e-9);
    // rho(Z) e_l = e(-sig/4) e_{-l}
    oracle::CMat z = oracle::cmat(static_cast<std::size_t>(a.order()));
    for (long l = 0; l < a.order(); ++l) z[a.neg_index(l)][l] = oracle::e(-a.signature() / 4.0);
    CHECK(oracle::distance(z, w.generator(TokenKind::Z)) < 1e-9);
  }
}

TEST_CASE("homomorphism and unitarity on random elements") {
  std::mt19937_64 rng(1);
  for (const DiscForm& a : forms()) {
    WeilRep w(a);
    for (int i = 0; i < 8; ++i) {
      MetaElem g{random_sl2(rng, 40), 1}, h{random_sl2(rng, 40), -1};
      RepMatrix rg = w.rho(g), rh = w.rho(h);
      CHECK(w.rho(mp_mul(g, h)) == rg * rh);
      CHECK((rg * rg.adjoint()).is_identity());
      // Word evaluation agrees with the product of the generator oracles.
      oracle::CMat prod = oracle::cmat(static_cast<std::size_t>(a.order()));
      for (long k = 0; k < a.order(); ++k) prod[k][k] = 1;
      for (const Token& t : word_decompose(g)) {
        oracle::CMat f;
        switch (t.kind) {
          case TokenKind::S: f = oracle::rho_S(a); break;
          case TokenKind::Sinv: f = embed(w.generator(TokenKind::S).adjoint()); break;
          case TokenKind::T: {
            f = oracle::rho_T(a);
            for (long k = 0; k < a.order(); ++k) f[k][k] = oracle::e(t.exp.get_d() * oracle::qv(a, k));
            break;
          }
          case TokenKind::Z: {
            f = oracle::cmat(static_cast<std::size_t>(a.order()));
            auto z = embed(w.generator(TokenKind::Z));
            for (long k = 0; k < a.order(); ++k) f[k][k] = 1;
            for (long e = 0; e < to_long(t.exp); ++e) f = oracle::mul(f, z);
            break;
          }
        }
        prod = oracle::mul(prod, f);
      }
      CHECK(oracle::distance(prod, rg) < 1e-7);
    }
  }
}

TEST_CASE("R_d closed form") {
  // A from [[2,1],[1,-2]], d = 2: even signature, no sign ambiguity.
  WeilRep w(DiscForm::from_gram({{2, 1}, {1, -2}}));
  CHECK(w.rho(w.rd_word(2)) == w.rho_rd_closed(2));
  for (const DiscForm& a : forms()) {
    WeilRep v(a);
    for (long d = 1; d < std::max(2L, a.level()); ++d) {
      if (gcd(d, a.level()) != 1) continue;
      // (g_d / g) e_{d l}, from complex Gauss sums.
      oracle::CMat expect = oracle::cmat(static_cast<std::size_t>(a.order()));
      auto c = oracle::gauss_sum(a, d) / oracle::gauss_sum(a, 1);
      for (long l = 0; l < a.order(); ++l) expect[a.mul_index(l, d)][l] = c;
      CHECK(oracle::distance(expect, v.rho(v.rd_word(d))) < 1e-9);
      CHECK(v.rho_rd_closed(d) == v.rho(v.rd_word(d)));
    }
  }
}

TEST_CASE("U^m closed form") {
  for (const DiscForm& a : forms()) {
    WeilRep w(a);
    const long n = a.order();
    for (long m = 0; m <= 2 * a.level(); ++m) {
      oracle::CMat expect = oracle::cmat(static_cast<std::size_t>(n));
      for (long l = 0; l < n; ++l)
        for (long nu = 0; nu < n; ++nu) {
          oracle::Cx s = 0;
          for (long mu = 0; mu < n; ++mu) {
            long diff = a.index_of(a.add(a.element(l), a.neg(a.element(nu))));
            s += oracle::e(-m * oracle::qv(a, mu) + oracle::bv(a, mu, diff));
          }
          expect[nu][l] = s / static_cast<double>(n);
        }
      Word word{{TokenKind::S, 1}, {TokenKind::T, -m}, {TokenKind::Sinv, 1}};
      CHECK(evaluate(word).m == Mat2{1, 0, m, 1});
      CHECK(oracle::distance(expect, w.rho(word)) < 1e-9);
      CHECK(w.rho_um_closed(m) == w.rho(word));
    }
  }
}

TEST_CASE("trivial on the principal congruence subgroup") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long> dist(-9, 9);
  for (const DiscForm& a : forms()) {
    WeilRep w(a);
    const Int n = a.level();
    int done = 0;
    while (done < 10) {
      Int c = n * dist(rng), d = 1 + n * dist(rng);
      if (gcd(c, d) != 1) continue;
      Xgcd e = xgcd(d, c);
      Mat2 g{e.x, -e.y, c, d};
      Int k = mod(-g.b, n);
      g = Mat2{g.a + k * c, g.b + k * d, c, d};
      REQUIRE(g.det() == 1);
      REQUIRE(mod(g.a - 1, n) == 0);
      REQUIRE(mod(g.b, n) == 0);
      int sign = a.odd_signature() ? shimura_symbol(c, d) : 1;
      CHECK(w.rho(MetaElem{g, sign}).is_identity());
      ++done;
    }
  }
}

TEST_CASE("chi closed form in odd signature") {
  // A from [[2]], p = 3.
  WeilRep w(DiscForm::from_gram({{2}}));
  const long n = 4, p = 3;
  Xgcd e = xgcd(Int(p), Int(n * n));
  Mat2 g{e.x, n, -e.y * n, p};
  REQUIRE(g.det() == 1);
  auto closed = w.chi_closed(g);
  REQUIRE(closed.has_value());
  CHECK(*closed == w.chi(meta_lift(g)));
}

TEST_CASE("orthogonal group action commutes with rho") {
  for (const DiscForm& a : forms()) {
    WeilRep w(a);
    RepMatrix neg = w.mul_map(-1);
    CHECK(neg * w.generator(TokenKind::S) == w.generator(TokenKind::S) * neg);
    CHECK(neg * w.generator(TokenKind::T) == w.generator(TokenKind::T) * neg);
  }
}

TEST_CASE("coset action of diag(1, m^2) is the preimage sum") {
  for (const DiscForm& a : forms()) {
    WeilRep w(a);
    for (long m : {2L, 3L}) {
      RepMatrix b = w.coset_action(MetaElem{Mat2{1, 0, 0, Int(m) * m}, 1}, true);
      for (long l = 0; l < a.order(); ++l)
        for (long mu = 0; mu < a.order(); ++mu) {
          bool pre = a.mul_index(mu, m) == l;
          CHECK(b.at(mu, l) == CycNum(pre ? 1 : 0));
        }
    }
  }
}

TEST_CASE("t character") {
  std::mt19937_64 rng(21);
  for (IntMatrix g : std::vector<IntMatrix>{{{2}}, {{4}}}) {
    WeilRep w(DiscForm::from_gram(g));
    const long n = w.form().level();
    for (auto [mm, nn] : std::vector<std::pair<long, long>>{{1, 4}, {9, 1}, {3, 1}}) {
      for (int i = 0; i < 10; ++i) {
        MetaElem x = random_gamma_00(rng, n, mm, nn, 15);
        CHECK(w.t_character(x, mm, nn) == kronecker(Int(mm * nn), x.m.d));
      }
    }
  }
}
