#include "vvmf/verify.hpp"

#include "vvmf/theta.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <sstream>

namespace vvmf {

namespace {

struct Ctx {
  const CorpusEntry& entry;
  const DiscForm& a;
  WeilRep w;
  std::mt19937_64 rng;
  int samples;
};

// Returns an empty string on success, otherwise what went wrong.
using Check = std::function<std::string(Ctx&)>;

std::string count_failures(int bad, int total) {
  if (bad == 0) return "";
  return std::to_string(bad) + " of " + std::to_string(total) + " cases failed";
}

MetaElem random_gamma_n(std::mt19937_64& rng, long level, bool odd) {
  std::uniform_int_distribution<long> dist(-6, 6);
  while (true) {
    Int c = Int(level) * dist(rng);
    Int d = 1 + Int(level) * dist(rng);
    if (gcd(c, d) != 1) continue;
    Xgcd e = xgcd(d, c);  // x d + y c = 1
    Mat2 g{e.x, -e.y, c, d};
    Int k = mod(-g.b, Int(level));
    g.a += k * c;
    g.b += k * d;
    return MetaElem{g, odd ? shimura_symbol(c, d) : 1};
  }
}

bool same_up_to_sign(const RepMatrix& x, const RepMatrix& y, bool allow_sign) {
  return x == y || (allow_sign && x == y.scaled(CycNum(-1)));
}

std::string check_milgram(Ctx& c) {
  const DiscForm& a = c.a;
  CycNum rhs = CycNum::sqrt_of(a.order()) * zeta(a.signature(), 8);
  if (a.gauss_sum(1) != rhs) return "g(A) != sqrt|A| e(sig/8)";
  if (a.milgram_signature() != a.signature()) return "signature disagrees with the Gauss sum";
  if (a.has_lattice() && mod(static_cast<long>(real_signature(a.gram())), 8L) != a.signature())
    return "lattice signature differs mod 8";
  return "";
}

std::string check_generators(Ctx& c) {
  RepMatrix s = c.w.generator(TokenKind::S), t = c.w.generator(TokenKind::T), z = c.w.generator(TokenKind::Z);
  if (s * s != z) return "rho(S)^2 != rho(Z)";
  RepMatrix st = s * t;
  if (st * st * st != z) return "(rho(S) rho(T))^3 != rho(Z)";
  RepMatrix id = RepMatrix::identity(c.w.dim(), c.w.modulus());
  if (z * z != id.scaled(zeta(-c.a.signature(), 2))) return "rho(Z)^2 != e(-sig/2)";
  return "";
}

std::string check_level_trivial(Ctx& c) {
  int bad = 0;
  for (int i = 0; i < c.samples; ++i)
    if (!c.w.rho(random_gamma_n(c.rng, c.a.level(), c.a.odd_signature())).is_identity()) ++bad;
  return count_failures(bad, c.samples);
}

std::string check_rd(Ctx& c) {
  const long level = c.a.level();
  int bad = 0, total = 0;
  for (long d = 1; d <= std::max(1L, level - 1); ++d) {
    if (gcd(d, level) != 1) continue;
    ++total;
    if (c.w.rho(c.w.rd_word(d)) != c.w.rho_rd_closed(d)) ++bad;
  }
  return count_failures(bad, total);
}

std::string check_um(Ctx& c) {
  const long level = c.a.level();
  int bad = 0, total = 0;
  for (long m = 0; m <= 2 * level; ++m) {
    ++total;
    Word w{{TokenKind::S, 1}, {TokenKind::T, -m}, {TokenKind::Sinv, 1}};
    if (c.w.rho(w) != c.w.rho_um_closed(m)) ++bad;
  }
  return count_failures(bad, total);
}

std::string check_chi(Ctx& c) {
  const long level = c.a.level();
  int bad = 0, total = 0;
  for (long p : {3L, 5L, 7L, 11L}) {
    if (level % p == 0) continue;
    for (long h = 1; h <= 2; ++h) {
      Xgcd e = xgcd(Int(p), Int(level) * level * h);
      Mat2 g{e.x, Int(level) * h, -e.y * level, p};
      auto closed = c.w.chi_closed(g);
      ++total;
      if (!closed || *closed != c.w.chi(meta_lift(g))) ++bad;
    }
  }
  return count_failures(bad, total);
}

std::string check_qn(Ctx& c) {
  const long level = c.a.level();
  const bool odd = c.a.odd_signature();
  int bad = 0, total = 0;
  for (long r1 = 1; r1 <= std::max(1L, level - 1); ++r1) {
    if (gcd(r1, level) != 1) continue;
    for (long r2 = 1; r2 <= std::max(1L, level - 1); ++r2) {
      if (gcd(r2, level) != 1 || mod(r1 * r1 - r2 * r2, level) != 0) continue;
      Mat2 mb = random_sl2(c.rng, 20) * Mat2{Int(r1) * r1, 0, 0, 1};
      long h = mod(r1 * inv_mod(r2, level), level);
      ++total;
      if (!same_up_to_sign(c.w.rho_qn(mb, r1), c.w.rho_qn(mb, r2) * c.w.mul_map(inv_mod(h, level)), odd)) ++bad;
    }
    ++total;
    bool ok = same_up_to_sign(c.w.rho_qn(Mat2{Int(r1) * r1, 0, 0, 1}, r1), c.w.mul_map(inv_mod(r1, level)), odd) &&
              same_up_to_sign(c.w.rho_qn(Mat2{1, 0, 0, Int(r1) * r1}, r1), c.w.mul_map(r1), odd);
    if (!ok) ++bad;
  }
  return count_failures(bad, total);
}

MetaElem random_in_coset(std::mt19937_64& rng, long m) {
  return mp_mul(mp_mul(meta_lift(random_sl2(rng, 8)), MetaElem{Mat2{Int(m) * m, 0, 0, 1}, 1}),
                meta_lift(random_sl2(rng, 8)));
}

std::string check_welldefined(Ctx& c) {
  for (long m : {2L, 3L, 4L, 6L})
    for (int i = 0; i < std::max(1, c.samples / 4); ++i)
      c.w.coset_action(random_in_coset(c.rng, m), true);  // throws on disagreement
  return "";
}

std::string check_adjoint(Ctx& c) {
  for (long m : {2L, 3L}) {
    RepMatrix ca = c.w.coset_action(MetaElem{Mat2{Int(m) * m, 0, 0, 1}, 1});
    RepMatrix cb = c.w.coset_action(MetaElem{Mat2{1, 0, 0, Int(m) * m}, 1});
    if (cb != c.w.preimage_map(m)) return "action of diag(1, m^2) is not the preimage sum for m = " + std::to_string(m);
    if (ca.adjoint() != cb) return "adjointness fails for m = " + std::to_string(m);
  }
  return "";
}

std::string check_product(Ctx& c) {
  int bad = 0, total = 0;
  for (auto [m, n] : {std::pair<long, long>{2, 3}, std::pair<long, long>{3, 4}}) {
    MetaElem g = random_in_coset(c.rng, m), h = random_in_coset(c.rng, n);
    ++total;
    if (c.w.coset_action(h) * c.w.coset_action(g) != c.w.coset_action(mp_mul(g, h))) ++bad;
  }
  return count_failures(bad, total);
}

std::string check_negation(Ctx& c) {
  RepMatrix neg = c.w.mul_map(-1);
  for (TokenKind k : {TokenKind::S, TokenKind::T}) {
    RepMatrix g = c.w.generator(k);
    if (g * neg != neg * g) return "negation does not commute with the representation";
  }
  long fixed = 0;
  for (long i = 0; i < c.a.order(); ++i)
    if (c.a.neg_index(i) == i) ++fixed;
  long plus = fixed + (c.a.order() - fixed) / 2;
  if (c.a.rank() == 1 && c.a.order() % 2 == 1 && plus != (c.a.order() + 1) / 2) return "unexpected eigenspace dimension";
  return "";
}

std::string check_odd_vanishing(Ctx& c) {
  const long level = c.a.level();
  int bad = 0, total = 0;
  for (long m : {1L, 3L, 5L, 9L})
    for (long n : {1L, 3L, 5L, 7L}) {
      if (gcd(m * n, level) != 1) continue;
      ++total;
      if (hecke_vanishes(c.w, m, n, c.rng, c.samples) == is_square(m * n)) ++bad;
    }
  return count_failures(bad, total);
}

bool positive_lattice(const DiscForm& a) {
  return a.has_lattice() && real_signature(a.gram()) == static_cast<int>(a.gram().size());
}

std::string check_theta_modularity(Ctx& c) {
  FourierExpansion f = theta_series(c.entry.form, 30);
  double worst = 0;
  std::vector<MetaElem> sample{meta_T(1), meta_S(), mp_mul(meta_S(), meta_T(1)), mp_mul(meta_T(1), meta_S())};
  while (static_cast<int>(sample.size()) < 4 + c.samples) sample.push_back(meta_lift(random_sl2(c.rng, 3)));
  int used = 0;
  for (const MetaElem& g : sample)
    for (std::complex<double> tau : {std::complex<double>(0, 0.5), std::complex<double>(1.0 / 3, 1.0 / 3)}) {
      std::complex<double> gt = (g.m.a.get_d() * tau + g.m.b.get_d()) / (g.m.c.get_d() * tau + g.m.d.get_d());
      if (gt.imag() < 0.25) continue;
      ++used;
      worst = std::max(worst, modularity_defect(f, c.w, g, tau));
    }
  if (worst > 1e-6) {
    std::ostringstream os;
    os << "transformation defect " << worst << " over " << used << " evaluations";
    return os.str();
  }
  return "";
}

std::string check_closed_forms(Ctx& c) {
  int bad = 0, total = 0;
  for (long p : {3L, 5L, 7L}) {
    if (c.a.level() % p == 0) continue;
    FourierExpansion f = theta_series(c.entry.form, Rat(4 * p * p));
    FourierExpansion g = apply_T_general(f, p);
    FourierExpansion h = c.a.odd_signature() ? apply_T_p2_odd(f, p) : apply_T_p2_even(f, p);
    ++total;
    if (!(g == h)) ++bad;
  }
  return count_failures(bad, total);
}

std::string check_multiplicative(Ctx& c) {
  FourierExpansion f = theta_series(c.entry.form, 72);
  FourierExpansion lhs = apply_T_general(apply_T_general(f, 2), 3);
  FourierExpansion rhs = apply_T_general(f, 6);
  return lhs == rhs ? "" : "T(4) T(9) != T(36)";
}

std::string check_eigen(Ctx& c) {
  for (long p : {3L, 5L, 7L}) {
    if (c.a.level() % p == 0) continue;
    FourierExpansion f = theta_series(c.entry.form, Rat(4 * p * p));
    FourierExpansion b = apply_T_general(f, p);
    auto ev = eigenvalue(f.truncated(b.prec()), b);
    if (!ev) return "not an eigenform for p = " + std::to_string(p);
    if (!ev->as_rational()) return "eigenvalue not rational for p = " + std::to_string(p);
  }
  return "";
}

struct FormCheck {
  const char* name;
  Check fn;
  std::function<bool(const DiscForm&)> applies;
};

bool always(const DiscForm&) { return true; }

const std::vector<FormCheck>& form_checks() {
  static const std::vector<FormCheck> checks{
      {"milgram", check_milgram, always},
      {"generator_relations", check_generators, always},
      {"level_triviality", check_level_trivial, always},
      {"rd_closed_form", check_rd, always},
      {"um_closed_form", check_um, always},
      {"chi_closed_form", check_chi, [](const DiscForm& a) { return a.odd_signature(); }},
      {"qn_extension", check_qn, always},
      {"coset_well_defined", check_welldefined, always},
      {"coset_adjointness", check_adjoint, always},
      {"coset_product", check_product, always},
      {"negation_eigenspaces", check_negation, always},
      {"odd_hecke_vanishing", check_odd_vanishing, [](const DiscForm& a) { return a.odd_signature(); }},
      {"theta_modularity", check_theta_modularity, positive_lattice},
      {"closed_form_agreement", check_closed_forms, positive_lattice},
      {"multiplicativity", check_multiplicative, positive_lattice},
      {"theta_eigenform",
       check_eigen,
       [](const DiscForm& a) {
         if (!positive_lattice(a)) return false;
         const IntMatrix& g = a.gram();
         return g == IntMatrix{{2}} || g == IntMatrix{{2, 1}, {1, 2}} || g == e8_gram();
       }},
  };
  return checks;
}

CheckResult timed(const std::string& name, const std::string& form, const std::function<std::string()>& fn) {
  CheckResult r{name, form, false, "", 0};
  auto t0 = std::chrono::steady_clock::now();
  try {
    r.detail = fn();
    r.pass = r.detail.empty();
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CheckResult> run_form(const CorpusEntry& e, const VerifyOptions& opt, std::uint64_t seed) {
  std::vector<CheckResult> out;
  Ctx ctx{e, *e.form, WeilRep(*e.form), std::mt19937_64(seed), opt.samples};
  for (const FormCheck& c : form_checks()) {
    if (!c.applies(*e.form)) continue;
    out.push_back(timed(c.name, e.name, [&] { return c.fn(ctx); }));
  }
  return out;
}

std::string check_coset_counts() {
  for (long p : {2L, 3L, 5L, 7L})
    if (static_cast<long>(coset_reps(p * p, true).size()) != p * p + p) return "wrong count for p = " + std::to_string(p);
  return "";
}

std::string check_jacobi_factor() {
  for (long m : {1L, 2L, 3L, 5L}) {
    DiscForm a = DiscForm::from_gram(IntMatrix{{-2 * m}});
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
      if (gcd(p, 4 * m) != 1) continue;
      if (odd_hecke_factor(a, p) != CycNum(kronecker(Int(m), Int(p))))
        return "factor differs from (m/p) for m = " + std::to_string(m) + ", p = " + std::to_string(p);
    }
  }
  return "";
}

}  // namespace

std::vector<CorpusEntry> builtin_corpus() {
  std::vector<CorpusEntry> out;
  auto gram = [&](std::string name, IntMatrix g) {
    out.push_back({std::move(name), std::make_shared<const DiscForm>(DiscForm::from_gram(g))});
  };
  gram("A1", {{2}});
  gram("A1_neg", {{-2}});
  gram("A2", {{2, 1}, {1, 2}});
  gram("indef_5", {{2, 1}, {1, -2}});
  gram("E8", e8_gram());
  gram("Z_4", {{4}});
  gram("Z_6", {{6}});
  gram("hyperbolic", {{0, 1}, {1, 0}});
  auto cyclic = [&](std::string name, long p, Rat q) {
    out.push_back({std::move(name), std::make_shared<const DiscForm>(DiscForm::from_data({p}, {q}, {{frac(2 * q)}}))});
  };
  cyclic("cyclic_5", 5, ratio(4, 5));
  cyclic("cyclic_13", 13, ratio(12, 13));
  return out;
}

std::vector<CheckResult> run_verify(const std::vector<CorpusEntry>& corpus, const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  out.push_back(timed("coset_counts", "", check_coset_counts));
  out.push_back(timed("odd_factor_jacobi", "", check_jacobi_factor));
  std::vector<std::future<std::vector<CheckResult>>> jobs;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::uint64_t seed = opt.seed + 7919 * i;
    jobs.push_back(std::async(opt.parallel ? std::launch::async : std::launch::deferred,
                              [&, i, seed] { return run_form(corpus[i], opt, seed); }));
  }
  for (auto& j : jobs)
    for (auto& r : j.get()) out.push_back(std::move(r));
  return out;
}

Json report_json(const std::vector<CheckResult>& results) {
  Json checks = Json::array();
  long failed = 0;
  for (const auto& r : results) {
    Json c{{"name", r.name}, {"pass", r.pass}};
    if (!r.form.empty()) c["form"] = r.form;
    if (!r.detail.empty()) c["detail"] = r.detail;
    checks.push_back(c);
    if (!r.pass) ++failed;
  }
  return Json{{"checks", checks},
              {"passed", static_cast<long>(results.size()) - failed},
              {"failed", failed},
              {"ok", failed == 0}};
}

}  // namespace vvmf
