#include "vvmf/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vvmf {

namespace {

using RatMatrix = std::vector<std::vector<Rat>>;

RatMatrix to_rat(const IntMatrix& g) {
  RatMatrix a(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (const Int& x : g[i]) a[i].emplace_back(x);
  return a;
}

RatMatrix inverse(RatMatrix a) {
  const std::size_t n = a.size();
  RatMatrix inv(n, std::vector<Rat>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw DomainError("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rat s = 1 / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

Int bilinear(const IntMatrix& g, const std::vector<Int>& x, const std::vector<Int>& y) {
  Int s = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) s += x[i] * g[i][j] * y[j];
  return s;
}

Int floor_of(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

struct Enumerator {
  RatMatrix q;  // q[i][i] > 0 and q[i][j] (j > i) of sum q_ii (z_i + sum q_ij z_j)^2
  Rat bound;
  bool strict;
  const std::function<void(const std::vector<Int>&, const Rat&)>* f;
  std::vector<Int> z;

  void run(long i, const Rat& remaining) {
    Rat s = 0;
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < q.size(); ++j) s += q[i][j] * z[j];
    Rat t = remaining / q[i][i];
    double r = std::sqrt(t.get_d());
    Int lo = floor_of(-s) - static_cast<long>(std::ceil(r)) - 1;
    Int hi = floor_of(-s) + static_cast<long>(std::ceil(r)) + 2;
    for (Int zi = lo; zi <= hi; ++zi) {
      Rat u = zi + s;
      Rat used = q[i][i] * u * u;
      if (used > remaining) continue;
      z[i] = zi;
      Rat rest = remaining - used;
      if (i == 0) {
        if (!strict || rest > 0) (*f)(z, bound - rest);
      } else {
        run(i - 1, rest);
      }
    }
    z[i] = 0;
  }
};

// Greedy set of pairwise orthogonal short vectors spanning L tensor Q.
std::vector<std::vector<Int>> orthogonal_frame(const IntMatrix& g) {
  const std::size_t r = g.size();
  Rat bound = 1;
  while (true) {
    auto vs = short_vectors(g, bound);
    std::vector<std::pair<Int, std::vector<Int>>> by_norm;
    for (auto& v : vs)
      if (std::any_of(v.begin(), v.end(), [](const Int& x) { return x != 0; }))
        by_norm.emplace_back(bilinear(g, v, v), v);
    std::sort(by_norm.begin(), by_norm.end());
    std::vector<std::vector<Int>> frame;
    for (const auto& [norm, v] : by_norm) {
      bool ok = true;
      for (const auto& w : frame)
        if (bilinear(g, v, w) != 0) {
          ok = false;
          break;
        }
      if (ok) frame.push_back(v);
      if (frame.size() == r) return frame;
    }
    bound *= 2;
  }
}

void add_count(std::map<ExpKey, Int>& counts, long lambda, const Rat& n, const Int& c) {
  auto [it, inserted] = counts.emplace(ExpKey{lambda, n}, c);
  if (!inserted) it->second += c;
}

void theta_enumerate(const DiscForm& a, const Rat& prec, std::map<ExpKey, Int>& counts) {
  RatMatrix ginv = inverse(to_rat(a.gram()));
  enumerate_form(ginv, 2 * prec, true, [&](const std::vector<Int>& y, const Rat& v) {
    add_count(counts, a.class_of_dual(y), v / 2, 1);
  });
}

void theta_frame(const DiscForm& a, const Rat& prec, std::map<ExpKey, Int>& counts) {
  const IntMatrix& g = a.gram();
  const std::size_t r = g.size();
  auto frame = orthogonal_frame(g);
  std::vector<Int> norms;
  for (const auto& v : frame) norms.push_back(bilinear(g, v, v));
  IntMatrix gb(r, std::vector<Int>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) gb[i][j] += g[i][k] * frame[j][k];
  SmithForm snf = smith_normal_form(gb);
  RatMatrix uinv = inverse(to_rat(snf.u));

  std::vector<Int> t(r, 0);
  std::vector<long> orders;
  for (const Int& d : snf.diag) orders.push_back(to_long(abs(d)));
  while (true) {
    std::vector<Int> y(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      Rat s = 0;
      for (std::size_t j = 0; j < r; ++j) s += uinv[i][j] * t[j];
      if (s.get_den() != 1) throw InvariantError("theta frame: U is not unimodular");
      y[i] = s.get_num();
    }
    const long lambda = a.class_of_dual(y);
    // Exponents n_i (c_i + k)^2 / 2 of each one-dimensional factor.
    std::vector<std::vector<Rat>> factors(r);
    Int den = 1;
    for (std::size_t i = 0; i < r; ++i) {
      Int dot = 0;
      for (std::size_t j = 0; j < r; ++j) dot += frame[i][j] * y[j];
      Rat c0 = frac(ratio(dot, norms[i]));
      Rat half = Rat(norms[i]) / 2;
      for (long sgn : {1L, -1L})
        for (long k = sgn == 1 ? 0 : -1;; k += sgn) {
          Rat u = c0 + k;
          Rat e = half * u * u;
          if (e >= prec) break;
          factors[i].push_back(e);
          den = lcm(den, Int(e.get_den()));
        }
    }
    const long d = to_long(den);
    const long len = to_long(floor_of(prec * d)) + 1;
    std::vector<Int> acc(static_cast<std::size_t>(len), 0), next;
    acc[0] = 1;
    for (std::size_t i = 0; i < r; ++i) {
      next.assign(static_cast<std::size_t>(len), 0);
      std::vector<long> shifts;
      for (const Rat& e : factors[i]) shifts.push_back(to_long(Rat(e * d).get_num()));
      for (long j = 0; j < len; ++j) {
        if (acc[j] == 0) continue;
        for (long s : shifts)
          if (j + s < len) next[j + s] += acc[j];
      }
      acc.swap(next);
    }
    for (long j = 0; j < len; ++j)
      if (acc[j] != 0 && ratio(j, d) < prec) add_count(counts, lambda, ratio(j, d), acc[j]);

    std::size_t i = 0;
    while (i < r && ++t[i] == orders[i]) t[i++] = 0;
    if (i == r) break;
  }
}

}  // namespace

void check_positive_even(const IntMatrix& g) {
  const std::size_t r = g.size();
  if (r == 0) throw DomainError("empty Gram matrix");
  for (std::size_t i = 0; i < r; ++i) {
    if (g[i].size() != r) throw DomainError("Gram matrix is not square");
    if (g[i][i] % 2 != 0) throw DomainError("Gram matrix has an odd diagonal entry; not an even lattice");
    for (std::size_t j = 0; j < r; ++j)
      if (g[i][j] != g[j][i]) throw DomainError("Gram matrix is not symmetric");
  }
  if (real_signature(g) != static_cast<int>(r)) throw DomainError("Gram matrix is not positive definite");
}

void enumerate_form(const RatMatrix& a, const Rat& bound, bool strict,
                    const std::function<void(const std::vector<Int>&, const Rat&)>& f) {
  const std::size_t n = a.size();
  RatMatrix q = a;
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i][i] <= 0) throw DomainError("form is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  if (bound < 0 || (strict && bound == 0)) return;
  Enumerator e{q, bound, strict, &f, std::vector<Int>(n, 0)};
  e.run(static_cast<long>(n) - 1, bound);
}

std::vector<std::vector<Int>> short_vectors(const IntMatrix& g, const Rat& bound) {
  check_positive_even(g);
  std::vector<std::vector<Int>> out;
  enumerate_form(to_rat(g), 2 * bound, false, [&](const std::vector<Int>& z, const Rat&) { out.push_back(z); });
  std::sort(out.begin(), out.end());
  return out;
}

FourierExpansion theta_series(std::shared_ptr<const DiscForm> form, const Rat& prec, ThetaMethod method) {
  if (!form->has_lattice()) throw DomainError("theta_series needs a form built from a Gram matrix");
  const IntMatrix& g = form->gram();
  check_positive_even(g);
  const long r = static_cast<long>(g.size());
  if (method == ThetaMethod::Auto) {
    // Expected number of dual vectors in the ellipsoid.
    double vol = std::pow(std::numbers::pi, r / 2.0) / std::tgamma(r / 2.0 + 1);
    double est = vol * std::pow(2 * prec.get_d(), r / 2.0) * std::sqrt(static_cast<double>(form->order()));
    method = est <= 2e5 ? ThetaMethod::Enumerate : ThetaMethod::Frame;
  }
  std::map<ExpKey, Int> counts;
  if (method == ThetaMethod::Enumerate)
    theta_enumerate(*form, prec, counts);
  else
    theta_frame(*form, prec, counts);
  FourierExpansion out(form, ratio(r, 2), prec);
  for (const auto& [key, c] : counts) out.set(key.lambda, key.n, CycNum(Rat(c)));
  return out;
}

FourierExpansion theta_series(const IntMatrix& g, const Rat& prec, ThetaMethod method) {
  check_positive_even(g);
  return theta_series(std::make_shared<const DiscForm>(DiscForm::from_gram(g)), prec, method);
}

std::vector<std::complex<double>> evaluate(const FourierExpansion& f, std::complex<double> tau) {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(f.form().order()));
  const std::complex<double> two_pi_i(0, 2 * std::numbers::pi);
  for (const auto& [key, c] : f.coeffs()) out[key.lambda] += c.embed() * std::exp(two_pi_i * key.n.get_d() * tau);
  return out;
}

std::complex<double> automorphy_root(const MetaElem& g, std::complex<double> tau) {
  std::complex<double> z = g.m.c.get_d() * tau + g.m.d.get_d();
  return static_cast<double>(g.sign) * std::polar(std::sqrt(std::abs(z)), std::arg(z) / 2);
}

double modularity_defect(const FourierExpansion& f, const WeilRep& w, const MetaElem& g, std::complex<double> tau) {
  const Mat2& m = g.m;
  std::complex<double> gt = (m.a.get_d() * tau + m.b.get_d()) / (m.c.get_d() * tau + m.d.get_d());
  auto lhs = evaluate(f, gt);
  auto x = evaluate(f, tau);
  RepMatrix rho = w.rho(g);
  const long two_k = to_long(Rat(2 * f.weight()).get_num());
  std::complex<double> j = std::pow(automorphy_root(g, tau), static_cast<int>(two_k));
  double worst = 0, scale = 1;
  for (std::size_t mu = 0; mu < lhs.size(); ++mu) {
    std::complex<double> v = 0;
    for (std::size_t l = 0; l < x.size(); ++l) v += rho.at(static_cast<long>(mu), static_cast<long>(l)).embed() * x[l];
    worst = std::max(worst, std::abs(lhs[mu] - j * v));
    scale = std::max(scale, std::abs(lhs[mu]));
  }
  return worst / scale;
}

}  // namespace vvmf
