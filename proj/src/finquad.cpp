#include "vvmf/finquad.hpp"

#include <algorithm>
#include <cstdlib>

namespace vvmf {

namespace {

using RatMatrix = std::vector<std::vector<Rat>>;

RatMatrix rat_inverse(const IntMatrix& g) {
  const std::size_t n = g.size();
  RatMatrix a(n, std::vector<Rat>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g[i][j];
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw DomainError("degenerate lattice");
    std::swap(a[p], a[c]);
    Rat inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  RatMatrix out(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
  return out;
}

Int int_det(const IntMatrix& g) {
  const std::size_t n = g.size();
  RatMatrix a(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g[i][j];
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rat f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det.get_num();
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& g) {
  const std::size_t n = g.size();
  IntMatrix a = g;
  IntMatrix u(n, std::vector<Int>(n, 0)), v(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = v[i][i] = 1;

  auto row_addmul = [&](std::size_t dst, std::size_t src, const Int& f) {  // row dst -= f*row src
    for (std::size_t k = 0; k < n; ++k) {
      a[dst][k] -= f * a[src][k];
      u[dst][k] -= f * u[src][k];
    }
  };
  auto col_addmul = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t k = 0; k < n; ++k) {
      a[k][dst] -= f * a[k][src];
      v[k][dst] -= f * v[k][src];
    }
  };

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Pivot on the entry of least absolute value.
      std::size_t pi = n, pj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (pi == n || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == n) break;
      std::swap(a[t], a[pi]);
      std::swap(u[t], u[pi]);
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a[k][t], a[k][pj]);
        std::swap(v[k][t], v[k][pj]);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a[i][t] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        row_addmul(i, t, q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        col_addmul(j, t, q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into the pivot row and repeat.
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            row_addmul(t, i, Int(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a[t][t] < 0) {
      for (std::size_t k = 0; k < n; ++k) {
        a[t][k] = -a[t][k];
        u[t][k] = -u[t][k];
      }
    }
  }
  SmithForm s;
  s.u = std::move(u);
  s.v = std::move(v);
  for (std::size_t i = 0; i < n; ++i) s.diag.push_back(a[i][i]);
  return s;
}

int real_signature(const IntMatrix& g) {
  // Faddeev-LeVerrier characteristic polynomial; all roots are real, so
  // Descartes' rule counts them exactly.
  const std::size_t n = g.size();
  RatMatrix a(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g[i][j];
  std::vector<Rat> c(n + 1, 0);  // c[k] coefficient of x^(n-k)
  c[0] = 1;
  RatMatrix m(n, std::vector<Rat>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{k-1} I
    RatMatrix next(n, std::vector<Rat>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rat s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
        next[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[k - 1];
    m = next;
    Rat tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * m[l][i];
    c[k] = -tr / Rat(static_cast<long>(k));
  }
  if (c[n] == 0) throw DomainError("degenerate lattice");
  auto changes = [&](bool negate) {
    int count = 0, last = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      int s = sgn(c[k]);
      if (negate && ((n - k) % 2 == 1)) s = -s;
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return changes(false) - changes(true);
}

// ---------------------------------------------------------------------------

DiscForm DiscForm::from_gram(const IntMatrix& g) {
  const std::size_t n = g.size();
  if (n == 0) throw DomainError("empty Gram matrix");
  for (const auto& row : g)
    if (row.size() != n) throw DomainError("Gram matrix must be square");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (g[i][j] != g[j][i]) throw DomainError("Gram matrix must be symmetric");
    if (g[i][i] % 2 != 0) throw DomainError("not an even lattice");
  }
  if (int_det(g) == 0) throw DomainError("degenerate lattice");

  SmithForm s = smith_normal_form(g);
  IntMatrix uinv(n, std::vector<Int>(n));
  {
    RatMatrix r = rat_inverse(s.u);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) uinv[i][j] = r[i][j].get_num();
  }
  RatMatrix ginv = rat_inverse(g);

  DiscForm a;
  a.gram_ = g;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (s.diag[i] != 1) keep.push_back(i);
  // Generator gamma_i has dual coordinates x_i = G^{-1} U^{-1} e_i.
  std::vector<std::vector<Rat>> xs;
  for (std::size_t i : keep) {
    std::vector<Rat> x(n, 0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) x[r] += ginv[r][c] * Rat(uinv[c][i]);
    xs.push_back(x);
    a.orders_.push_back(to_long(s.diag[i]));
    a.smith_rows_.push_back(s.u[i]);
  }
  auto pair = [&](const std::vector<Rat>& x, const std::vector<Rat>& y) {
    Rat v = 0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) v += x[r] * Rat(g[r][c]) * y[c];
    return v;
  };
  const std::size_t k = keep.size();
  a.bmat_.assign(k, std::vector<Rat>(k));
  for (std::size_t i = 0; i < k; ++i) {
    a.qdiag_.push_back(frac(pair(xs[i], xs[i]) / 2));
    for (std::size_t j = 0; j < k; ++j) a.bmat_[i][j] = frac(pair(xs[i], xs[j]));
  }
  a.finish();
  int lattice_sig = static_cast<int>(mod(static_cast<long>(real_signature(g)), 8L));
  if (lattice_sig != a.signature_)
    throw InvariantError("Milgram signature disagrees with the lattice signature");
  return a;
}

DiscForm DiscForm::from_data(std::vector<long> orders, std::vector<Rat> qdiag,
                             std::vector<std::vector<Rat>> bmat) {
  const std::size_t k = orders.size();
  if (qdiag.size() != k || bmat.size() != k) throw DomainError("discriminant form data: inconsistent arity");
  for (std::size_t i = 0; i < k; ++i) {
    if (orders[i] < 2) throw DomainError("elementary divisors must be >= 2");
    if (i + 1 < k && orders[i + 1] % orders[i] != 0) throw DomainError("elementary divisors must form a divisor chain");
    if (bmat[i].size() != k) throw DomainError("bmat must be square");
  }
  DiscForm a;
  a.orders_ = std::move(orders);
  a.qdiag_.clear();
  for (auto& q : qdiag) a.qdiag_.push_back(frac(q));
  a.bmat_ = std::move(bmat);
  for (auto& row : a.bmat_)
    for (auto& x : row) x = frac(x);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (a.bmat_[i][j] != a.bmat_[j][i]) throw DomainError("bmat must be symmetric");
      if (frac(Rat(a.orders_[i]) * a.bmat_[i][j]) != 0) throw DomainError("B is not well defined on the given orders");
    }
    if (a.bmat_[i][i] != frac(2 * a.qdiag_[i])) throw DomainError("bmat diagonal must equal 2*Q mod 1");
    Rat d = a.orders_[i];
    if (frac(d * d * a.qdiag_[i]) != 0) throw DomainError("Q is not well defined on the given orders");
  }
  a.finish();
  return a;
}

void DiscForm::finish() {
  const std::size_t k = orders_.size();
  order_ = 1;
  for (long d : orders_) order_ *= d;
  Int lev = 1;
  for (std::size_t i = 0; i < k; ++i) {
    lev = lcm(lev, Int(qdiag_[i].get_den()));
    for (std::size_t j = 0; j < k; ++j) lev = lcm(lev, Int(bmat_[i][j].get_den()));
  }
  level_ = to_long(lev);
  base_modulus_ = lcm(8L, level_);
  stride_.assign(k, 1);
  for (std::size_t i = k; i-- > 1;) stride_[i - 1] = stride_[i] * orders_[i];

  bgen_num_.assign(k, std::vector<long>(k));
  std::vector<long> qgen(k);
  for (std::size_t i = 0; i < k; ++i) {
    qgen[i] = to_long(Rat(qdiag_[i] * level_).get_num());
    for (std::size_t j = 0; j < k; ++j) bgen_num_[i][j] = to_long(Rat(bmat_[i][j] * level_).get_num());
  }
  q_num_.assign(static_cast<std::size_t>(order_), 0);
  neg_.assign(static_cast<std::size_t>(order_), 0);
  for (long idx = 0; idx < order_; ++idx) {
    DfElem x = element(idx);
    long v = 0;
    for (std::size_t i = 0; i < k; ++i) {
      long r = x.residues[i];
      v = mod(v + mod(r * r, level_) * qgen[i], level_);
      for (std::size_t j = i + 1; j < k; ++j) v = mod(v + mod(r * x.residues[j], level_) * bgen_num_[i][j], level_);
    }
    q_num_[static_cast<std::size_t>(idx)] = v;
    neg_[static_cast<std::size_t>(idx)] = index_of(neg(x));
  }
  // Non-degeneracy: no nonzero element pairs trivially with every generator.
  for (long idx = 1; idx < order_; ++idx) {
    DfElem x = element(idx);
    bool radical = true;
    for (std::size_t j = 0; j < k && radical; ++j) {
      long v = 0;
      for (std::size_t i = 0; i < k; ++i) v = mod(v + x.residues[i] * bgen_num_[i][j], level_);
      if (v != 0) radical = false;
    }
    if (radical) throw DomainError("degenerate discriminant form");
  }
  signature_ = milgram_signature();
  if (odd_signature() && level_ % 4 != 0) throw InvariantError("odd signature requires 4 | level");
}

long DiscForm::index_of(const DfElem& x) const {
  validate(x);
  long idx = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) idx += mod(x.residues[i], orders_[i]) * stride_[i];
  return idx;
}

DfElem DiscForm::element(long index) const {
  DfElem x;
  x.residues.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    x.residues[i] = index / stride_[i];
    index %= stride_[i];
  }
  return x;
}

std::vector<DfElem> DiscForm::elements() const {
  std::vector<DfElem> out;
  out.reserve(static_cast<std::size_t>(order_));
  for (long i = 0; i < order_; ++i) out.push_back(element(i));
  return out;
}

void DiscForm::validate(const DfElem& x) const {
  if (x.residues.size() != orders_.size())
    throw DomainError("element has " + std::to_string(x.residues.size()) + " residues, form has rank " +
                      std::to_string(orders_.size()));
}

DfElem DiscForm::add(const DfElem& x, const DfElem& y) const {
  validate(x);
  validate(y);
  DfElem r = x;
  for (std::size_t i = 0; i < orders_.size(); ++i) r.residues[i] = mod(x.residues[i] + y.residues[i], orders_[i]);
  return r;
}

DfElem DiscForm::neg(const DfElem& x) const {
  validate(x);
  DfElem r = x;
  for (std::size_t i = 0; i < orders_.size(); ++i) r.residues[i] = mod(-x.residues[i], orders_[i]);
  return r;
}

DfElem DiscForm::mul(const DfElem& x, const Int& t) const {
  validate(x);
  DfElem r = x;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    long tm = to_long(mod(t, Int(orders_[i])));
    r.residues[i] = mod(tm * mod(x.residues[i], orders_[i]), orders_[i]);
  }
  return r;
}

Rat DiscForm::q(const DfElem& x) const {
  Rat r(q_num_[static_cast<std::size_t>(index_of(x))], level_);
  r.canonicalize();
  return r;
}

Rat DiscForm::b(const DfElem& x, const DfElem& y) const {
  Rat r(b_num(index_of(x), index_of(y)), level_);
  r.canonicalize();
  return r;
}

long DiscForm::b_num(long i, long j) const {
  DfElem x = element(i), y = element(j);
  long v = 0;
  const std::size_t k = orders_.size();
  for (std::size_t a = 0; a < k; ++a) {
    if (x.residues[a] == 0) continue;
    for (std::size_t c = 0; c < k; ++c)
      v = mod(v + mod(x.residues[a] * y.residues[c], level_) * bgen_num_[a][c], level_);
  }
  return v;
}

long DiscForm::mul_index(long i, long t) const { return index_of(mul(element(i), Int(t))); }

CycNum DiscForm::gauss_sum(long d) const {
  ZetaAccumulator acc(base_modulus_);
  const long scale = base_modulus_ / level_;
  for (long v : q_num_) acc.add_monomial(mod(d, level_) * v % level_ * scale, 1);
  return acc.take();
}

int DiscForm::milgram_signature() const {
  CycNum g = gauss_sum(1);
  CycNum root = CycNum::sqrt_of(order_);
  for (int s = 0; s < 8; ++s)
    if (g == root * zeta(s, 8)) return s;
  throw DomainError("degenerate form: Gauss sum matches no e(s/8) sqrt|A|");
}

std::vector<DfElem> DiscForm::preimages_mul(const DfElem& x, long m) const {
  const long target = index_of(x);
  std::vector<DfElem> out;
  for (long i = 0; i < order_; ++i)
    if (mul_index(i, m) == target) out.push_back(element(i));
  return out;
}

std::pair<std::vector<DfElem>, std::vector<DfElem>> DiscForm::sub_groups(long n) const {
  std::vector<DfElem> kernel, image;
  std::vector<char> seen(static_cast<std::size_t>(order_), 0);
  for (long i = 0; i < order_; ++i) {
    long j = mul_index(i, n);
    if (j == 0) kernel.push_back(element(i));
    seen[static_cast<std::size_t>(j)] = 1;
  }
  for (long i = 0; i < order_; ++i)
    if (seen[static_cast<std::size_t>(i)]) image.push_back(element(i));
  return {kernel, image};
}

DfElem DiscForm::apply(const std::vector<std::vector<long>>& h, const DfElem& x) const {
  validate(x);
  const std::size_t k = orders_.size();
  if (h.size() != k) throw DomainError("isometry matrix has wrong size");
  DfElem r = zero();
  for (std::size_t i = 0; i < k; ++i) {
    if (h[i].size() != k) throw DomainError("isometry matrix has wrong size");
    long v = 0;
    for (std::size_t j = 0; j < k; ++j) v = mod(v + mod(h[i][j], orders_[i]) * x.residues[j], orders_[i]);
    r.residues[i] = v;
  }
  return r;
}

bool DiscForm::is_isometry(const std::vector<std::vector<long>>& h) const {
  const std::size_t k = orders_.size();
  if (h.size() != k) throw DomainError("isometry matrix has wrong size");
  // h(gamma_j) must have order dividing d_j.
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i)
      if (mod(h[i][j] * orders_[j], orders_[i]) != 0) throw DomainError("map is not well defined on A");
  std::vector<char> hit(static_cast<std::size_t>(order_), 0);
  for (long idx = 0; idx < order_; ++idx) {
    DfElem x = element(idx);
    long j = index_of(apply(h, x));
    if (hit[static_cast<std::size_t>(j)]) return false;
    hit[static_cast<std::size_t>(j)] = 1;
    if (q_num_[static_cast<std::size_t>(j)] != q_num_[static_cast<std::size_t>(idx)]) return false;
  }
  return true;
}

long DiscForm::class_of_dual(const std::vector<Int>& y) const {
  if (!has_lattice()) throw DomainError("form has no lattice presentation");
  DfElem x = zero();
  for (std::size_t i = 0; i < smith_rows_.size(); ++i) {
    Int v = 0;
    for (std::size_t c = 0; c < y.size(); ++c) v += smith_rows_[i][c] * y[c];
    x.residues[i] = to_long(mod(v, Int(orders_[i])));
  }
  return index_of(x);
}

IntMatrix e8_gram() {
  IntMatrix g(8, std::vector<Int>(8, 0));
  for (int i = 0; i < 8; ++i) g[i][i] = 2;
  auto edge = [&](int a, int b) { g[a][b] = g[b][a] = -1; };
  for (int i = 0; i + 1 < 7; ++i) edge(i, i + 1);
  edge(4, 7);
  return g;
}

}  // namespace vvmf
