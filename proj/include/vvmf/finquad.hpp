#pragma once

// Discriminant forms (finite quadratic modules) presented by elementary divisors.

#include "vvmf/cyclo.hpp"
#include "vvmf/numth.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace vvmf {

using IntMatrix = std::vector<std::vector<Int>>;

/// Element of A as residues r_i mod d_i.
struct DfElem {
  std::vector<long> residues;
  friend bool operator==(const DfElem&, const DfElem&) = default;
  friend auto operator<=>(const DfElem&, const DfElem&) = default;
};

/// U * G * V = diag(d) with U, V unimodular.
struct SmithForm {
  IntMatrix u, v;
  std::vector<Int> diag;
};
SmithForm smith_normal_form(const IntMatrix& g);

/// Signature b+ - b- of a nonsingular symmetric rational matrix.
int real_signature(const IntMatrix& g);

class DiscForm {
 public:
  /// Discriminant form L'/L of the even lattice with Gram matrix g.
  static DiscForm from_gram(const IntMatrix& g);
  /// Direct presentation: orders d_1 | ... | d_k, Q on generators, B on generator pairs.
  static DiscForm from_data(std::vector<long> orders, std::vector<Rat> qdiag,
                            std::vector<std::vector<Rat>> bmat);

  const std::vector<long>& orders() const { return orders_; }
  const std::vector<Rat>& qdiag() const { return qdiag_; }
  const std::vector<std::vector<Rat>>& bmat() const { return bmat_; }
  std::size_t rank() const { return orders_.size(); }
  long order() const { return order_; }
  long level() const { return level_; }
  int signature() const { return signature_; }  // in 0..7
  bool odd_signature() const { return signature_ % 2 == 1; }
  /// lcm(8, N): the cyclotomic modulus every value of this form lives in.
  long base_modulus() const { return base_modulus_; }

  // Enumeration in lexicographic residue order.
  long index_of(const DfElem& x) const;
  DfElem element(long index) const;
  std::vector<DfElem> elements() const;
  DfElem zero() const { return DfElem{std::vector<long>(orders_.size(), 0)}; }
  void validate(const DfElem& x) const;

  DfElem add(const DfElem& x, const DfElem& y) const;
  DfElem neg(const DfElem& x) const;
  DfElem mul(const DfElem& x, const Int& t) const;

  Rat q(const DfElem& x) const;                     // Q(x) in [0,1)
  Rat b(const DfElem& x, const DfElem& y) const;    // B(x,y) in [0,1)
  Rat forms(const DfElem& x, const std::optional<DfElem>& y = std::nullopt) const {
    return y ? b(x, *y) : q(x);
  }

  // Integer tables over indices: N*Q(x) mod N and N*B(x,y) mod N.
  const std::vector<long>& q_table() const { return q_num_; }
  long b_num(long i, long j) const;
  long neg_index(long i) const { return neg_[static_cast<std::size_t>(i)]; }
  long mul_index(long i, long t) const;

  /// g_d(A) = sum_x e(d Q(x)), in Q(zeta_{base_modulus}).
  CycNum gauss_sum(long d) const;
  /// Signature recomputed from the Gauss sum by exact comparison with sqrt|A| e(s/8).
  int milgram_signature() const;

  std::vector<DfElem> preimages_mul(const DfElem& x, long m) const;
  /// (A_n, A^n).
  std::pair<std::vector<DfElem>, std::vector<DfElem>> sub_groups(long n) const;

  /// h given by its matrix on generators: h(gamma_j) = sum_i h[i][j] gamma_i.
  bool is_isometry(const std::vector<std::vector<long>>& h) const;
  DfElem apply(const std::vector<std::vector<long>>& h, const DfElem& x) const;

  /// Present when built from a Gram matrix: maps y in Z^r (coordinates of G x for
  /// x in L') to its class in L'/L.
  bool has_lattice() const { return !gram_.empty(); }
  const IntMatrix& gram() const { return gram_; }
  long class_of_dual(const std::vector<Int>& y) const;

 private:
  void finish();  // derives level, tables, signature

  std::vector<long> orders_;
  std::vector<Rat> qdiag_;
  std::vector<std::vector<Rat>> bmat_;
  long order_ = 1;
  long level_ = 1;
  int signature_ = 0;
  long base_modulus_ = 8;
  std::vector<long> stride_;
  std::vector<long> q_num_;
  std::vector<std::vector<long>> bgen_num_;  // N*b_ij mod N
  std::vector<long> neg_;

  IntMatrix gram_;
  IntMatrix smith_rows_;  // rows of U for the nontrivial divisors
};

/// Standard E8 root lattice Gram matrix (Cartan matrix).
IntMatrix e8_gram();

}  // namespace vvmf
