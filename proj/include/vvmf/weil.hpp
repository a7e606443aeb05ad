#pragma once

// The Weil representation of the metaplectic group on C[A], its extension to
// pairs (M, r) mod N, and the right action of the double coset of
// (diag(m^2, 1), 1).

#include "vvmf/cyclo.hpp"
#include "vvmf/finquad.hpp"
#include "vvmf/metaplectic.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace vvmf {

/// Square matrix over one cyclotomic field. Column j holds the image of e_j.
class RepMatrix {
 public:
  RepMatrix() = default;
  RepMatrix(long dim, long modulus);
  static RepMatrix identity(long dim, long modulus);

  long dim() const { return dim_; }
  long modulus() const { return modulus_; }
  const CycNum& at(long row, long col) const { return e_[static_cast<std::size_t>(row * dim_ + col)]; }
  void set(long row, long col, const CycNum& v);

  RepMatrix adjoint() const;  // conjugate transpose
  RepMatrix scaled(const CycNum& s) const;
  RepMatrix lifted(long modulus) const;
  bool is_identity() const;
  bool is_zero() const;
  std::vector<CycNum> apply(const std::vector<CycNum>& v) const;

  friend RepMatrix operator*(const RepMatrix& x, const RepMatrix& y);
  friend bool operator==(const RepMatrix& x, const RepMatrix& y);
  friend bool operator!=(const RepMatrix& x, const RepMatrix& y) { return !(x == y); }

 private:
  long dim_ = 0;
  long modulus_ = 1;
  std::vector<CycNum> e_;
};

/// Standard Hermitian product sum_i x_i conj(y_i).
CycNum inner(const std::vector<CycNum>& x, const std::vector<CycNum>& y);

class WeilRep {
 public:
  explicit WeilRep(DiscForm form);

  const DiscForm& form() const { return form_; }
  long dim() const { return form_.order(); }
  /// lcm(8, N); every matrix entry lies in this field.
  long modulus() const { return form_.base_modulus(); }

  RepMatrix generator(TokenKind g) const;  // T, S or Z (S^-1 allowed)
  RepMatrix rho(const Word& w) const;
  RepMatrix rho(const MetaElem& g) const;

  /// g(A) / g_r(A), the scalar of (diag(r, r), r).
  CycNum rho_unit(long r) const;
  /// rho(Mbar, r) for det Mbar = r^2 mod N, through the lift of Mbar * r^-1 with the
  /// positive square root. In odd signature the value is only fixed up to sign by (Mbar, r).
  RepMatrix rho_qn(const Mat2& mbar, long r) const;

  /// S T^d S^-1 T^a S T^d with a d = 1 mod N.
  Word rd_word(long d) const;
  RepMatrix rho_rd_closed(long d) const;
  RepMatrix rho_um_closed(long m) const;

  /// Scalar chi with rho(g) e_l = chi e_{d l}; requires N | b and N | c.
  CycNum chi(const MetaElem& g) const;
  /// Closed form for g = ((r, Nh; Ns, p), +) with p an odd prime; absent if g has another shape.
  std::optional<CycNum> chi_closed(const Mat2& g) const;

  /// e_l -> e_{h^-1 l} for an isometry given on generators.
  RepMatrix oa_matrix(const std::vector<std::vector<long>>& h) const;
  RepMatrix mul_map(long t) const;       // e_l -> e_{t l}
  RepMatrix preimage_map(long m) const;  // e_l -> sum_{m mu = l} e_mu

  /// Matrix of a -> a | delta for delta in the double coset of (diag(m^2,1),1).
  /// With check set, a second decomposition is computed and compared.
  RepMatrix coset_action(const MetaElem& delta, bool check = false) const;
  RepMatrix coset_action(const DoubleCosetSplit& split) const;

  /// Sign t(g) of the conjugation condition for alpha = (diag(m, n), sqrt n).
  int t_character(const MetaElem& g, long m, long n) const;

 private:
  struct Engine;
  RepMatrix finish(const Engine& e) const;

  DiscForm form_;
  std::vector<long> b_table_;  // N * B(x, y) mod N, row-major
  CycNum g1_, g1_conj_;
  long scale_;  // modulus / level
};

/// alpha gamma alpha^-1 for alpha = (diag(m, n), sqrt n), with its metaplectic sign.
MetaElem conjugate_by_diag(const MetaElem& g, long m, long n);

}  // namespace vvmf
