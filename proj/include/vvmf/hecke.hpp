#pragma once

// Truncated Fourier expansions of C[A]-valued forms and the Hecke operators
// T(m^2)* acting on them.

#include "vvmf/weil.hpp"

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <vector>

namespace vvmf {

struct ExpKey {
  long lambda;  // index into the form's element enumeration
  Rat n;

  friend bool operator==(const ExpKey& x, const ExpKey& y) { return x.lambda == y.lambda && x.n == y.n; }
  friend bool operator<(const ExpKey& x, const ExpKey& y) {
    return x.lambda != y.lambda ? x.lambda < y.lambda : x.n < y.n;
  }
};

/// Coefficients c(lambda, n) for 0 <= n < prec; absent keys are zero.
class FourierExpansion {
 public:
  FourierExpansion(std::shared_ptr<const DiscForm> form, Rat weight, Rat prec);

  const DiscForm& form() const { return *form_; }
  std::shared_ptr<const DiscForm> form_ptr() const { return form_; }
  const Rat& weight() const { return weight_; }
  const Rat& prec() const { return prec_; }
  const std::map<ExpKey, CycNum>& coeffs() const { return coeffs_; }

  /// Zero outside the support; PrecisionError when n >= prec.
  CycNum coeff(long lambda, const Rat& n) const;
  /// Setting zero erases the key.
  void set(long lambda, const Rat& n, const CycNum& c);
  void add(long lambda, const Rat& n, const CycNum& c);
  bool in_support(long lambda, const Rat& n) const;

  FourierExpansion truncated(const Rat& prec) const;

  friend bool operator==(const FourierExpansion& x, const FourierExpansion& y);

 private:
  std::shared_ptr<const DiscForm> form_;
  Rat weight_, prec_;
  std::map<ExpKey, CycNum> coeffs_;
};

/// All (a, b; 0, d) with ad = D, 0 <= b < d, and gcd(a, b, d) = 1 when primitive is set.
std::vector<Mat2> coset_reps(long D, bool primitive);

struct HeckeOptions {
  std::optional<Rat> target_prec;  // demand at least this output precision
  bool check_cosets = false;        // verify each coset action by a second decomposition
};

/// m^(k-2) sum over primitive cosets of f |_{k,A} delta. Output precision prec / m^2.
FourierExpansion apply_T_general(const FourierExpansion& f, long m, const HeckeOptions& opt = {});

/// T((p, 0; 0, 1), r) for p = r^2 mod N (even signature).
FourierExpansion apply_T_p_even(const FourierExpansion& f, long p, long r);
/// T(p^2)* for p prime to N, even signature.
FourierExpansion apply_T_p2_even(const FourierExpansion& f, long p);
/// T(p^2)* for odd p prime to N, odd signature.
FourierExpansion apply_T_p2_odd(const FourierExpansion& f, long p);

/// The scalar eps_p^(sig + (-1/|A|)) (p / |A| 2^sig) of the odd-signature formula.
CycNum odd_hecke_factor(const DiscForm& form, long p);

/// Random ((a, b; c, d), +) with m | c, n | b and b = c = 0 mod N.
MetaElem random_gamma_00(std::mt19937_64& rng, long level, long m, long n, long bound);

/// True iff t is nontrivial on Gamma_0(m) cap Gamma^0(n), decided on T^(nN), U^(mN) and sampled elements.
bool hecke_vanishes(const WeilRep& w, long m, long n, std::mt19937_64& rng, int samples = 40);

/// b = lambda * c on every key of b's range; returns lambda, or nothing if not proportional or c vanishes there.
std::optional<CycNum> eigenvalue(const FourierExpansion& c, const FourierExpansion& b);

}  // namespace vvmf
