#pragma once

// Component-wise theta series of positive definite even lattices.

#include "vvmf/hecke.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace vvmf {

/// Throws DomainError unless g is square, symmetric, even and positive definite.
void check_positive_even(const IntMatrix& g);

/// Calls f(z, z^T A z) for every z in Z^r with z^T A z <= bound (or < bound when strict).
/// A must be a positive definite symmetric rational matrix.
void enumerate_form(const std::vector<std::vector<Rat>>& a, const Rat& bound, bool strict,
                    const std::function<void(const std::vector<Int>&, const Rat&)>& f);

/// Integer vectors x with x^T G x / 2 <= bound, 0 included, sorted.
std::vector<std::vector<Int>> short_vectors(const IntMatrix& g, const Rat& bound);

enum class ThetaMethod { Auto, Enumerate, Frame };

/// c(lambda, n) = #{x in lambda + L : x^2 / 2 = n} for n < prec; weight rank / 2.
FourierExpansion theta_series(const IntMatrix& g, const Rat& prec, ThetaMethod method = ThetaMethod::Auto);
FourierExpansion theta_series(std::shared_ptr<const DiscForm> form, const Rat& prec,
                              ThetaMethod method = ThetaMethod::Auto);

/// Truncated evaluation sum c(lambda, n) e(n tau), one entry per element of A.
std::vector<std::complex<double>> evaluate(const FourierExpansion& f, std::complex<double> tau);

/// Holomorphic square root of c tau + d carried by g.
std::complex<double> automorphy_root(const MetaElem& g, std::complex<double> tau);

/// max over lambda of |F(g tau) - phi(tau)^2k rho(g) F(tau)|, divided by max(1, |F(g tau)|).
double modularity_defect(const FourierExpansion& f, const WeilRep& w, const MetaElem& g, std::complex<double> tau);

}  // namespace vvmf
