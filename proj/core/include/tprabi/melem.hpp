#pragma once
#include <stdexcept>

#include "tprabi/linalg.hpp"
#include "tprabi/model.hpp"

// Qubit-induced couplings between the two squeezed displaced-frame ladders.
// The closed form is an associated Legendre function of argument beta; an
// independent Fock-space overlap computation is provided as a cross-check.

namespace tprabi::melem {

struct NotConvergedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Associated Legendre P_l^k(x) for integer degree l >= 0 and any integer
// order, |x| < 1 (std::domain_error otherwise), with the Condon-Shortley
// phase. |k| > l yields an exact 0; negative orders via
// P_l^{-k} = (-1)^k (l-k)!/(l+k)! P_l^k.
double legendre_assoc(int degree, int order, double x);

// Coupling between ladder states m and n in the photon-parity sector q:
//   D_mn = (omega/2) (-1)^m sqrt(beta)
//          * sqrt([2(n+q-1/4)]! / [2(m+q-1/4)]!) * P_{m+n+2(q-1/4)}^{m-n}(beta).
// Symmetric in (m, n) even though the closed form hides it.
double d_element(const ModelParams& params, Bargmann q, int m, int n);

struct DMatrix {
  Bargmann q = Bargmann::quarter;
  int size = 0;
  double omega_qubit = 0.0; // parameters the entries were built from
  double g = 0.0;
  linalg::DenseMatrix d; // d(m, n) = D_mn
};

DMatrix build_dmatrix(const ModelParams& params, Bargmann q, int size);

// Same coupling computed without the closed form: diagonalize the two photon
// Hamiltonians n_phot +/- g (a^+a^+ + aa) in the truncated Fock sector, fix
// each eigenvector's sign by its leading Fock amplitude, and take
// (omega/2) * <m_+|n_->. Runs at fock_cutoff and twice that; throws
// NotConvergedError if the two disagree.
double overlap_oracle(const ModelParams& params, Bargmann q, int m, int n,
                      int fock_cutoff);

} // namespace tprabi::melem
