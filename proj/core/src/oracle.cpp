#include "tprabi/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace tprabi::oracle {

FockHamiltonian build_hamiltonian(const ModelParams& params, Bargmann q,
                                  int fock_cutoff) {
  const int offset = photon_offset(q);
  if (fock_cutoff < 4)
    throw std::invalid_argument("build_hamiltonian: fock_cutoff must be >= 4");
  const int nb = (fock_cutoff - offset) / 2 + 1;

  FockHamiltonian out;
  out.q = q;
  out.fock_cutoff = fock_cutoff;
  out.block_size = nb;
  out.h = linalg::DenseMatrix(2 * nb);
  auto& h = out.h;

  for (int i = 0; i < nb; ++i) {
    const double p = 2.0 * i + offset;
    h(i, i) = p;           // spin up: n_phot + g W
    h(nb + i, nb + i) = p; // spin down: n_phot - g W
    if (i + 1 < nb) {
      const double w = params.g * std::sqrt((p + 1.0) * (p + 2.0));
      h(i, i + 1) = h(i + 1, i) = w;
      h(nb + i, nb + i + 1) = h(nb + i + 1, nb + i) = -w;
    }
    // -(omega/2) sx couples the two spin branches at equal photon number
    h(i, nb + i) = h(nb + i, i) = -0.5 * params.omega_qubit;
  }
  return out;
}

std::vector<OracleLevel> eigen_spectrum(const FockHamiltonian& ham, int k) {
  const int dim = ham.h.n;
  if (k <= 0 || k > dim)
    throw std::invalid_argument("eigen_spectrum: k out of range");
  const int nb = ham.block_size;

  auto eig = linalg::jacobi_symmetric_eigen(ham.h, true);

  std::vector<OracleLevel> out;
  out.reserve(k);
  for (int lev = 0; lev < k; ++lev) {
    // <P> with P = -sx (x) F, F|p> = (-1)^{(p-offset)/2} |p>:
    // -2 sum_j (-1)^j psi_up[j] psi_dn[j]
    double pexp = 0.0;
    for (int j = 0; j < nb; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      pexp += sign * eig.vectors(j, lev) * eig.vectors(nb + j, lev);
    }
    pexp *= -2.0;
    OracleLevel ol;
    ol.energy = eig.values[lev];
    ol.parity_expectation = pexp;
    ol.parity = (pexp >= 0.0) ? +1 : -1;
    out.push_back(ol);
  }
  return out;
}

std::vector<ConvergedLevel> converged_spectrum(const ModelParams& params, Bargmann q,
                                               int k, int fock_cutoff) {
  const auto coarse = eigen_spectrum(build_hamiltonian(params, q, fock_cutoff), k);
  const auto fine = eigen_spectrum(build_hamiltonian(params, q, 2 * fock_cutoff), k);
  std::vector<ConvergedLevel> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) {
    ConvergedLevel cl;
    cl.energy = fine[i].energy;
    cl.parity = fine[i].parity;
    cl.doubling_delta = std::fabs(fine[i].energy - coarse[i].energy);
    out.push_back(cl);
  }
  return out;
}

} // namespace tprabi::oracle
