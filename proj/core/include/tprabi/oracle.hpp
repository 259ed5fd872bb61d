#pragma once
#include <vector>

#include "tprabi/linalg.hpp"
#include "tprabi/model.hpp"

// Brute-force reference spectra: diagonalize the full Hamiltonian in a
// truncated Fock basis, independent of the series solution. Used to validate
// every other way of producing an energy in this library.

namespace tprabi::oracle {

// One photon-parity sector q of H = -(omega/2) sx + n_phot + g (a^+a^+ + aa) sz,
// in the basis {|up> (x) |p>, |down> (x) |p> : p = offset, offset+2, ..., <= cutoff}.
struct FockHamiltonian {
  Bargmann q = Bargmann::quarter;
  int fock_cutoff = 0;    // largest photon number kept
  int block_size = 0;     // photon states per spin branch
  linalg::DenseMatrix h;  // dense symmetric, dimension 2*block_size
};

FockHamiltonian build_hamiltonian(const ModelParams& params, Bargmann q,
                                  int fock_cutoff);

struct OracleLevel {
  double energy = 0.0;
  int parity = 0;                  // sign of <psi|P|psi>, P = -sx (x) (-1)^{(n-offset)/2}
  double parity_expectation = 0.0; // should be +-1 up to truncation error
};

// k lowest eigenpairs with parity labels (k <= dimension).
std::vector<OracleLevel> eigen_spectrum(const FockHamiltonian& ham, int k);

struct ConvergedLevel {
  double energy = 0.0;
  int parity = 0;
  double doubling_delta = 0.0; // |E(cutoff) - E(2*cutoff)|, caller judges
};

// Solve at fock_cutoff and 2*fock_cutoff, pair levels by ascending index,
// report the shift. Energies and parities come from the larger basis.
std::vector<ConvergedLevel> converged_spectrum(const ModelParams& params, Bargmann q,
                                               int k, int fock_cutoff);

} // namespace tprabi::oracle
