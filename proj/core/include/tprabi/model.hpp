#pragma once
#include <array>
#include <string>
#include <vector>

// Model definition for the two-photon Rabi Hamiltonian
//   H = -(omega/2) sx + n_phot + g (a^+a^+ + aa) sz
// with the cavity frequency fixed to 1. The coupling range is 0 <= g < 1/2;
// at g = 1/2 the discrete spectrum collapses and the squeezed frame below
// stops existing.

namespace tprabi {

enum class Parity : int { plus = +1, minus = -1 };

inline int parity_sign(Parity p) { return static_cast<int>(p); }

// Photon-parity label q of the invariant subspace. Kept as a tag (the value
// is exactly 1/4 or 3/4) so sector bookkeeping stays integer-exact.
enum class Bargmann { quarter, three_quarter };

inline double q_value(Bargmann q) { return q == Bargmann::quarter ? 0.25 : 0.75; }

// Photon numbers in the sector are 2k + offset.
inline int photon_offset(Bargmann q) { return q == Bargmann::quarter ? 0 : 1; }

std::string to_string(Bargmann q);
std::string to_string(Parity p);

struct Sector {
  Bargmann q = Bargmann::quarter;
  Parity parity = Parity::plus;
};

// Fixed enumeration order used everywhere output is produced.
std::array<Sector, 4> all_sectors();

struct ModelParams {
  double omega_qubit = 1.0; // qubit splitting, in units of the cavity frequency
  double g = 0.0;           // two-photon coupling; collapse at g = 1/2

  ModelParams(double omega_in, double g_in); // throws std::invalid_argument
};

// Squeezed-frame constants. beta -> 0 as g -> 1/2; u, v diverge there.
struct BogoliubovFrame {
  double beta = 1.0;          // sqrt(1 - 4 g^2)
  double u = 1.0;             // u^2 - v^2 = 1, u^2 + v^2 = 1/beta
  double v = 0.0;             // u v = g / beta
  double squeeze_ratio = 0.0; // v/(2u) = g/(1+beta), in [0, 1/2)
};

BogoliubovFrame make_frame(const ModelParams& params);

// Energy of the n-th pole of the series solution, n >= 0:
//   E_n = 2 beta (n + q) - 1/2.
double pole_energy(const BogoliubovFrame& frame, const Sector& sector, int n);

// Pole ladder floor (the n = 0 pole). The whole ladder compresses onto
// E = -1/2 as g -> 1/2.
double first_baseline(const BogoliubovFrame& frame, const Sector& sector);

// Spectrum at g = 0: E_n = parity * (omega/2) (-1)^n + 2 (n + q - 1/4),
// n = 0..n_max inclusive.
std::vector<double> decoupled_levels(const ModelParams& params, const Sector& sector,
                                     int n_max);

struct BaselineCount {
  int count = 0;                    // levels strictly below the g -> 0 ladder floor
  std::vector<int> boundary_levels; // n sitting exactly on the floor (omega at a
                                    // multiple of 4; counted in neither bucket)
};

// How many decoupled levels start below the ladder floor. These are the
// levels that survive as isolated states under the collapsing ladder.
BaselineCount below_baseline_count(const ModelParams& params, const Sector& sector);

// Affine map between the series variable x and energy:
//   E = 2 beta (x + q) - 1/2  <=>  x = (E + 1/2) / (2 beta) - q.
double x_to_energy(const BogoliubovFrame& frame, const Sector& sector, double x);
double energy_to_x(const BogoliubovFrame& frame, const Sector& sector, double energy);

} // namespace tprabi
