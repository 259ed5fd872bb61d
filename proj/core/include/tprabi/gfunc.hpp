#pragma once
#include <stdexcept>
#include <string>
#include <vector>

#include "tprabi/model.hpp"

// The transcendental function G whose zeros are the regular spectrum. Built
// from a three-term recurrence in the squeezed frame; each sector (q, parity)
// has its own G. Poles sit at integer x, i.e. at E = 2 beta (n + q) - 1/2.

namespace tprabi::gfunc {

struct PoleProximityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw series coefficients f_n (and the energy denominators paired with them)
// from the recurrence
//   f_{n+1} = [(1+4g^2)(n+q) - beta^2 (x+q) - omega^2/(16(n-x))]
//             / (4g (n+q+3/4)(n+q+1/4)) * f_n
//           - f_{n-1} / (4 (n+q+3/4)(n+q+1/4)),
// f_{-1} = 0, f_0 = 1. Undefined at g = 0 (the scaled evaluation in g_eval
// covers that limit). Mostly useful for inspection; f_n grows like g^{-n}.
struct RecurrenceSeries {
  Sector sector;
  double x = 0.0;
  std::vector<double> f;       // f[0..n_max]
  std::vector<double> e_scale; // omega / (4 beta (n - x)), n = 0..n_max
  int n_terms = 0;             // count of computed coefficients
};

RecurrenceSeries recurrence_coeffs(const ModelParams& params, const Sector& sector,
                                   double x, int n_max);

struct GValue {
  double value = 0.0;
  int n_terms_used = 0;
  bool converged = false;
  double nearest_pole_distance = 0.0; // min over poles n >= 0 of |n - x|
  double term_scale = 0.0;            // largest |term| seen; value/term_scale is
                                      // the meaningful size of G at this energy
};

// Evaluate G at an energy. Internally sums t_n = f_n w_n, where w_n carries
// the factorial-over-squeeze weights; the t recurrence has finite
// coefficients on all of 0 <= g < 1/2 and term ratio -> 1/(1+beta) < 1.
// Throws PoleProximityError within 1e-12 (in x) of a pole; a sum that fails
// to settle within n_max terms comes back with converged = false.
GValue g_eval(const ModelParams& params, const Sector& sector, double energy,
              double tol = 1e-12, int n_max = 500);

struct Zero {
  double energy = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int pole_interval = 0;              // n >= 1: between poles n-1 and n;
                                      // 0: below the first pole
  bool exceptional_candidate = false; // within 1e-10 in energy of a pole
  bool eval_converged = true;         // every G evaluation used settled
};

struct ZeroScan {
  std::vector<Zero> zeros; // ascending in energy
  std::vector<std::string> warnings;
};

// Bracket-and-bisect scan of [e_lo, e_hi]. The window is split at the poles,
// each open piece is sampled on a uniform grid (at least 64 points, doubled
// adaptively when a sign change hugs a pole), sign changes are bisected down
// to root_tol in energy, and the final bracket is re-verified. Grid points
// inside the pole guard bands are never evaluated.
ZeroScan find_zeros_in_interval(const ModelParams& params, const Sector& sector,
                                double e_lo, double e_hi, int grid_points = 64,
                                double root_tol = 1e-10, double eval_tol = 1e-12,
                                int n_max = 500);

enum class LevelSource { gfunction, approx, oracle, variational };
std::string to_string(LevelSource s);

struct Level {
  double energy = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  LevelSource source = LevelSource::gfunction;
  int pole_interval = -1;
  bool exceptional_candidate = false;
};

struct SpectrumTable {
  ModelParams params{1.0, 0.0};
  Sector sector;
  std::vector<Level> levels; // ascending
  std::vector<std::string> flags;
};

struct SweepOptions {
  double e_lo = -2.0;
  double e_hi = 6.0;
  int grid_points = 64;     // per pole interval
  double root_tol = 1e-10;
  double eval_tol = 1e-12;
  int n_max = 500;
  bool extend_floor = true; // widen e_lo below the lowest decoupled level - omega
};

// One table per g value, same sector and options throughout.
std::vector<SpectrumTable> spectrum_sweep(double omega, const std::vector<double>& gs,
                                          const Sector& sector,
                                          const SweepOptions& options);

} // namespace tprabi::gfunc
