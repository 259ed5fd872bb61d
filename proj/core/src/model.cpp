#include "tprabi/model.hpp"

#include <cmath>
#include <stdexcept>

namespace tprabi {

std::string to_string(Bargmann q) { return q == Bargmann::quarter ? "1/4" : "3/4"; }

std::string to_string(Parity p) { return p == Parity::plus ? "+1" : "-1"; }

std::array<Sector, 4> all_sectors() {
  return {Sector{Bargmann::quarter, Parity::plus},
          Sector{Bargmann::quarter, Parity::minus},
          Sector{Bargmann::three_quarter, Parity::plus},
          Sector{Bargmann::three_quarter, Parity::minus}};
}

ModelParams::ModelParams(double omega_in, double g_in)
    : omega_qubit(omega_in), g(g_in) {
  if (!std::isfinite(omega_qubit) || omega_qubit <= 0.0)
    throw std::invalid_argument("ModelParams: omega must be finite and positive");
  if (!std::isfinite(g) || g < 0.0 || g >= 0.5)
    throw std::invalid_argument("ModelParams: g must lie in [0, 1/2)");
}

BogoliubovFrame make_frame(const ModelParams& params) {
  const double g = params.g;
  // factored form keeps beta accurate as g -> 1/2
  const double beta = std::sqrt((1.0 - 2.0 * g) * (1.0 + 2.0 * g));
  // 1 - beta computed without cancellation (it is 4g^2/(1+beta))
  const double one_minus_beta = 4.0 * g * g / (1.0 + beta);
  BogoliubovFrame f;
  f.beta = beta;
  f.u = std::sqrt((1.0 + beta) / (2.0 * beta));
  f.v = std::sqrt(one_minus_beta / (2.0 * beta));
  f.squeeze_ratio = g / (1.0 + beta);
  return f;
}

double pole_energy(const BogoliubovFrame& frame, const Sector& sector, int n) {
  if (n < 0) throw std::invalid_argument("pole_energy: n must be >= 0");
  return 2.0 * frame.beta * (n + q_value(sector.q)) - 0.5;
}

double first_baseline(const BogoliubovFrame& frame, const Sector& sector) {
  return 2.0 * frame.beta * q_value(sector.q) - 0.5;
}

std::vector<double> decoupled_levels(const ModelParams& params, const Sector& sector,
                                     int n_max) {
  if (n_max < 0) throw std::invalid_argument("decoupled_levels: n_max must be >= 0");
  std::vector<double> levels;
  levels.reserve(n_max + 1);
  const double half_omega = 0.5 * params.omega_qubit;
  const int pi = parity_sign(sector.parity);
  for (int n = 0; n <= n_max; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    levels.push_back(pi * half_omega * sign + 2.0 * (n + q_value(sector.q) - 0.25));
  }
  return levels;
}

BaselineCount below_baseline_count(const ModelParams& params, const Sector& sector) {
  // level n lies below the floor iff n < -parity (omega/4) (-1)^n; only
  // n up to omega/4 can qualify, so the scan is short
  BaselineCount out;
  const int pi = parity_sign(sector.parity);
  const int n_stop = static_cast<int>(params.omega_qubit / 4.0) + 2;
  for (int n = 0; n <= n_stop; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double threshold = -pi * sign * params.omega_qubit / 4.0;
    if (n < threshold)
      ++out.count;
    else if (static_cast<double>(n) == threshold)
      out.boundary_levels.push_back(n); // floor-degenerate, neither above nor below
  }
  return out;
}

double x_to_energy(const BogoliubovFrame& frame, const Sector& sector, double x) {
  return 2.0 * frame.beta * (x + q_value(sector.q)) - 0.5;
}

double energy_to_x(const BogoliubovFrame& frame, const Sector& sector, double energy) {
  return (energy + 0.5) / (2.0 * frame.beta) - q_value(sector.q);
}

} // namespace tprabi
