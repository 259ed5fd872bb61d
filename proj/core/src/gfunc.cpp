#include "tprabi/gfunc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace tprabi::gfunc {

namespace {

// distance (in x) from x to the nearest pole index n >= 0
double nearest_pole_dx(double x) {
  const double r = std::round(x);
  if (r < 0.0) return -x; // poles start at n = 0
  return std::fabs(x - r);
}

void throw_if_on_pole(double x) {
  const double r = std::round(x);
  if (r >= 0.0 && std::fabs(x - r) < 1e-12)
    throw PoleProximityError("g_eval: energy within 1e-12 (in x) of a pole");
}

} // namespace

RecurrenceSeries recurrence_coeffs(const ModelParams& params, const Sector& sector,
                                   double x, int n_max) {
  if (n_max < 0) throw std::invalid_argument("recurrence_coeffs: n_max must be >= 0");
  if (params.g == 0.0)
    throw std::invalid_argument(
        "recurrence_coeffs: raw coefficients are undefined at g = 0");
  throw_if_on_pole(x);

  const BogoliubovFrame frame = make_frame(params);
  const double q = q_value(sector.q);
  const double g = params.g;
  const double om = params.omega_qubit;
  const double beta2 = frame.beta * frame.beta;

  RecurrenceSeries out;
  out.sector = sector;
  out.x = x;
  out.f.resize(n_max + 1);
  out.e_scale.resize(n_max + 1);
  out.n_terms = n_max + 1;

  double fm1 = 0.0; // f_{-1}
  double fn = 1.0;  // f_0
  for (int n = 0; n <= n_max; ++n) {
    out.f[n] = fn;
    out.e_scale[n] = om / (4.0 * frame.beta * (n - x));
    const double num = (1.0 + 4.0 * g * g) * (n + q) - beta2 * (x + q) -
                       om * om / (16.0 * (n - x));
    const double den = 4.0 * g * (n + q + 0.75) * (n + q + 0.25);
    const double fnext = num / den * fn - fm1 / (4.0 * (n + q + 0.75) * (n + q + 0.25));
    fm1 = fn;
    fn = fnext;
  }
  return out;
}

GValue g_eval(const ModelParams& params, const Sector& sector, double energy,
              double tol, int n_max) {
  if (n_max < 1) throw std::invalid_argument("g_eval: n_max must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("g_eval: tol must be positive");

  const BogoliubovFrame frame = make_frame(params);
  const double x = energy_to_x(frame, sector, energy);
  throw_if_on_pole(x);

  const double q = q_value(sector.q);
  const double g = params.g;
  const double om = params.omega_qubit;
  const double beta = frame.beta;
  const double beta2 = beta * beta;
  const double one_plus = 1.0 + beta;
  // (1-beta)/(1+beta) without cancellation: 1-beta = 4g^2/(1+beta)
  const double ratio = 4.0 * g * g / (one_plus * one_plus);
  const double pi = parity_sign(sector.parity);

  // sum over t_n = f_n w_n; the weights w_n tame the g^{-n} growth of f_n
  // and give a term ratio approaching 1/(1+beta)
  double tm1 = 0.0, tn = 1.0;
  double sum = 0.0, scale = 0.0;
  int small_run = 0;
  int n = 0;
  bool converged = false;
  for (; n < n_max; ++n) {
    const double term = tn * (1.0 + pi * om / (4.0 * beta * (n - x)));
    sum += term;
    scale = std::max(scale, std::fabs(term));
    if (n >= 10 && std::fabs(term) <= tol * scale) {
      if (++small_run >= 3) {
        ++n;
        converged = true;
        break;
      }
    } else {
      small_run = 0;
    }
    const double a = ((1.0 + 4.0 * g * g) * (n + q) - beta2 * (x + q) -
                      om * om / (16.0 * (n - x))) /
                     (one_plus * (n + 1.0));
    const double b =
        (n > 0) ? ratio * (n + q - 0.25) * (n + q - 0.75) / (n * (n + 1.0)) : 0.0;
    const double tnext = a * tn - b * tm1;
    tm1 = tn;
    tn = tnext;
  }

  GValue out;
  out.value = sum;
  out.n_terms_used = n;
  out.converged = converged;
  out.nearest_pole_distance = nearest_pole_dx(x);
  out.term_scale = scale;
  return out;
}

namespace {

struct Sample {
  double energy = 0.0;
  double value = 0.0;
  bool converged = false;
  bool valid = false;
};

Sample sample_g(const ModelParams& params, const Sector& sector, double energy,
                double tol, int n_max) {
  Sample s;
  s.energy = energy;
  try {
    const GValue gv = g_eval(params, sector, energy, tol, n_max);
    s.value = gv.value;
    s.converged = gv.converged;
    s.valid = std::isfinite(gv.value);
  } catch (const PoleProximityError&) {
    s.valid = false; // guard bands normally prevent this
  }
  return s;
}

} // namespace

ZeroScan find_zeros_in_interval(const ModelParams& params, const Sector& sector,
                                double e_lo, double e_hi, int grid_points,
                                double root_tol, double eval_tol, int n_max) {
  if (!(e_lo < e_hi))
    throw std::invalid_argument("find_zeros_in_interval: need e_lo < e_hi");
  if (!(root_tol > 0.0))
    throw std::invalid_argument("find_zeros_in_interval: root_tol must be positive");
  grid_points = std::max(grid_points, 64);

  const BogoliubovFrame frame = make_frame(params);
  ZeroScan out;

  // window split at the poles inside it
  std::vector<double> breaks{e_lo};
  std::vector<bool> is_pole{false};
  for (int np = 0;; ++np) {
    const double p = pole_energy(frame, sector, np);
    if (p >= e_hi) break;
    if (p > e_lo) {
      breaks.push_back(p);
      is_pole.push_back(true);
    }
    if (np > 2000000) break; // can't happen for sane windows; belt and braces
  }
  breaks.push_back(e_hi);
  is_pole.push_back(false);

  // keep clear of each pole: wide enough in x for the 1e-12 proximity guard,
  // small enough in energy not to hide zeros hugging a pole
  const double guard = std::max(5e-11, 2.0 * frame.beta * 1e-11);

  int unconverged_samples = 0;
  for (std::size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
    double a = breaks[piece];
    double b = breaks[piece + 1];
    if (is_pole[piece]) a += guard;
    if (is_pole[piece + 1]) b -= guard;
    if (!(a < b)) {
      out.warnings.push_back("interval swallowed by pole guards near E=" +
                             std::to_string(0.5 * (a + b)));
      continue;
    }

    // a zero hugging a pole can slip between grid points where G swings
    // steeply; refine the grid until no sign change sits that close to a
    // pole-side edge (or we hit the refinement cap)
    const double pole_margin = 2.0 * frame.beta / 64.0;
    int pts = grid_points;
    std::vector<Sample> samples;
    for (;;) {
      samples.assign(pts + 1, Sample{});
      for (int i = 0; i <= pts; ++i) {
        const double e = a + (b - a) * i / pts;
        samples[i] = sample_g(params, sector, e, eval_tol, n_max);
      }
      if (pts >= grid_points * 16) break;
      bool refine = false;
      for (int i = 0; i < pts; ++i) {
        if (!samples[i].valid || !samples[i + 1].valid) continue;
        if (samples[i].value * samples[i + 1].value >= 0.0) continue;
        const bool near_lo = is_pole[piece] && samples[i].energy - a < pole_margin;
        const bool near_hi =
            is_pole[piece + 1] && b - samples[i + 1].energy < pole_margin;
        if (near_lo || near_hi) {
          refine = true;
          break;
        }
      }
      if (!refine) break;
      pts *= 2;
    }
    for (const Sample& s : samples)
      if (s.valid && !s.converged) ++unconverged_samples;

    for (int i = 0; i <= pts; ++i) {
      if (!samples[i].valid) continue;
      if (samples[i].value == 0.0) { // landed exactly on a zero
        Zero z;
        z.energy = samples[i].energy;
        z.bracket_lo = z.bracket_hi = samples[i].energy;
        z.eval_converged = samples[i].converged;
        out.zeros.push_back(z);
        continue;
      }
      if (i == pts) break;
      const Sample& s0 = samples[i];
      const Sample& s1 = samples[i + 1];
      if (!s1.valid || s0.value * s1.value >= 0.0) continue;

      double lo = s0.energy, hi = s1.energy;
      double flo = s0.value, fhi = s1.value;
      bool all_conv = s0.converged && s1.converged;
      for (int it = 0; it < 200 && hi - lo > root_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const Sample sm = sample_g(params, sector, mid, eval_tol, n_max);
        if (!sm.valid) break;
        all_conv = all_conv && sm.converged;
        if (sm.value == 0.0) {
          lo = hi = mid;
          flo = fhi = 0.0;
          break;
        }
        if ((sm.value > 0.0) == (flo > 0.0)) {
          lo = mid;
          flo = sm.value;
        } else {
          hi = mid;
          fhi = sm.value;
        }
      }
      if (flo * fhi > 0.0) { // bracket lost; bisection invariant violated
        out.warnings.push_back("bracket verification failed near E=" +
                               std::to_string(0.5 * (lo + hi)));
        continue;
      }

      Zero z;
      z.energy = 0.5 * (lo + hi);
      z.bracket_lo = lo;
      z.bracket_hi = hi;
      z.eval_converged = all_conv;
      out.zeros.push_back(z);
    }
  }

  for (Zero& z : out.zeros) {
    const double x = energy_to_x(frame, sector, z.energy);
    z.pole_interval = (x < 0.0) ? 0 : static_cast<int>(std::floor(x)) + 1;
    z.exceptional_candidate = 2.0 * frame.beta * nearest_pole_dx(x) < 1e-10;
  }
  if (unconverged_samples > 0)
    out.warnings.push_back(std::to_string(unconverged_samples) +
                           " grid evaluations did not settle within n_max terms");
  return out;
}

std::string to_string(LevelSource s) {
  switch (s) {
    case LevelSource::gfunction: return "gfunction";
    case LevelSource::approx: return "approx";
    case LevelSource::oracle: return "oracle";
    case LevelSource::variational: return "variational";
  }
  return "?";
}

std::vector<SpectrumTable> spectrum_sweep(double omega, const std::vector<double>& gs,
                                          const Sector& sector,
                                          const SweepOptions& options) {
  std::vector<SpectrumTable> out;
  out.reserve(gs.size());
  for (double g : gs) {
    const ModelParams params(omega, g);
    double lo = options.e_lo;
    if (options.extend_floor) {
      const auto dec = decoupled_levels(params, sector, 4);
      lo = std::min(lo, *std::min_element(dec.begin(), dec.end()) - omega);
    }
    auto scan =
        find_zeros_in_interval(params, sector, lo, options.e_hi, options.grid_points,
                               options.root_tol, options.eval_tol, options.n_max);
    SpectrumTable table;
    table.params = params;
    table.sector = sector;
    table.flags = std::move(scan.warnings);
    for (const Zero& z : scan.zeros) {
      Level lev;
      lev.energy = z.energy;
      lev.bracket_lo = z.bracket_lo;
      lev.bracket_hi = z.bracket_hi;
      lev.source = LevelSource::gfunction;
      lev.pole_interval = z.pole_interval;
      lev.exceptional_candidate = z.exceptional_candidate;
      if (!z.eval_converged)
        table.flags.push_back("unconverged evaluation at level near E=" +
                              std::to_string(z.energy));
      table.levels.push_back(lev);
    }
    out.push_back(std::move(table));
  }
  return out;
}

} // namespace tprabi::gfunc
