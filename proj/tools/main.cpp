// command-line front end: every solver in the library behind one binary,
// emitting flat csv/json tables that plot directly. all runs are seed-free
// and deterministic; identical flags give byte-identical files.

#include <algorithm>
#include <clocale>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tprabi/approx.hpp"
#include "tprabi/gfunc.hpp"
#include "tprabi/melem.hpp"
#include "tprabi/model.hpp"
#include "tprabi/oracle.hpp"
#include "tprabi/variational.hpp"
#include "tprabi/version.hpp"

using namespace tprabi;

namespace {

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex16(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// one table cell; csv wants flat text, json wants typed values
struct Cell {
  enum class Kind { real, integer, text } kind = Kind::text;
  double d = 0.0;
  long long i = 0;
  std::string s;
};

Cell cell(double v) { return {Cell::Kind::real, v, 0, {}}; }
Cell cell(int v) { return {Cell::Kind::integer, 0.0, v, {}}; }
Cell cell(long long v) { return {Cell::Kind::integer, 0.0, v, {}}; }
Cell cell(std::string v) { return {Cell::Kind::text, 0.0, 0, std::move(v)}; }

using Row = std::vector<Cell>;

// sorted key=value snapshot of everything that shaped the run (output path
// excluded: it says where the file went, not what is in it)
struct ConfigEcho {
  std::map<std::string, std::string> kv;

  void put(const std::string& k, const std::string& v) { kv[k] = v; }
  void put(const std::string& k, double v) { kv[k] = fmt17(v); }
  void put(const std::string& k, int v) { kv[k] = std::to_string(v); }

  std::string flat() const {
    std::string s;
    for (const auto& [k, v] : kv) {
      if (!s.empty()) s += ' ';
      s += k + "=" + v;
    }
    return s;
  }
};

struct Writer {
  std::ostream* os = nullptr;
  bool json = false;
  std::vector<std::string> cols;
  ConfigEcho cfg;
  bool first_row = true;
  bool started = false;

  void begin() {
    started = true;
    const std::string flat = cfg.flat();
    const std::string hash = hex16(fnv1a(flat));
    if (json) {
      nlohmann::json meta;
      meta["version"] = version_string;
      meta["config_hash"] = hash;
      nlohmann::json jc = nlohmann::json::object();
      for (const auto& [k, v] : cfg.kv) jc[k] = v;
      meta["config"] = jc;
      *os << "{\"meta\":" << meta.dump() << ",\"rows\":[";
    } else {
      *os << "# tprabi " << version_string << " cfg=" << hash << " " << flat << "\n";
      for (std::size_t i = 0; i < cols.size(); ++i)
        *os << cols[i] << (i + 1 < cols.size() ? "," : "\n");
    }
  }

  void row(const Row& cells) {
    if (json) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const Cell& c = cells[i];
        switch (c.kind) {
          case Cell::Kind::real:
            if (std::isfinite(c.d))
              obj[cols[i]] = c.d;
            else
              obj[cols[i]] = nullptr;
            break;
          case Cell::Kind::integer: obj[cols[i]] = c.i; break;
          case Cell::Kind::text: obj[cols[i]] = c.s; break;
        }
      }
      raw_row(obj);
    } else {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const Cell& c = cells[i];
        switch (c.kind) {
          case Cell::Kind::real: *os << fmt17(c.d); break;
          case Cell::Kind::integer: *os << c.i; break;
          case Cell::Kind::text: *os << c.s; break;
        }
        *os << (i + 1 < cells.size() ? "," : "\n");
      }
    }
  }

  void raw_row(const nlohmann::json& obj) { // json-only callers (nested rows)
    if (!first_row) *os << ",";
    *os << "\n" << obj.dump();
    first_row = false;
  }

  void finish() {
    if (!os || !started) return;
    if (json) *os << "\n]}\n";
    os->flush();
  }
};

// ---------------------------------------------------------------------------
// flag bag shared by all subcommands; each registers only what it understands

struct Opt {
  double omega = 1.0;
  double g = std::numeric_limits<double>::quiet_NaN();
  double g_min = std::numeric_limits<double>::quiet_NaN();
  double g_max = std::numeric_limits<double>::quiet_NaN();
  int g_steps = 0;
  std::string q = "both";
  std::string parity = "both";
  double e_min = -2.0;
  double e_max = 6.0;
  double tol = std::numeric_limits<double>::quiet_NaN(); // per-command default
  int n_max = -1;                                        // per-command default
  int fock_cutoff = 200;
  int order = 8;
  std::vector<int> orders; // compare: repeatable
  std::string format;      // per-command default
  std::string out;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> resolve_gs(const Opt& o) {
  const bool single = !std::isnan(o.g);
  const bool ranged = !std::isnan(o.g_min) || !std::isnan(o.g_max) || o.g_steps > 0;
  if (single && ranged)
    throw ConfigError("give either --g or the --g-min/--g-max/--g-steps triple");
  std::vector<double> gs;
  if (single) {
    gs.push_back(o.g);
  } else if (ranged) {
    if (std::isnan(o.g_min) || std::isnan(o.g_max) || o.g_steps < 1)
      throw ConfigError("a g range needs all of --g-min, --g-max, --g-steps >= 1");
    if (o.g_max < o.g_min) throw ConfigError("--g-max must not be below --g-min");
    for (int i = 0; i < o.g_steps; ++i)
      gs.push_back(o.g_steps == 1 ? o.g_min
                                  : o.g_min + (o.g_max - o.g_min) * i / (o.g_steps - 1.0));
  } else {
    throw ConfigError("coupling missing: pass --g or --g-min/--g-max/--g-steps");
  }
  for (double g : gs)
    if (!(g >= 0.0) || !(g < 0.5))
      throw ConfigError("coupling out of range: need 0 <= g < 1/2, got " + fmt17(g));
  if (!(o.omega > 0.0)) throw ConfigError("--omega must be positive");
  return gs;
}

void echo_gs(ConfigEcho& cfg, const Opt& o) {
  if (!std::isnan(o.g)) {
    cfg.put("g", o.g);
  } else {
    cfg.put("g_min", o.g_min);
    cfg.put("g_max", o.g_max);
    cfg.put("g_steps", o.g_steps);
  }
}

std::vector<Bargmann> resolve_q(const std::string& q) {
  if (q == "1/4") return {Bargmann::quarter};
  if (q == "3/4") return {Bargmann::three_quarter};
  return {Bargmann::quarter, Bargmann::three_quarter};
}

std::vector<Parity> resolve_parity(const std::string& p) {
  if (p == "+1") return {Parity::plus};
  if (p == "-1") return {Parity::minus};
  return {Parity::plus, Parity::minus};
}

std::ofstream open_out(const Opt& o) {
  std::ofstream f;
  if (!o.out.empty()) {
    f.open(o.out);
    if (!f) throw ConfigError("cannot open output file: " + o.out);
  }
  return f;
}

std::string resolve_format(const Opt& o, const char* fallback) {
  const std::string f = o.format.empty() ? fallback : o.format;
  if (f != "csv" && f != "json") throw ConfigError("--format must be csv or json");
  return f;
}

// run one deterministic job per g on its own thread, then assemble in order
template <class F>
auto per_g_futures(const std::vector<double>& gs, F&& job) {
  using R = std::invoke_result_t<F, double>;
  std::vector<std::future<R>> futs;
  futs.reserve(gs.size());
  for (double g : gs) futs.push_back(std::async(std::launch::async, job, g));
  return futs;
}

// ---------------------------------------------------------------------------
// gcurve: sample G_+ and G_- for one q sector on a fixed energy grid

int run_gcurve(const Opt& o, Writer& w) {
  const auto gs = resolve_gs(o);
  if (gs.size() != 1) throw ConfigError("gcurve wants a single --g");
  if (o.q == "both")
    throw ConfigError("gcurve writes one sector per file; pick --q 1/4 or --q 3/4");
  const Bargmann q = resolve_q(o.q)[0];
  const double tol = std::isnan(o.tol) ? 1e-12 : o.tol;
  const int n_max = o.n_max < 0 ? 500 : o.n_max;

  w.begin();
  if (o.e_min >= o.e_max) return 0; // empty window: header-only file

  const ModelParams p(o.omega, gs[0]);
  const auto frame = make_frame(p);
  const int samples = 1200; // fixed grid; dense enough for every figure
  for (int i = 0; i <= samples; ++i) {
    const double e = o.e_min + (o.e_max - o.e_min) * i / double(samples);
    const double x = energy_to_x(frame, {q, Parity::plus}, e);
    const double npd = x <= 0.0 ? -x : std::fabs(x - std::round(x));
    double val[2] = {std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::quiet_NaN()};
    bool conv = true;
    const Parity both[2] = {Parity::plus, Parity::minus};
    for (int k = 0; k < 2; ++k) {
      try {
        auto gv = gfunc::g_eval(p, {q, both[k]}, e, tol, n_max);
        val[k] = gv.value;
        conv = conv && gv.converged;
      } catch (const gfunc::PoleProximityError&) {
        conv = false; // the sample sits on a pole; row stays, values go nan
      }
    }
    w.row({cell(e), cell(val[0]), cell(val[1]), cell(npd), cell(conv ? 1 : 0)});
  }
  return 0;
}

// ---------------------------------------------------------------------------
// spectrum: G-function zeros plus the pole ladder, long format

int run_spectrum(const Opt& o, Writer& w) {
  const auto gs = resolve_gs(o);
  const auto qs = resolve_q(o.q);
  const auto ps = resolve_parity(o.parity);

  gfunc::SweepOptions sweep;
  sweep.e_lo = o.e_min;
  sweep.e_hi = o.e_max;
  sweep.root_tol = std::isnan(o.tol) ? 1e-10 : o.tol;
  sweep.n_max = o.n_max < 0 ? 500 : o.n_max;

  struct Tagged {
    Bargmann q;
    int parity_key; // 0: +1, 1: -1, 2: pole/baseline row
    Row row;
    double energy;
  };
  auto job = [&, sweep](double g) {
    std::vector<Tagged> out;
    std::vector<std::string> notes;
    for (Bargmann q : qs) {
      for (Parity pi : ps) {
        const Sector s{q, pi};
        auto table = gfunc::spectrum_sweep(o.omega, {g}, s, sweep)[0];
        for (const auto& fl : table.flags) notes.push_back(fl);
        int idx = 0;
        for (const auto& lv : table.levels) {
          Row r = {cell(g),
                   cell(to_string(q)),
                   cell(to_string(pi)),
                   cell(idx++),
                   cell(lv.energy),
                   cell(gfunc::to_string(lv.source)),
                   cell(lv.exceptional_candidate ? std::string("exceptional")
                                                 : std::string())};
          out.push_back({q, pi == Parity::plus ? 0 : 1, std::move(r), lv.energy});
        }
      }
      // the pole ladder carries no parity label; n = 0 is the first baseline
      const ModelParams p(o.omega, g);
      const auto frame = make_frame(p);
      for (int n = 0;; ++n) {
        const double e = pole_energy(frame, {q, Parity::plus}, n);
        if (e > o.e_max) break;
        if (e < o.e_min) continue;
        Row r = {cell(g),
                 cell(to_string(q)),
                 cell(std::string("0")),
                 cell(n),
                 cell(e),
                 cell(std::string(n == 0 ? "baseline" : "pole")),
                 cell(std::string())};
        out.push_back({q, 2, std::move(r), e});
      }
    }
    std::stable_sort(out.begin(), out.end(), [](const Tagged& a, const Tagged& b) {
      if (a.q != b.q) return a.q == Bargmann::quarter;
      if (a.parity_key != b.parity_key) return a.parity_key < b.parity_key;
      return a.energy < b.energy;
    });
    return std::make_pair(std::move(out), std::move(notes));
  };

  auto futs = per_g_futures(gs, job);
  w.begin();
  for (auto& f : futs) {
    auto [rows, notes] = f.get();
    for (const auto& t : rows) w.row(t.row);
    for (const auto& n : notes) std::cerr << "note: " << n << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// baselines: the pole ladder and which decoupled levels start below it

int run_baselines(const Opt& o, Writer& w) {
  const auto gs = resolve_gs(o);
  const auto qs = resolve_q(o.q);
  const auto ps = resolve_parity(o.parity);
  const int n_top = o.n_max < 0 ? 8 : o.n_max;
  if (n_top < 0) throw ConfigError("--n-max must be >= 0");

  w.begin();
  for (double g : gs) {
    const ModelParams p(o.omega, g);
    const auto frame = make_frame(p);
    for (Bargmann q : qs) {
      for (Parity pi : ps) {
        const Sector s{q, pi};
        const auto levels = decoupled_levels(p, s, n_top);
        const auto bc = below_baseline_count(p, s);
        for (int n = 0; n <= n_top; ++n) {
          // a decoupled level starts under the first baseline iff
          // n < -parity (omega/4) (-1)^n; exact equality is the boundary case
          const double rhs =
              -parity_sign(pi) * 0.25 * o.omega * (n % 2 == 0 ? 1.0 : -1.0);
          const bool below = double(n) < rhs;
          const bool boundary = std::find(bc.boundary_levels.begin(),
                                          bc.boundary_levels.end(),
                                          n) != bc.boundary_levels.end();
          w.row({cell(g), cell(to_string(q)), cell(to_string(pi)), cell(n),
                 cell(pole_energy(frame, s, n)), cell(levels[n]),
                 cell(below ? 1 : 0), cell(boundary ? 1 : 0)});
        }
      }
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// approx: eigenvalues of the truncated ladder block at the spectrum bottom

int run_approx(const Opt& o, Writer& w) {
  const auto gs = resolve_gs(o);
  const auto qs = resolve_q(o.q);
  const auto ps = resolve_parity(o.parity);
  if (o.order < 0) throw ConfigError("--order must be >= 0");

  auto job = [&](double g) {
    std::vector<Row> rows;
    const ModelParams p(o.omega, g);
    for (Bargmann q : qs)
      for (Parity pi : ps) {
        auto ev = approx::diagonalize_truncated(p, {q, pi}, 0, o.order);
        for (std::size_t i = 0; i < ev.size(); ++i)
          rows.push_back({cell(g), cell(to_string(q)), cell(to_string(pi)),
                          cell(int(i)), cell(ev[i]), cell(o.order)});
      }
    return rows;
  };
  auto futs = per_g_futures(gs, job);
  w.begin();
  for (auto& f : futs)
    for (const auto& r : f.get()) w.row(r);
  return 0;
}

// ---------------------------------------------------------------------------
// variational: squeezed-vacuum upper bound per coupling

int run_variational(const Opt& o, Writer& w) {
  const auto gs = resolve_gs(o);
  const double tol = std::isnan(o.tol) ? 1e-10 : o.tol;

  auto job = [&](double g) {
    const ModelParams p(o.omega, g);
    return variational::minimize_variational(p, {0.0, 4.0}, tol);
  };
  auto futs = per_g_futures(gs, job);
  w.begin();
  for (std::size_t i = 0; i < futs.size(); ++i) {
    auto res = futs[i].get();
    w.row({cell(gs[i]), cell(res.r_opt), cell(res.energy), cell(res.iterations),
           cell(res.converged ? 1 : 0), cell(res.boundary ? 1 : 0)});
  }
  return 0;
}

// ---------------------------------------------------------------------------
// oracle: truncated-Fock reference levels with cutoff-doubling deltas

int run_oracle(const Opt& o, Writer& w) {
  const auto gs = resolve_gs(o);
  const auto qs = resolve_q(o.q);
  const auto ps = resolve_parity(o.parity);
  if (o.fock_cutoff < 4) throw ConfigError("--fock-cutoff must be >= 4");
  std::vector<int> want;
  for (Parity pi : ps) want.push_back(parity_sign(pi));

  auto job = [&](double g) {
    std::vector<Row> rows;
    const ModelParams p(o.omega, g);
    for (Bargmann q : qs) {
      auto cs = oracle::converged_spectrum(p, q, 40, o.fock_cutoff);
      for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].energy < o.e_min || cs[i].energy > o.e_max) continue;
        if (std::find(want.begin(), want.end(), cs[i].parity) == want.end())
          continue;
        rows.push_back({cell(g), cell(to_string(q)),
                        cell(std::string(cs[i].parity > 0 ? "+1" : "-1")),
                        cell(int(i)), cell(cs[i].energy),
                        cell(cs[i].doubling_delta)});
      }
    }
    return rows;
  };
  auto futs = per_g_futures(gs, job);
  w.begin();
  for (auto& f : futs)
    for (const auto& r : f.get()) w.row(r);
  return 0;
}

// ---------------------------------------------------------------------------
// compare: every ground-state estimate side by side

int run_compare(const Opt& o, Writer& w) {
  const auto gs = resolve_gs(o);
  if (o.fock_cutoff < 4) throw ConfigError("--fock-cutoff must be >= 4");
  std::vector<int> orders = o.orders.empty() ? std::vector<int>{0, 1, 4, 8} : o.orders;
  std::vector<int> seen;
  for (int n : orders) {
    if (n < 0) throw ConfigError("--order must be >= 0");
    if (std::find(seen.begin(), seen.end(), n) == seen.end()) seen.push_back(n);
  }
  orders = seen;

  gfunc::SweepOptions sweep;
  sweep.n_max = o.n_max < 0 ? 500 : o.n_max;

  auto job = [&, sweep](double g) {
    const ModelParams p(o.omega, g);
    std::vector<double> vals;
    vals.push_back(oracle::converged_spectrum(p, Bargmann::quarter, 1,
                                              o.fock_cutoff)[0].energy);
    auto table = gfunc::spectrum_sweep(o.omega, {g},
                                       {Bargmann::quarter, Parity::minus}, sweep)[0];
    if (table.levels.empty())
      throw std::runtime_error("compare: no G-function zero found at g = " + fmt17(g));
    vals.push_back(table.levels.front().energy);
    vals.push_back(variational::minimize_variational(p).energy);
    for (int n : orders) vals.push_back(approx::ground_state_order(p, n));
    return vals;
  };
  auto futs = per_g_futures(gs, job);
  w.begin();
  for (std::size_t i = 0; i < futs.size(); ++i) {
    auto vals = futs[i].get();
    Row r = {cell(gs[i])};
    for (double v : vals) r.push_back(cell(v));
    w.row(r);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// gap-report: how the spectrum closes in on the collapse point

int run_gap_report(const Opt& o, Writer& w) {
  if (!o.format.empty() && o.format != "json")
    throw ConfigError("gap-report is a json summary; csv has no room for the nesting");
  if (o.fock_cutoff < 4) throw ConfigError("--fock-cutoff must be >= 4");

  std::vector<double> eps;
  const bool has_g = !std::isnan(o.g) || !std::isnan(o.g_min) || o.g_steps > 0;
  if (has_g) {
    for (double g : resolve_gs(o)) eps.push_back(0.5 - g);
  } else {
    eps = {1e-2, 3e-3, 1e-3};
    if (!(o.omega > 0.0)) throw ConfigError("--omega must be positive");
  }

  auto job = [&](double e) {
    const double g = 0.5 - e;
    const ModelParams p(o.omega, g);
    const auto frame = make_frame(p);
    nlohmann::json row;
    row["epsilon"] = e;
    row["g"] = g;

    struct Tag {
      Bargmann q;
      int parity;
      int index;
      double energy;
    };
    std::vector<Tag> all;
    for (Bargmann q : {Bargmann::quarter, Bargmann::three_quarter}) {
      auto cs = oracle::converged_spectrum(p, q, 40, o.fock_cutoff);
      for (std::size_t i = 0; i < cs.size(); ++i)
        all.push_back({q, cs[i].parity, int(i), cs[i].energy});
    }
    double gs_energy = all[0].energy;
    for (const auto& t : all) gs_energy = std::min(gs_energy, t.energy);
    row["ground_state"] = gs_energy;

    // proxy for the incipient continuum: the levels already piled up just
    // above -1/2 within a few collapsing pole spacings
    std::vector<double> band;
    for (const auto& t : all)
      if (t.energy >= -0.5 && t.energy <= -0.5 + 8.0 * frame.beta)
        band.push_back(t.energy);
    std::sort(band.begin(), band.end());
    if (band.empty()) {
      row["continuum_edge"] = nullptr;
      row["gap"] = nullptr;
    } else {
      const std::size_t m = band.size() / 2;
      const double edge = band.size() % 2 == 1 ? band[m] : 0.5 * (band[m - 1] + band[m]);
      row["continuum_edge"] = edge;
      row["gap"] = edge - gs_energy;
    }

    std::sort(all.begin(), all.end(),
              [](const Tag& a, const Tag& b) { return a.energy < b.energy; });
    nlohmann::json below = nlohmann::json::array();
    for (const auto& t : all) {
      if (t.energy >= first_baseline(frame, {t.q, Parity::plus})) continue;
      nlohmann::json item;
      item["q"] = to_string(t.q);
      item["parity"] = t.parity;
      item["level_index"] = t.index;
      item["energy"] = t.energy;
      below.push_back(item);
    }
    row["below_continuum"] = below;
    return row;
  };
  auto futs = per_g_futures(eps, job);
  w.begin();
  for (auto& f : futs) w.raw_row(f.get());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"two-photon quantum Rabi model: spectra, bounds, and references"};
  app.require_subcommand(1);

  Opt o;
  auto add_omega = [&](CLI::App* c) {
    c->add_option("--omega", o.omega, "qubit splitting (cavity units)");
  };
  auto add_g = [&](CLI::App* c) {
    c->add_option("--g", o.g, "coupling, 0 <= g < 1/2");
    c->add_option("--g-min", o.g_min, "start of a coupling ladder");
    c->add_option("--g-max", o.g_max, "end of a coupling ladder");
    c->add_option("--g-steps", o.g_steps, "ladder length");
  };
  auto add_q = [&](CLI::App* c) {
    c->add_option("--q", o.q, "photon-parity sector")
        ->check(CLI::IsMember({"1/4", "3/4", "both"}));
  };
  auto add_parity = [&](CLI::App* c) {
    c->add_option("--parity", o.parity, "G-function parity (use --parity=-1)")
        ->check(CLI::IsMember({"+1", "-1", "both"}));
  };
  auto add_window = [&](CLI::App* c) {
    c->add_option("--e-min", o.e_min, "energy window low edge");
    c->add_option("--e-max", o.e_max, "energy window high edge");
  };
  auto add_io = [&](CLI::App* c) {
    c->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--out", o.out, "output path (default: stdout)");
  };

  auto* gcurve = app.add_subcommand("gcurve", "sample G_+/G_- over an energy window");
  add_omega(gcurve);
  add_g(gcurve);
  add_q(gcurve);
  add_window(gcurve);
  gcurve->add_option("--tol", o.tol, "series tolerance (default 1e-12)");
  gcurve->add_option("--n-max", o.n_max, "series depth cap (default 500)");
  add_io(gcurve);

  auto* spectrum = app.add_subcommand("spectrum", "G-function zeros and the pole ladder");
  add_omega(spectrum);
  add_g(spectrum);
  add_q(spectrum);
  add_parity(spectrum);
  add_window(spectrum);
  spectrum->add_option("--tol", o.tol, "root tolerance in energy (default 1e-10)");
  spectrum->add_option("--n-max", o.n_max, "series depth cap (default 500)");
  add_io(spectrum);

  auto* baselines = app.add_subcommand("baselines", "pole ladder and below-floor census");
  add_omega(baselines);
  add_g(baselines);
  add_q(baselines);
  add_parity(baselines);
  baselines->add_option("--n-max", o.n_max, "highest ladder index (default 8)");
  add_io(baselines);

  auto* approxc = app.add_subcommand("approx", "truncated-block eigenvalues");
  add_omega(approxc);
  add_g(approxc);
  add_q(approxc);
  add_parity(approxc);
  approxc->add_option("--order", o.order, "truncation order N (default 8)");
  add_io(approxc);

  auto* variationalc = app.add_subcommand("variational", "squeezed-state upper bound");
  add_omega(variationalc);
  add_g(variationalc);
  variationalc->add_option("--tol", o.tol, "bracket width tolerance (default 1e-10)");
  add_io(variationalc);

  auto* oraclec = app.add_subcommand("oracle", "truncated-Fock reference spectrum");
  add_omega(oraclec);
  add_g(oraclec);
  add_q(oraclec);
  add_parity(oraclec);
  add_window(oraclec);
  oraclec->add_option("--fock-cutoff", o.fock_cutoff,
                      "photon-number cutoff (default 200; doubled for the check)");
  add_io(oraclec);

  auto* compare = app.add_subcommand("compare", "ground-state estimates side by side");
  add_omega(compare);
  add_g(compare);
  compare->add_option("--order", o.orders, "approx orders to include (repeatable)");
  compare->add_option("--fock-cutoff", o.fock_cutoff, "reference cutoff (default 200)");
  compare->add_option("--n-max", o.n_max, "series depth cap (default 500)");
  add_io(compare);

  auto* gap = app.add_subcommand("gap-report", "spectral-collapse summary near g = 1/2");
  add_omega(gap);
  add_g(gap);
  gap->add_option("--fock-cutoff", o.fock_cutoff, "reference cutoff (default 200)");
  add_io(gap);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  int rc = 1;
  std::ofstream file;
  Writer w;
  try {
    file = open_out(o);
    w.os = o.out.empty() ? static_cast<std::ostream*>(&std::cout) : &file;

    ConfigEcho cfg;
    cfg.put("omega", o.omega);

    if (gcurve->parsed()) {
      w.json = resolve_format(o, "csv") == "json";
      w.cols = {"E", "G_plus", "G_minus", "nearest_pole", "converged"};
      cfg.put("command", "gcurve");
      echo_gs(cfg, o);
      cfg.put("q", o.q);
      cfg.put("e_min", o.e_min);
      cfg.put("e_max", o.e_max);
      cfg.put("tol", std::isnan(o.tol) ? 1e-12 : o.tol);
      cfg.put("n_max", o.n_max < 0 ? 500 : o.n_max);
      cfg.put("format", w.json ? "json" : "csv");
      w.cfg = cfg;
      rc = run_gcurve(o, w);
    } else if (spectrum->parsed()) {
      w.json = resolve_format(o, "csv") == "json";
      w.cols = {"g", "q", "parity", "level_index", "energy", "source", "flags"};
      cfg.put("command", "spectrum");
      echo_gs(cfg, o);
      cfg.put("q", o.q);
      cfg.put("parity", o.parity);
      cfg.put("e_min", o.e_min);
      cfg.put("e_max", o.e_max);
      cfg.put("tol", std::isnan(o.tol) ? 1e-10 : o.tol);
      cfg.put("n_max", o.n_max < 0 ? 500 : o.n_max);
      cfg.put("format", w.json ? "json" : "csv");
      w.cfg = cfg;
      rc = run_spectrum(o, w);
    } else if (baselines->parsed()) {
      w.json = resolve_format(o, "csv") == "json";
      w.cols = {"g", "q", "parity", "n", "baseline_energy", "decoupled_energy",
                "below_first_baseline", "boundary"};
      cfg.put("command", "baselines");
      echo_gs(cfg, o);
      cfg.put("q", o.q);
      cfg.put("parity", o.parity);
      cfg.put("n_max", o.n_max < 0 ? 8 : o.n_max);
      cfg.put("format", w.json ? "json" : "csv");
      w.cfg = cfg;
      rc = run_baselines(o, w);
    } else if (approxc->parsed()) {
      w.json = resolve_format(o, "csv") == "json";
      w.cols = {"g", "q", "parity", "level_index", "energy", "order"};
      cfg.put("command", "approx");
      echo_gs(cfg, o);
      cfg.put("q", o.q);
      cfg.put("parity", o.parity);
      cfg.put("order", o.order);
      cfg.put("format", w.json ? "json" : "csv");
      w.cfg = cfg;
      rc = run_approx(o, w);
    } else if (variationalc->parsed()) {
      w.json = resolve_format(o, "csv") == "json";
      w.cols = {"g", "r_opt", "energy", "iterations", "converged", "boundary"};
      cfg.put("command", "variational");
      echo_gs(cfg, o);
      cfg.put("tol", std::isnan(o.tol) ? 1e-10 : o.tol);
      cfg.put("format", w.json ? "json" : "csv");
      w.cfg = cfg;
      rc = run_variational(o, w);
    } else if (oraclec->parsed()) {
      w.json = resolve_format(o, "csv") == "json";
      w.cols = {"g", "q", "parity", "level_index", "energy", "doubling_delta"};
      cfg.put("command", "oracle");
      echo_gs(cfg, o);
      cfg.put("q", o.q);
      cfg.put("parity", o.parity);
      cfg.put("e_min", o.e_min);
      cfg.put("e_max", o.e_max);
      cfg.put("fock_cutoff", o.fock_cutoff);
      cfg.put("format", w.json ? "json" : "csv");
      w.cfg = cfg;
      rc = run_oracle(o, w);
    } else if (compare->parsed()) {
      w.json = resolve_format(o, "csv") == "json";
      std::vector<int> orders =
          o.orders.empty() ? std::vector<int>{0, 1, 4, 8} : o.orders;
      w.cols = {"g", "gs_oracle", "gs_gfunction", "gs_variational"};
      std::string olist;
      std::vector<int> seen;
      for (int n : orders)
        if (std::find(seen.begin(), seen.end(), n) == seen.end()) {
          seen.push_back(n);
          w.cols.push_back("gs_approx_" + std::to_string(n));
          olist += (olist.empty() ? "" : ",") + std::to_string(n);
        }
      cfg.put("command", "compare");
      echo_gs(cfg, o);
      cfg.put("order", olist);
      cfg.put("fock_cutoff", o.fock_cutoff);
      cfg.put("n_max", o.n_max < 0 ? 500 : o.n_max);
      cfg.put("format", w.json ? "json" : "csv");
      w.cfg = cfg;
      rc = run_compare(o, w);
    } else if (gap->parsed()) {
      w.json = true;
      cfg.put("command", "gap-report");
      if (!std::isnan(o.g) || !std::isnan(o.g_min) || o.g_steps > 0) echo_gs(cfg, o);
      cfg.put("fock_cutoff", o.fock_cutoff);
      cfg.put("format", "json");
      w.cfg = cfg;
      rc = run_gap_report(o, w);
    }
    w.finish();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    // keep whatever made it out; a partial table beats an empty file
    w.finish();
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
