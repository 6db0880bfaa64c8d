#include "helical/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "helical/constructions.hpp"
#include "helical/energy.hpp"
#include "helical/topology.hpp"

namespace helical {

ScalingValue scaling_s(double eps, double delta) {
  if (!(eps > 0.0) || !(eps < 0.5) || !(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("scaling_s: (eps, delta) must lie in (0,1/2) x (0,1)");
  }
  const double sq = std::sqrt(delta);
  const double branching = eps * delta * sq * (std::abs(std::log(eps / sq)) + 1.0);
  const double value = std::min({delta * delta, branching, eps * sq});
  Regime regime = Regime::VS;
  if (sq <= eps) {
    regime = Regime::F;
  } else if (std::exp(1.0) * sq * std::exp(-1.0 / delta) <= eps) {
    regime = Regime::B;
  }
  return {value, regime};
}

double SweepRecord::best_energy() const {
  double best = std::numeric_limits<double>::infinity();
  for (double e : {e_ferro, e_branch, e_vortex, e_opt}) {
    if (!std::isnan(e)) best = std::min(best, e);
  }
  return best;
}

namespace {

SweepRecord run_cell(double eps, double delta, const SweepOptions& opts) {
  SweepRecord rec;
  rec.eps = eps;
  rec.delta = delta;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const ScalingValue sv = scaling_s(eps, delta);
    rec.s_value = sv.value;
    rec.regime = sv.regime;
    const Grid g(eps);
    const ModelParams p = ModelParams::isotropic(delta);

    SpinField best_field(g);
    double best = std::numeric_limits<double>::infinity();
    std::int64_t best_vortices = 0;
    std::string winner;
    auto consider = [&](const char* name, const SpinField& u, double e) {
      if (e < best) {
        best = e;
        winner = name;
        best_field = u;
        best_vortices = static_cast<std::int64_t>(vortices(angles_from_spins(u)).count());
      }
    };
    if (opts.strategies.ferro) {
      const SpinField u = ferromagnet(g);
      rec.e_ferro = energy_direct(u, p).total;
      consider("ferro", u, rec.e_ferro);
    }
    if (opts.strategies.branch) {
      const SpinField u = branching(g, p, BranchingSpec::defaults(g, p));
      rec.e_branch = energy_direct(u, p).total;
      consider("branch", u, rec.e_branch);
    }
    if (opts.strategies.vortex) {
      const SpinField u = vortex_competitor(g, p);
      rec.e_vortex = energy_direct(u, p).total;
      consider("vortex", u, rec.e_vortex);
    }
    if (opts.strategies.optimize && !winner.empty()) {
      OptimizeOptions oo = opts.optimizer;
      oo.seed = opts.seed;
      const MinimizeResult m = minimize(best_field, p, oo);
      rec.e_opt = energy_direct(m.field, p).total;
      consider("opt", m.field, rec.e_opt);
    }
    rec.winner = winner;
    rec.n_vortices = best_vortices;
  } catch (const std::exception& ex) {
    rec.error = ex.what();
  }
  rec.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace

std::vector<SweepRecord> phase_sweep(const std::vector<double>& eps_list,
                                     const std::vector<double>& delta_list,
                                     const SweepOptions& opts,
                                     const std::function<void(const SweepRecord&)>& on_record) {
  if (eps_list.empty() || delta_list.empty()) {
    throw std::invalid_argument("phase_sweep: empty parameter lists");
  }
  if (!opts.strategies.ferro && !opts.strategies.branch && !opts.strategies.vortex) {
    throw std::invalid_argument("phase_sweep: no strategies selected");
  }
  struct Cell {
    double eps, delta;
  };
  std::vector<Cell> cells;
  for (double d : delta_list) {
    for (double e : eps_list) cells.push_back({e, d});
  }
  std::vector<SweepRecord> records(cells.size());
  std::vector<char> done(cells.size(), 0);
  std::mutex flush_mutex;
  std::size_t flushed = 0;
  auto flush_ready = [&]() {
    while (flushed < cells.size() && done[flushed]) {
      if (on_record) on_record(records[flushed]);
      ++flushed;
    }
  };

  const int workers = std::max(1, opts.threads);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= cells.size()) return;
      SweepRecord rec = run_cell(cells[k].eps, cells[k].delta, opts);
      std::lock_guard<std::mutex> lock(flush_mutex);
      records[k] = std::move(rec);
      done[k] = 1;
      flush_ready();
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return records;
}

FitResult fit_constant(const std::vector<SweepRecord>& records, Regime regime) {
  std::vector<const SweepRecord*> sel;
  for (const SweepRecord& r : records) {
    if (r.error.empty() && r.regime == regime) sel.push_back(&r);
  }
  if (sel.size() < 3) throw std::invalid_argument("fit_constant: fewer than 3 records in regime");
  FitResult out;
  out.n_records = static_cast<int>(sel.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const SweepRecord* r : sel) {
    const double e = r->best_energy();
    out.c_max = std::max(out.c_max, e / r->s_value);
    const double x = std::log(r->s_value), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(sel.size());
  out.loglog_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

std::string sweep_csv_header() {
  return "eps,delta,e_ferro,e_branch,e_vortex,e_opt,s,regime,winner,n_vortices,wall_ms";
}

namespace {
std::string num17(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::string sweep_csv_row(const SweepRecord& r) {
  std::string row = num17(r.eps) + "," + num17(r.delta) + "," + num17(r.e_ferro) + "," +
                    num17(r.e_branch) + "," + num17(r.e_vortex) + "," + num17(r.e_opt) + "," +
                    num17(r.s_value) + "," + regime_name(r.regime) + "," +
                    (r.error.empty() ? r.winner : "ERROR") + "," + std::to_string(r.n_vortices) +
                    "," + num17(r.wall_ms);
  return row;
}

}  // namespace helical
