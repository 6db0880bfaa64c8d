#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "helical/lattice.hpp"
#include "helical/optimize.hpp"

namespace helical {

enum class Regime { F, B, VS };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::F: return "F";
    case Regime::B: return "B";
    default: return "VS";
  }
}

struct ScalingValue {
  double value;
  Regime regime;
};

/// s(eps,delta) = min{ delta^2, eps delta^{3/2}(|ln(eps/sqrt(delta))|+1),
/// eps sqrt(delta) } with regime labels; boundary ties resolve F over B over VS.
ScalingValue scaling_s(double eps, double delta);

struct SweepStrategies {
  bool ferro = true;
  bool branch = true;
  bool vortex = true;
  bool optimize = false;
};

struct SweepRecord {
  double eps = 0.0;
  double delta = 0.0;
  double e_ferro = std::numeric_limits<double>::quiet_NaN();
  double e_branch = std::numeric_limits<double>::quiet_NaN();
  double e_vortex = std::numeric_limits<double>::quiet_NaN();
  double e_opt = std::numeric_limits<double>::quiet_NaN();
  double s_value = 0.0;
  Regime regime = Regime::F;
  std::string winner;
  std::int64_t n_vortices = -1;
  double wall_ms = 0.0;
  std::string error;  // non-empty when the cell failed

  double best_energy() const;
};

struct SweepOptions {
  SweepStrategies strategies;
  OptimizeOptions optimizer;
  int threads = 1;
  std::uint64_t seed = 0;
};

/// Evaluate every (eps, delta) cell; failed cells carry an error marker. The
/// callback (when given) receives records in cell order as they complete.
std::vector<SweepRecord> phase_sweep(const std::vector<double>& eps_list,
                                     const std::vector<double>& delta_list,
                                     const SweepOptions& opts,
                                     const std::function<void(const SweepRecord&)>& on_record = {});

struct FitResult {
  double c_max = 0.0;        // max energy_best / s
  double loglog_slope = 0.0; // least-squares slope of log(e_best) vs log(s)
  int n_records = 0;
};

/// Bound constant over the records of one regime (>= 3 required).
FitResult fit_constant(const std::vector<SweepRecord>& records, Regime regime);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRecord& r);

}  // namespace helical
