#pragma once

#include <cstdint>
#include <vector>

#include "helical/lattice.hpp"

namespace helical {

/// Absolute-angle parametrization u_{i,j} = Rot(phi_{i,j}) (0,1)^T with an
/// optional frozen boundary column (phi(0,.) = 0).
struct AngleState {
  Grid grid;
  std::vector<double> phi;
  bool freeze_col0 = true;

  explicit AngleState(const Grid& g) : grid(g), phi(g.node_count(), 0.0) {}
  static AngleState from_spins(const SpinField& u, bool freeze_col0 = true);

  SpinField to_spins() const;
};

enum class OptimizeMethod { GradientDescent, AnnealedRestarts };

struct OptimizeOptions {
  OptimizeMethod method = OptimizeMethod::GradientDescent;
  int max_iter = 2000;
  double grad_tol = 1e-8;       // stop when ||grad||_inf falls below
  double initial_step = 1.0;
  double armijo_c = 1e-4;
  int restart_rounds = 5;
  double restart_amplitude = 0.78539816339744831;  // pi/4
  double restart_decay = 0.5;
  std::uint64_t seed = 0;
  double periodic_penalty = 0.0;  // weight of the squared periodicity defects
};

struct TracePoint {
  int iter;
  double energy;
  double grad_norm;
};

/// Lattice energy of the angle state (equals the direct spin energy).
double energy_of_angles(const AngleState& s, const ModelParams& p);

/// Analytic gradient; frozen entries report 0.
std::vector<double> energy_grad(const AngleState& s, const ModelParams& p);

/// Penalized objective used by minimize when periodic_penalty > 0.
double penalized_energy(const AngleState& s, const ModelParams& p, double weight);
std::vector<double> penalized_grad(const AngleState& s, const ModelParams& p, double weight);

struct MinimizeResult {
  SpinField field;
  std::vector<TracePoint> trace;
  double final_energy = 0.0;
  double final_grad_norm = 0.0;
};

/// Backtracking gradient descent (optionally with annealed restarts) from an
/// initial field satisfying u(0,.) = (0,1)^T.
MinimizeResult minimize(const SpinField& init, const ModelParams& p, const OptimizeOptions& opts);

}  // namespace helical
