#include "helical/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace helical {

AngleState AngleState::from_spins(const SpinField& u, bool freeze_col0) {
  AngleState s(u.grid);
  s.freeze_col0 = freeze_col0;
  const int n = u.grid.n();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Vec2 v = u.at(i, j);
      s.phi[u.grid.idx(i, j)] = std::atan2(-v.x, v.y);
    }
  }
  return s;
}

SpinField AngleState::to_spins() const {
  SpinField u(grid);
  const int n = grid.n();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double a = phi[grid.idx(i, j)];
      u.at(i, j) = Vec2{-std::sin(a), std::cos(a)};
    }
  }
  return u;
}

namespace {

// direct energy in angle variables:
// (eps^2/2) sum 2 + 4c^2 - 4c cos d1 - 4c cos d2 + 2 cos(d1+d2), c = 1-delta
double energy_sum(const Grid& g, const std::vector<double>& phi, const ModelParams& p) {
  const int n = g.n();
  const double half_e2 = 0.5 * g.eps() * g.eps();
  const double ch = 1.0 - p.delta_hor(), cv = 1.0 - p.delta_ver();
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 2 < n; ++i) {
      const double d1 = phi[g.idx(i + 1, j)] - phi[g.idx(i, j)];
      const double d2 = phi[g.idx(i + 2, j)] - phi[g.idx(i + 1, j)];
      acc += half_e2 * (2.0 + 4.0 * ch * ch - 4.0 * ch * std::cos(d1) - 4.0 * ch * std::cos(d2) +
                        2.0 * std::cos(d1 + d2));
    }
  }
  for (int j = 0; j + 2 < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double d1 = phi[g.idx(i, j + 1)] - phi[g.idx(i, j)];
      const double d2 = phi[g.idx(i, j + 2)] - phi[g.idx(i, j + 1)];
      acc += half_e2 * (2.0 + 4.0 * cv * cv - 4.0 * cv * std::cos(d1) - 4.0 * cv * std::cos(d2) +
                        2.0 * std::cos(d1 + d2));
    }
  }
  return acc;
}

void grad_accumulate(const Grid& g, const std::vector<double>& phi, const ModelParams& p,
                     std::vector<double>& grad) {
  const int n = g.n();
  const double half_e2 = 0.5 * g.eps() * g.eps();
  const double ch = 1.0 - p.delta_hor(), cv = 1.0 - p.delta_ver();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 2 < n; ++i) {
      const double d1 = phi[g.idx(i + 1, j)] - phi[g.idx(i, j)];
      const double d2 = phi[g.idx(i + 2, j)] - phi[g.idx(i + 1, j)];
      const double s1 = std::sin(d1), s2 = std::sin(d2), s12 = std::sin(d1 + d2);
      grad[g.idx(i, j)] += half_e2 * (-4.0 * ch * s1 + 2.0 * s12);
      grad[g.idx(i + 1, j)] += half_e2 * (4.0 * ch * (s1 - s2));
      grad[g.idx(i + 2, j)] += half_e2 * (4.0 * ch * s2 - 2.0 * s12);
    }
  }
  for (int j = 0; j + 2 < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double d1 = phi[g.idx(i, j + 1)] - phi[g.idx(i, j)];
      const double d2 = phi[g.idx(i, j + 2)] - phi[g.idx(i, j + 1)];
      const double s1 = std::sin(d1), s2 = std::sin(d2), s12 = std::sin(d1 + d2);
      grad[g.idx(i, j)] += half_e2 * (-4.0 * cv * s1 + 2.0 * s12);
      grad[g.idx(i, j + 1)] += half_e2 * (4.0 * cv * (s1 - s2));
      grad[g.idx(i, j + 2)] += half_e2 * (4.0 * cv * s2 - 2.0 * s12);
    }
  }
}

// squared defects of the periodic dot-product condition
double penalty_sum(const Grid& g, const std::vector<double>& phi, double weight) {
  if (weight == 0.0) return 0.0;
  const int n = g.n();
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double a = std::cos(phi[g.idx(1, k)] - phi[g.idx(0, k)]) -
                     std::cos(phi[g.idx(n - 1, k)] - phi[g.idx(n - 2, k)]);
    const double b = std::cos(phi[g.idx(k, 1)] - phi[g.idx(k, 0)]) -
                     std::cos(phi[g.idx(k, n - 1)] - phi[g.idx(k, n - 2)]);
    acc += weight * (a * a + b * b);
  }
  return acc;
}

void penalty_grad(const Grid& g, const std::vector<double>& phi, double weight,
                  std::vector<double>& grad) {
  if (weight == 0.0) return;
  const int n = g.n();
  for (int k = 0; k < n; ++k) {
    {
      const double d0 = phi[g.idx(1, k)] - phi[g.idx(0, k)];
      const double d1 = phi[g.idx(n - 1, k)] - phi[g.idx(n - 2, k)];
      const double a = std::cos(d0) - std::cos(d1);
      const double f = 2.0 * weight * a;
      grad[g.idx(1, k)] += f * -std::sin(d0);
      grad[g.idx(0, k)] += f * std::sin(d0);
      grad[g.idx(n - 1, k)] += f * std::sin(d1);
      grad[g.idx(n - 2, k)] += f * -std::sin(d1);
    }
    {
      const double d0 = phi[g.idx(k, 1)] - phi[g.idx(k, 0)];
      const double d1 = phi[g.idx(k, n - 1)] - phi[g.idx(k, n - 2)];
      const double b = std::cos(d0) - std::cos(d1);
      const double f = 2.0 * weight * b;
      grad[g.idx(k, 1)] += f * -std::sin(d0);
      grad[g.idx(k, 0)] += f * std::sin(d0);
      grad[g.idx(k, n - 1)] += f * std::sin(d1);
      grad[g.idx(k, n - 2)] += f * -std::sin(d1);
    }
  }
}

void apply_freeze(const AngleState& s, std::vector<double>& grad) {
  if (!s.freeze_col0) return;
  const int n = s.grid.n();
  for (int j = 0; j < n; ++j) grad[s.grid.idx(0, j)] = 0.0;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct DescentOut {
  std::vector<double> phi;
  double energy;
  double grad_norm;
};

DescentOut descend(const Grid& g, std::vector<double> phi, bool freeze, const ModelParams& p,
                   const OptimizeOptions& opts, std::vector<TracePoint>* trace, int* iter_base) {
  const int n = g.n();
  auto eval = [&](const std::vector<double>& x) {
    return energy_sum(g, x, p) + penalty_sum(g, x, opts.periodic_penalty);
  };
  double e = eval(phi);
  double step = opts.initial_step;
  std::vector<double> grad(phi.size()), trial(phi.size());
  double gnorm = 0.0;
  double last_recorded = std::numeric_limits<double>::quiet_NaN();
  for (int it = 0; it < opts.max_iter; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    grad_accumulate(g, phi, p, grad);
    penalty_grad(g, phi, opts.periodic_penalty, grad);
    if (freeze) {
      for (int j = 0; j < n; ++j) grad[g.idx(0, j)] = 0.0;
    }
    gnorm = inf_norm(grad);
    if (trace) {
      trace->push_back({(*iter_base)++, e, gnorm});
      last_recorded = e;
    }
    if (gnorm <= opts.grad_tol) break;
    double g2 = 0.0;
    for (double x : grad) g2 += x * x;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t k = 0; k < phi.size(); ++k) trial[k] = phi[k] - step * grad[k];
      const double et = eval(trial);
      if (et <= e - opts.armijo_c * step * g2) {
        phi.swap(trial);
        e = et;
        step *= 2.0;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no admissible step left at this scale
  }
  if (trace && !(last_recorded == e)) trace->push_back({(*iter_base)++, e, gnorm});
  return {std::move(phi), e, gnorm};
}

}  // namespace

double energy_of_angles(const AngleState& s, const ModelParams& p) {
  return energy_sum(s.grid, s.phi, p);
}

std::vector<double> energy_grad(const AngleState& s, const ModelParams& p) {
  std::vector<double> grad(s.phi.size(), 0.0);
  grad_accumulate(s.grid, s.phi, p, grad);
  apply_freeze(s, grad);
  return grad;
}

double penalized_energy(const AngleState& s, const ModelParams& p, double weight) {
  return energy_sum(s.grid, s.phi, p) + penalty_sum(s.grid, s.phi, weight);
}

std::vector<double> penalized_grad(const AngleState& s, const ModelParams& p, double weight) {
  std::vector<double> grad(s.phi.size(), 0.0);
  grad_accumulate(s.grid, s.phi, p, grad);
  penalty_grad(s.grid, s.phi, weight, grad);
  apply_freeze(s, grad);
  return grad;
}

MinimizeResult minimize(const SpinField& init, const ModelParams& p, const OptimizeOptions& opts) {
  const Grid& g = init.grid;
  const int n = g.n();
  for (int j = 0; j < n; ++j) {
    const Vec2 v = init.at(0, j);
    if (std::abs(v.x) > 1e-12 || std::abs(v.y - 1.0) > 1e-12) {
      throw std::invalid_argument("minimize: initial field violates u(0,.) = (0,1)^T");
    }
  }
  AngleState s = AngleState::from_spins(init, true);
  for (int j = 0; j < n; ++j) s.phi[g.idx(0, j)] = 0.0;

  MinimizeResult out{SpinField(g), {}, 0.0, 0.0};
  int iter_base = 0;
  DescentOut best = descend(g, s.phi, true, p, opts, &out.trace, &iter_base);
  if (opts.method == OptimizeMethod::AnnealedRestarts) {
    std::mt19937_64 rng(opts.seed);
    double amp = opts.restart_amplitude;
    for (int round = 0; round < opts.restart_rounds; ++round) {
      std::vector<double> phi = best.phi;
      std::uniform_real_distribution<double> noise(-amp, amp);
      for (int j = 0; j < n; ++j) {
        for (int i = 1; i < n; ++i) phi[g.idx(i, j)] += noise(rng);
      }
      DescentOut cand = descend(g, phi, true, p, opts, nullptr, &iter_base);
      if (cand.energy < best.energy) {
        best = std::move(cand);
        out.trace.push_back({iter_base, best.energy, best.grad_norm});
      }
      amp *= opts.restart_decay;
    }
  }
  s.phi = best.phi;
  out.field = s.to_spins();
  for (int j = 0; j < n; ++j) out.field.at(0, j) = Vec2{0.0, 1.0};
  out.final_energy = best.energy;
  out.final_grad_norm = best.grad_norm;
  return out;
}

}  // namespace helical
