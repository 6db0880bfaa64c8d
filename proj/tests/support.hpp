#pragma once

#include <cmath>
#include <random>

#include "helical/lattice.hpp"

namespace helical::testing {

constexpr double kPi = 3.14159265358979323846;

/// Random spin field: independent uniform angles per node.
inline SpinField random_spins(const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  SpinField u(g);
  for (Vec2& s : u.spins) {
    const double a = ang(rng);
    s = Vec2{std::cos(a), std::sin(a)};
  }
  return u;
}

/// Curl-free angular field built from a random node potential with small
/// increments (no wrap-around, so eps*curl = 0 exactly).
inline AngularField random_curlfree_angles(const Grid& g, std::mt19937_64& rng,
                                           double amplitude = 0.7) {
  std::uniform_real_distribution<double> pot(-amplitude, amplitude);
  const int n = g.n();
  std::vector<double> rho(g.node_count());
  for (double& v : rho) v = pot(rng);
  AngularField th(g);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) th.hor_at(i, j) = rho[g.idx(i + 1, j)] - rho[g.idx(i, j)];
  }
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i < n; ++i) th.ver_at(i, j) = rho[g.idx(i, j + 1)] - rho[g.idx(i, j)];
  }
  return th;
}

}  // namespace helical::testing
