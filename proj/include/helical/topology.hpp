#pragma once

#include <string>
#include <vector>

#include "helical/energy.hpp"
#include "helical/lattice.hpp"

namespace helical {

/// eps*curl per plaquette, defined for 0 <= i,j <= n-2.
struct CurlField {
  Grid grid;
  std::vector<double> values;  // (n-1)^2, row-major, i fastest

  explicit CurlField(const Grid& g)
      : grid(g), values(static_cast<std::size_t>(g.n() - 1) * (g.n() - 1), 0.0) {}

  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * (grid.n() - 1) + i; }
  double at(int i, int j) const { return values[idx(i, j)]; }
};

struct Vortex {
  int i = 0;
  int j = 0;
  int winding = 0;  // +1 or -1
};

struct VortexSet {
  std::vector<Vortex> list;
  std::size_t count() const { return list.size(); }
  std::string to_json() const;
};

/// Four-term alternating sum around each plaquette.
CurlField discrete_curl(const AngularField& theta);

/// Plaquettes with |eps*curl| = 2pi (within tol). Throws CurlViolation when a
/// value falls outside the quantized set {-2pi, 0, 2pi}.
VortexSet vortices(const AngularField& theta, double tol = 1e-9);

struct VortexBoundReport {
  std::size_t n_vortices = 0;
  double lhs = 0.0;  // eps^2 * #V
  double rhs = 0.0;  // 64 * E
  bool holds = false;
  LargeAngleReport hor_half_pi;  // sharper per-direction bounds at beta = pi/2
  LargeAngleReport ver_half_pi;
  bool vortex_angles_large = false;  // every vortex has a surrounding bond angle >= pi/2
};

/// Check eps^2 #V <= 64 E for isotropic delta in (0, 1/2).
VortexBoundReport vortex_energy_bound_check(const SpinField& u, const ModelParams& p);

/// Node potential with u(0,0) = 0 integrating c*theta: column 0 through the
/// vertical bonds, then each row through the horizontal bonds. Requires
/// eps*curl = 0 (within tol) everywhere.
struct PotentialGrid {
  Grid grid;
  std::vector<double> u;

  explicit PotentialGrid(const Grid& g) : grid(g), u(g.node_count(), 0.0) {}
  double at(int i, int j) const { return u[grid.idx(i, j)]; }
};

PotentialGrid potential(const AngularField& theta, double normalization = 1.0,
                        double curl_tol = 1e-9);

}  // namespace helical
