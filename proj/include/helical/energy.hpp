#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "helical/lattice.hpp"

namespace helical {

/// Deterministic pairwise (tree) reduction; independent of thread count.
double pairwise_sum(const std::vector<double>& v);

/// q(t1, t2) = sin^2 t1 + sin^2 t2 - (1 - cos(t1 + t2)).
double q_fn(double theta1, double theta2);

/// Interface weight p. Equal arguments give exactly 1; near the removable
/// singularity |sin(t2/2)-sin(t1/2)| < 1e-6 the cosine form
/// cos^2((t2-t1)/4) cos(t1+t2) / cos^2((t1+t2)/4) is used instead of the
/// quotient, and the degenerate corners fall back to 1.
double p_fn(double theta1, double theta2);

/// Inclusive index rectangle used to restrict energy sums.
struct IndexRect {
  int i0 = 0, j0 = 0, i1 = 0, j1 = 0;
  bool contains(int i, int j) const { return i >= i0 && i <= i1 && j >= j0 && j <= j1; }
};

struct EnergyBreakdown {
  double e_hor = 0.0;
  double e_ver = 0.0;
  double total = 0.0;
  double well_hor = 0.0;
  double well_ver = 0.0;
  double interface_hor = 0.0;
  double interface_ver = 0.0;
  std::int64_t n_summands_hor = 0;
  std::int64_t n_summands_ver = 0;
  std::int64_t n_vortices = -1;  // filled by topology when requested
  std::string reason;            // set when a renormalized value is infinite

  std::string to_json() const;
};

/// Direct next-to-nearest-neighbor sums (eps^2/2) sum |u - 2(1-delta) u' + u''|^2.
EnergyBreakdown energy_direct(const SpinField& u, const ModelParams& p,
                              const std::optional<IndexRect>& region = std::nullopt);

/// Same energy through the chirality reformulation:
/// well terms delta^2 eps^2 (1-w^2)^2 over both index shifts plus
/// delta eps^2 p(theta,theta') |w'-w|^2.
EnergyBreakdown energy_reformulated(const SpinField& u, const ModelParams& p);

/// Direct-equal energy evaluated from bond angles only (per-direction identity
/// eps^2 [ (1-d-cos t1)^2 + (1-d-cos t2)^2 + q(t1,t2) ]).
EnergyBreakdown energy_from_angles(const AngularField& theta, const ModelParams& p,
                                   const std::optional<IndexRect>& region = std::nullopt);

struct RenormalizedEnergy {
  double value = std::numeric_limits<double>::infinity();
  bool finite = false;
  std::string reason;  // "boundary" or "periodicity" when infinite
};

/// E(u) / (sqrt(2) eps delta_ver^{3/2}) on fields with u(0,.) = (0,1)^T and the
/// periodic dot-product condition, +infinity with a reason otherwise.
RenormalizedEnergy renormalized_Hn(const SpinField& u, const ModelParams& p, double tol = 1e-9);

enum class Direction { Hor, Ver };

struct LargeAngleReport {
  std::vector<std::pair<int, int>> indices;  // bonds with |theta| >= beta
  double beta = 0.0;
  double lhs = 0.0;          // eps^2 * count
  double rhs = 0.0;          // 2 E_dir / ((1-d)^2 (1-d-cos beta)^2)
  double rhs_two_thirds_pi = std::numeric_limits<double>::quiet_NaN();  // 8 E_dir/(1-d)^2 at beta=2pi/3
  bool holds = false;
  double energy_dir = 0.0;
};

/// Bonds with |theta| >= beta in one direction together with the energy bound
/// on their count. beta must exceed both optimal angles and lie in (.., pi].
LargeAngleReport large_angle_set(const AngularField& theta, const ModelParams& p, double beta,
                                 Direction dir);

}  // namespace helical
