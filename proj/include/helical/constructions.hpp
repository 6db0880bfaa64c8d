#pragma once

#include "helical/lattice.hpp"
#include "helical/mollifier.hpp"

namespace helical {

/// Constant field (0,1)^T.
SpinField ferromagnet(const Grid& g);

/// Uniform helix rotating by sign*theta_opt per bond in each direction,
/// seeded with (0,1)^T at the origin.
SpinField helix(const Grid& g, const ModelParams& p, int sign_hor, int sign_ver);

struct BranchingSpec {
  int generations = 1;   // N >= 1
  double lambda = 0.0;   // mollification radius, in (0, 2^-N)

  static BranchingSpec defaults(const Grid& g, const ModelParams& p);
};

/// Self-similar branching competitor: dyadic refinement of chirality domains
/// toward {x=0} with a boundary wedge layer, mollified over radius lambda.
/// The bond angles are discrete gradients of the mollified sharp potential,
/// so eps*curl vanishes identically and theta_ver(0,.) = 0.
AngularField branching_angles(const Grid& g, const ModelParams& p, const BranchingSpec& spec,
                              bool periodic = false);
SpinField branching(const Grid& g, const ModelParams& p, const BranchingSpec& spec);

/// Periodic variant: the branching potential folded about the domain midlines,
/// which makes both periodic dot-product conditions hold exactly.
SpinField branching_periodic(const Grid& g, const ModelParams& p, const BranchingSpec& spec);

/// Number of vortices the competitor places in a column of stacked blocks.
int designed_vortex_count(const Grid& g, const ModelParams& p);

/// floor(pi / theta_opt), the block width in bonds.
int vortex_block_size(const ModelParams& p);

/// Boundary-strip competitor with one vortex per stacked block and a uniform
/// (theta_opt, -theta_opt) helix in the bulk.
AngularField vortex_angles(const Grid& g, const ModelParams& p);
SpinField vortex_competitor(const Grid& g, const ModelParams& p);

/// Periodic variant built by mirror folds of the strip construction about the
/// domain midlines (winding flips across each fold).
SpinField vortex_periodic(const Grid& g, const ModelParams& p);

}  // namespace helical
