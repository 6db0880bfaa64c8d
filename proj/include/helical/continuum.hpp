#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "helical/energy.hpp"
#include "helical/lattice.hpp"

namespace helical {

/// Piecewise-constant extension of node values to [0,1)^2 (constant per cell).
class PCExtension {
 public:
  PCExtension(const Grid& g, std::vector<double> values);
  double operator()(double x, double y) const;

 private:
  Grid grid_;
  std::vector<double> v_;
};

/// Continuous piecewise-affine extension on the two-triangle split of each cell.
class PAExtension {
 public:
  PAExtension(const Grid& g, std::vector<double> values);
  double operator()(double x, double y) const;

 private:
  Grid grid_;
  std::vector<double> v_;
};

/// Chirality pair (w,z) on [0,1]^2 with first partials, plus the functional's
/// sigma and gamma. Missing partials fall back to central differences.
struct ContinuumField {
  std::function<double(double, double)> w;
  std::function<double(double, double)> z;
  std::function<double(double, double)> dw1;  // d/dx w
  std::function<double(double, double)> dw2;  // d/dy w
  std::function<double(double, double)> dz1;  // d/dx z
  std::function<double(double, double)> dz2;  // d/dy z
  double sigma = 1.0;
  double gamma = 1.0;

  static ContinuumField flat(double sigma, double gamma);
  static ContinuumField shear(double sigma, double gamma);  // (w,z) = (y,x)
  /// Bicubic interpolation of sampled node values (partials by differences).
  static ContinuumField sampled(const Grid& g, std::vector<double> w_nodes,
                                std::vector<double> z_nodes, double sigma, double gamma);

  double eval_dw1(double x, double y) const;
  double eval_dz2(double x, double y) const;
  double eval_curl(double x, double y) const;  // d/dx z - d/dy w
};

struct ContinuumEnergy {
  double value = std::numeric_limits<double>::infinity();
  bool finite = false;
  std::string reason;
};

/// (1/sigma) int (w^2-g^2)^2 + (z^2-1)^2 + sigma int (d1 w)^2 + (d2 z)^2 by
/// composite midpoint quadrature; infinite (with reason) when a sampled domain
/// condition fails: z(0,.) = 0, |z(.,0)| = |z(.,1)|, |w(0,.)| = |w(1,.)|,
/// curl(w,z) = 0.
ContinuumEnergy H_continuum(const ContinuumField& f, int quad_res = 512,
                            double domain_tol = 1e-6);

/// Discrete spin field recovering f at the given lattice and parameters:
/// hor angles 2 asin(sqrt(delta_ver/2) w), vertical completion by telescoping,
/// curl-free with u(0,.) = (0,1)^T.
SpinField recovery_sequence(const ContinuumField& f, const Grid& g, const ModelParams& p);

struct GammaLevel {
  double eps;
  double delta_hor;
  double delta_ver;
};

/// Levels with eps/sqrt(2 delta_ver) -> sigma and delta_hor/delta_ver -> gamma^2.
class GammaSchedule {
 public:
  GammaSchedule(std::vector<GammaLevel> levels, double sigma, double gamma,
                double ratio_tol = 0.01);
  static GammaSchedule dyadic(int n_min, int n_max, double sigma, double gamma);

  const std::vector<GammaLevel>& levels() const { return levels_; }
  double sigma() const { return sigma_; }
  double gamma() const { return gamma_; }

 private:
  std::vector<GammaLevel> levels_;
  double sigma_, gamma_;
};

struct GammaRow {
  int level;  // dyadic exponent when applicable, else index
  double eps;
  double delta_ver;
  double h_n;  // renormalized discrete energy (may be inf)
  double h_continuum;
  double gap;
  std::string note;  // reason code when h_n is infinite
};

/// For each level: recovery sequence, renormalized energy, gap |H_n - H|.
std::vector<GammaRow> gamma_experiment(const ContinuumField& f, const GammaSchedule& sched,
                                       int quad_res = 512);

}  // namespace helical
