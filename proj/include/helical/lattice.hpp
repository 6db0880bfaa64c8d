#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace helical {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// sign with sign(0) = -1
inline double sign_neg(double v) { return v > 0.0 ? 1.0 : -1.0; }

inline Vec2 rotate(Vec2 v, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Square lattice on [0,1)^2 with spacing eps: nodes (i*eps, j*eps), 0 <= i,j < n.
class Grid {
 public:
  explicit Grid(double eps);

  double eps() const { return eps_; }
  int n() const { return n_; }
  std::size_t node_count() const { return static_cast<std::size_t>(n_) * n_; }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * n_ + i; }
  bool contains(int i, int j) const { return i >= 0 && j >= 0 && i < n_ && j < n_; }

  // index-set sizes per the neighbor/next-to-nearest-neighbor definitions
  std::size_t count_n_hor() const { return n_ < 2 ? 0 : static_cast<std::size_t>(n_ - 1) * n_; }
  std::size_t count_n_ver() const { return count_n_hor(); }
  std::size_t count_nn_hor() const { return n_ < 3 ? 0 : static_cast<std::size_t>(n_ - 2) * n_; }
  std::size_t count_nn_ver() const { return count_nn_hor(); }

  bool in_n_hor(int i, int j) const { return contains(i, j) && i + 1 <= n_ - 1; }
  bool in_n_ver(int i, int j) const { return contains(i, j) && j + 1 <= n_ - 1; }
  bool in_nn_hor(int i, int j) const { return contains(i, j) && i + 2 <= n_ - 1; }
  bool in_nn_ver(int i, int j) const { return contains(i, j) && j + 2 <= n_ - 1; }

  bool operator==(const Grid& o) const { return eps_ == o.eps_ && n_ == o.n_; }

 private:
  double eps_;
  int n_;
};

/// Interaction parameters delta in (0,1) for both lattice directions.
class ModelParams {
 public:
  ModelParams(double delta_hor, double delta_ver);
  static ModelParams isotropic(double delta) { return ModelParams(delta, delta); }

  double delta_hor() const { return dh_; }
  double delta_ver() const { return dv_; }
  bool isotropic_deltas() const { return dh_ == dv_; }
  double gamma() const { return std::sqrt(dh_ / dv_); }
  double theta_opt_hor() const { return std::acos(1.0 - dh_); }
  double theta_opt_ver() const { return std::acos(1.0 - dv_); }

 private:
  double dh_, dv_;
};

/// Unit spins on grid nodes.
struct SpinField {
  Grid grid;
  std::vector<Vec2> spins;

  explicit SpinField(const Grid& g) : grid(g), spins(g.node_count(), Vec2{0.0, 1.0}) {}

  Vec2& at(int i, int j) { return spins[grid.idx(i, j)]; }
  Vec2 at(int i, int j) const { return spins[grid.idx(i, j)]; }
};

/// Per-bond oriented angles in [-pi, pi). hor(i,j) is defined for i <= n-2,
/// ver(i,j) for j <= n-2; the trailing column/row slots stay zero.
struct AngularField {
  Grid grid;
  std::vector<double> hor;
  std::vector<double> ver;

  explicit AngularField(const Grid& g)
      : grid(g), hor(g.node_count(), 0.0), ver(g.node_count(), 0.0) {}

  double& hor_at(int i, int j) { return hor[grid.idx(i, j)]; }
  double hor_at(int i, int j) const { return hor[grid.idx(i, j)]; }
  double& ver_at(int i, int j) { return ver[grid.idx(i, j)]; }
  double ver_at(int i, int j) const { return ver[grid.idx(i, j)]; }
};

/// Chirality order parameters w (horizontal) and z (vertical).
struct ChiralityField {
  Grid grid;
  std::vector<double> w;
  std::vector<double> z;

  explicit ChiralityField(const Grid& g)
      : grid(g), w(g.node_count(), 0.0), z(g.node_count(), 0.0) {}

  double w_at(int i, int j) const { return w[grid.idx(i, j)]; }
  double z_at(int i, int j) const { return z[grid.idx(i, j)]; }
};

/// Wrap an angle to [-pi, pi).
double wrap_angle(double theta);

/// Oriented bond angles of a spin field; dot products are clamped to [-1,1]
/// and sign(0) = -1 sends antipodal pairs to -pi.
AngularField angles_from_spins(const SpinField& u);

struct CurlViolation : std::runtime_error {
  int i, j;
  double value;
  CurlViolation(int i_, int j_, double value_, const std::string& what_);
};

/// Rebuild spins from bond angles: column 0 by cumulative vertical rotations
/// of `seed`, then each row by cumulative horizontal rotations. Requires the
/// quantized curl condition (eps*curl in {-2pi,0,2pi} within tol).
SpinField spins_from_angles(const AngularField& theta, Vec2 seed, double curl_tol = 1e-9);

/// w = sqrt(2/delta_hor) sin(theta_hor/2), z = sqrt(2/delta_ver) sin(theta_ver/2).
ChiralityField chirality_from_angles(const AngularField& theta, const ModelParams& p);

/// The scaled pair (gamma*w, z) used by the renormalized energy.
ChiralityField scaled_chirality(const ChiralityField& c, const ModelParams& p);

}  // namespace helical
