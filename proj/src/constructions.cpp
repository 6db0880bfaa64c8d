#include "helical/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "helical/topology.hpp"

namespace helical {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

SpinField ferromagnet(const Grid& g) { return SpinField(g); }

SpinField helix(const Grid& g, const ModelParams& p, int sign_hor, int sign_ver) {
  if (sign_hor * sign_hor != 1 || sign_ver * sign_ver != 1) {
    throw std::invalid_argument("helix: signs must be +1 or -1");
  }
  AngularField th(g);
  const double a = sign_hor * p.theta_opt_hor();
  const double b = sign_ver * p.theta_opt_ver();
  const int n = g.n();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) th.hor_at(i, j) = a;
  }
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i < n; ++i) th.ver_at(i, j) = b;
  }
  return spins_from_angles(th, Vec2{0.0, 1.0});
}

// ---------------------------------------------------------------------------
// branching
// ---------------------------------------------------------------------------

BranchingSpec BranchingSpec::defaults(const Grid& g, const ModelParams& p) {
  if (!p.isotropic_deltas()) {
    throw std::invalid_argument("branching: requires delta_hor = delta_ver");
  }
  const double eps = g.eps();
  const double sq = std::sqrt(p.delta_hor());
  BranchingSpec s;
  s.generations = std::max(1, static_cast<int>(std::ceil(std::abs(std::log(eps / sq)) / std::log(2.0))));
  const double hN = std::ldexp(1.0, -s.generations);  // 2^-N
  s.lambda = std::min(eps / (2.0 * sq), 0.5 * hN);
  return s;
}

namespace {

// Sharp branching profile. All interfaces have slope 0, inf or +-45 degrees,
// so the y-slope field (the vertical component) of the potential per column is
// a simple periodic step pattern.
struct BranchGeometry {
  double theta;  // theta_opt
  int N;
  double H;  // 2^-N

  // band index k with x in [2^-(k+2), 2^-(k+1)), for H <= x < 1/2
  int band_of(double x) const {
    int k = 0;
    while (k < N - 2 && x < std::ldexp(1.0, -k - 2)) ++k;
    return k;
  }

  // integral of the horizontal component along [0, x] x {y}
  double hor_scan(double x, double y) const {
    if (x <= 0.0) return 0.0;
    double acc = 0.0;
    // boundary wedge layer [0, H]
    {
      const double a = std::min(x, H);
      const double tips = 2.0 * H;
      const double d = std::abs(y - tips * std::round(y / tips));
      if (d < a) acc -= theta * (a - d);
      if (x <= H) return acc;
    }
    // dyadic bands
    for (int k = N - 2; k >= 0; --k) {
      const double lo = std::ldexp(1.0, -k - 2), hi = std::ldexp(1.0, -k - 1);
      if (lo >= x) break;
      const double b = std::min(hi, x);
      const double period = std::ldexp(1.0, -k);
      double yf = y / period - std::floor(y / period);  // in [0,1)
      const double xc = period * std::min(yf, 1.0 - yf);
      const double cut = std::clamp(xc, lo, b);
      acc += theta * ((cut - lo) - (b - cut));
      if (x <= hi) return acc;
    }
    // constant continuation
    if (x > 0.5) acc -= theta * (x - 0.5);
    return acc;
  }

  // vertical-component step pattern of column x: breakpoints and slopes over
  // [y0, y1]; returns the piecewise-linear potential column anchored by
  // hor_scan at y0.
  PiecewiseLinear1D column_potential(double x, double y0, double y1) const {
    PiecewiseLinear1D f;
    if (x <= 0.0) {
      f.tau = {y0, y1};
      f.val = {0.0, 0.0};
      return f;
    }
    // per-period breakpoints (offsets) and slopes in between
    double period = 0.0;
    std::vector<double> offs;
    std::vector<double> slopes;  // slope on [offs[k], offs[k+1]), last wraps
    if (x <= H) {
      period = 2.0 * H;
      offs = {0.0, x, 2.0 * H - x};
      slopes = {theta, 0.0, -theta};  // -theta piece ends at the next tip
    } else if (x < 0.5) {
      const int k = band_of(x);
      period = std::ldexp(1.0, -k);
      // x lies in [period/4, period/2), so the offsets are increasing
      offs = {0.0, x, 0.5 * period, period - x};
      slopes = {theta, -theta, theta, -theta};
    } else {
      period = 1.0;
      offs = {0.0, 0.5};
      slopes = {theta, -theta};
    }
    f.tau.push_back(y0);
    f.val.push_back(hor_scan(x, y0));
    double ycur = y0;
    // walk breakpoints upward from y0
    double base = period * std::floor(y0 / period);
    std::size_t idx = 0;
    while (base + offs[idx] <= y0 + 1e-18) {
      ++idx;
      if (idx == offs.size()) {
        idx = 0;
        base += period;
      }
    }
    while (ycur < y1) {
      const double ynext = std::min(base + offs[idx], y1);
      const std::size_t seg = idx == 0 ? offs.size() - 1 : idx - 1;
      const double v = f.val.back() + slopes[seg] * (ynext - ycur);
      f.tau.push_back(ynext);
      f.val.push_back(v);
      ycur = ynext;
      if (ynext == base + offs[idx]) {
        ++idx;
        if (idx == offs.size()) {
          idx = 0;
          base += period;
        }
      }
    }
    return f;
  }
};

}  // namespace

AngularField branching_angles(const Grid& g, const ModelParams& p, const BranchingSpec& spec,
                              bool periodic) {
  if (!p.isotropic_deltas()) {
    throw std::invalid_argument("branching: requires delta_hor = delta_ver");
  }
  if (spec.generations < 1) throw std::invalid_argument("branching: generations must be >= 1");
  const double hN = std::ldexp(1.0, -spec.generations);
  if (!(spec.lambda > 0.0) || !(spec.lambda < hN)) {
    throw std::invalid_argument("branching: lambda must lie in (0, 2^-N)");
  }

  const int n = g.n();
  const double eps = g.eps();
  const double lam = spec.lambda;
  BranchGeometry geom{p.theta_opt_hor(), spec.generations, hN};
  const MollifierKernel kernel(lam);
  const GaussRule gl = gauss_legendre(32);

  // outer quadrature in x over the two half-supports of the kernel
  std::vector<double> sq, wq;
  for (int half = 0; half < 2; ++half) {
    const double a = half == 0 ? -lam : 0.0, b = half == 0 ? 0.0 : lam;
    for (int q = 0; q < 32; ++q) {
      const double s = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[q];
      sq.push_back(s);
      wq.push_back(0.5 * (b - a) * gl.weights[q] * kernel.density(s));
    }
  }
  const double wsum = [&] {
    double t = 0.0;
    for (double w : wq) t += w;
    return t;
  }();
  for (double& w : wq) w /= wsum;  // unit kernel mass on the quadrature itself

  // mollified potential at the lattice nodes (fold for the periodic variant)
  const double y_lo = -lam - eps, y_hi = (n - 1) * eps + lam + eps;
  std::vector<double> pot(g.node_count(), 0.0);
  const int icols = periodic ? (n + 1) / 2 + 1 : n;  // folded columns reuse the left half
  for (int i = 0; i < icols; ++i) {
    const double x = i * eps;
    std::vector<double> col(n, 0.0);
    for (std::size_t q = 0; q < sq.size(); ++q) {
      const double xprime = x - lam - sq[q];
      const PiecewiseLinear1D f = geom.column_potential(xprime, y_lo, y_hi);
      for (int j = 0; j < n; ++j) col[j] += wq[q] * mollify_at(kernel, f, j * eps);
    }
    for (int j = 0; j < n; ++j) pot[g.idx(i, j)] = col[j];
  }
  if (periodic) {
    // fold both coordinates about the midlines
    std::vector<double> folded(g.node_count());
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        folded[g.idx(i, j)] = pot[g.idx(std::min(i, n - 1 - i), std::min(j, n - 1 - j))];
      }
    }
    pot.swap(folded);
  }

  AngularField th(g);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      th.hor_at(i, j) = (pot[g.idx(i + 1, j)] - pot[g.idx(i, j)]) / eps;
    }
  }
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i < n; ++i) {
      th.ver_at(i, j) = (pot[g.idx(i, j + 1)] - pot[g.idx(i, j)]) / eps;
    }
  }

  // structural checks: exact curl-freeness and the boundary condition
  for (int j = 0; j + 1 < n; ++j) {
    if (std::abs(th.ver_at(0, j)) > 1e-12) {
      throw std::logic_error("branching: theta_ver(0,.) != 0");
    }
  }
  const VortexSet vs = vortices(th);
  if (!vs.list.empty()) throw std::logic_error("branching: construction produced vortices");
  return th;
}

SpinField branching(const Grid& g, const ModelParams& p, const BranchingSpec& spec) {
  return spins_from_angles(branching_angles(g, p, spec, false), Vec2{0.0, 1.0});
}

SpinField branching_periodic(const Grid& g, const ModelParams& p, const BranchingSpec& spec) {
  return spins_from_angles(branching_angles(g, p, spec, true), Vec2{0.0, 1.0});
}

// ---------------------------------------------------------------------------
// vortex competitor
// ---------------------------------------------------------------------------

int vortex_block_size(const ModelParams& p) {
  return static_cast<int>(std::floor(kPi / p.theta_opt_hor()));
}

int designed_vortex_count(const Grid& g, const ModelParams& p) {
  const int M = vortex_block_size(p);
  int count = 0;
  for (int j = 1; j <= g.n() - 2; j += 2 * M) ++count;
  return count;
}

namespace {

// absolute spin phase of the strip-and-bulk vortex pattern
double vortex_phase(int i, int j, int M, double theta) {
  const int r = j % (2 * M);
  if (i > M) return theta * (1 + i - r + M);
  if (r <= M) {  // block core
    if (i == 0) return 0.0;
    if (i <= r) return i * kPi / r;
    return kTwoPi - r * kPi / i;
  }
  // transition wedge toward the next block
  const int lvl = 1 + i - (r - M);
  return lvl > 0 ? theta * lvl : 0.0;
}

}  // namespace

AngularField vortex_angles(const Grid& g, const ModelParams& p) {
  if (!p.isotropic_deltas()) {
    throw std::invalid_argument("vortex_competitor: requires delta_hor = delta_ver");
  }
  const int M = vortex_block_size(p);
  const int n = g.n();
  if (M * g.eps() >= 1.0) {
    throw std::invalid_argument("vortex_competitor: boundary strip M*eps exceeds the domain");
  }
  const double theta = p.theta_opt_hor();
  SpinField u(g);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double phi = vortex_phase(i, j, M, theta);
      u.at(i, j) = Vec2{-std::sin(phi), std::cos(phi)};
    }
  }
  return angles_from_spins(u);
}

SpinField vortex_competitor(const Grid& g, const ModelParams& p) {
  const AngularField th = vortex_angles(g, p);
  vortices(th);  // raises if any plaquette is not quantized
  return spins_from_angles(th, Vec2{0.0, 1.0});
}

namespace {

// Mirror the left part of the bond field onto the right, flipping the sign of
// the mirrored horizontal angles. For even n the axis bond column is zeroed.
void fold_x(AngularField& th) {
  const int n = th.grid.n();
  if (n % 2 == 0) {
    const int c = (n - 2) / 2;
    for (int j = 0; j < n; ++j) th.hor_at(c, j) = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int e = c + 1; e + 1 < n; ++e) th.hor_at(e, j) = -th.hor_at(2 * c - e, j);
    }
    for (int j = 0; j + 1 < n; ++j) {
      for (int i = c + 1; i < n; ++i) th.ver_at(i, j) = th.ver_at(2 * c + 1 - i, j);
    }
  } else {
    const int h = (n - 1) / 2;
    for (int j = 0; j < n; ++j) {
      for (int e = h; e + 1 < n; ++e) th.hor_at(e, j) = -th.hor_at(n - 2 - e, j);
    }
    for (int j = 0; j + 1 < n; ++j) {
      for (int i = h + 1; i < n; ++i) th.ver_at(i, j) = th.ver_at(n - 1 - i, j);
    }
  }
}

void fold_y(AngularField& th) {
  const int n = th.grid.n();
  if (n % 2 == 0) {
    const int f = (n - 2) / 2;
    for (int i = 0; i < n; ++i) th.ver_at(i, f) = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int e = f + 1; e + 1 < n; ++e) th.ver_at(i, e) = -th.ver_at(i, 2 * f - e);
    }
    for (int j = f + 1; j < n; ++j) {
      for (int i = 0; i + 1 < n; ++i) th.hor_at(i, j) = th.hor_at(i, 2 * f + 1 - j);
    }
  } else {
    const int h = (n - 1) / 2;
    for (int i = 0; i < n; ++i) {
      for (int e = h; e + 1 < n; ++e) th.ver_at(i, e) = -th.ver_at(i, n - 2 - e);
    }
    for (int j = h + 1; j < n; ++j) {
      for (int i = 0; i + 1 < n; ++i) th.hor_at(i, j) = th.hor_at(i, n - 1 - j);
    }
  }
}

}  // namespace

SpinField vortex_periodic(const Grid& g, const ModelParams& p) {
  AngularField th = vortex_angles(g, p);
  fold_x(th);
  fold_y(th);
  vortices(th);  // quantization check
  return spins_from_angles(th, Vec2{0.0, 1.0});
}

}  // namespace helical
