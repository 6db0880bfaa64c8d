#include "helical/lattice.hpp"

#include <algorithm>

namespace helical {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Grid::Grid(double eps) : eps_(eps) {
  if (!(eps > 0.0) || !(eps < 0.5)) {
    throw std::invalid_argument("Grid: eps must lie in (0, 1/2), got " + std::to_string(eps));
  }
  int n = 0;
  while (static_cast<double>(n) * eps_ < 1.0) ++n;
  n_ = n;
}

ModelParams::ModelParams(double delta_hor, double delta_ver) : dh_(delta_hor), dv_(delta_ver) {
  if (!(dh_ > 0.0) || !(dh_ < 1.0) || !(dv_ > 0.0) || !(dv_ < 1.0)) {
    throw std::invalid_argument("ModelParams: deltas must lie in (0,1)");
  }
}

double wrap_angle(double theta) {
  double t = std::remainder(theta, 2.0 * kPi);  // in [-pi, pi]
  if (t >= kPi) t -= 2.0 * kPi;
  return t;
}

AngularField angles_from_spins(const SpinField& u) {
  const Grid& g = u.grid;
  AngularField th(g);
  const int n = g.n();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      const Vec2 a = u.at(i, j), b = u.at(i + 1, j);
      const double d = std::clamp(dot(a, b), -1.0, 1.0);
      th.hor_at(i, j) = sign_neg(cross(a, b)) * std::acos(d);
    }
  }
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Vec2 a = u.at(i, j), b = u.at(i, j + 1);
      const double d = std::clamp(dot(a, b), -1.0, 1.0);
      th.ver_at(i, j) = sign_neg(cross(a, b)) * std::acos(d);
    }
  }
  return th;
}

CurlViolation::CurlViolation(int i_, int j_, double value_, const std::string& what_)
    : std::runtime_error(what_), i(i_), j(j_), value(value_) {}

namespace {
void check_quantized_curl(const AngularField& th, double tol) {
  const int n = th.grid.n();
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      const double c = th.ver_at(i + 1, j) - th.ver_at(i, j) - th.hor_at(i, j + 1) + th.hor_at(i, j);
      const double d = std::min({std::abs(c), std::abs(c - 2.0 * kPi), std::abs(c + 2.0 * kPi)});
      if (d > tol) {
        throw CurlViolation(i, j, c,
                            "curl condition violated at plaquette (" + std::to_string(i) + "," +
                                std::to_string(j) + "): eps*curl = " + std::to_string(c));
      }
    }
  }
}
}  // namespace

SpinField spins_from_angles(const AngularField& theta, Vec2 seed, double curl_tol) {
  check_quantized_curl(theta, curl_tol);
  const Grid& g = theta.grid;
  const int n = g.n();
  SpinField u(g);
  u.at(0, 0) = seed;
  for (int j = 0; j + 1 < n; ++j) u.at(0, j + 1) = rotate(u.at(0, j), theta.ver_at(0, j));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) u.at(i + 1, j) = rotate(u.at(i, j), theta.hor_at(i, j));
  }
  return u;
}

ChiralityField chirality_from_angles(const AngularField& theta, const ModelParams& p) {
  const Grid& g = theta.grid;
  ChiralityField c(g);
  const double ah = std::sqrt(2.0 / p.delta_hor());
  const double av = std::sqrt(2.0 / p.delta_ver());
  const int n = g.n();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t k = g.idx(i, j);
      c.w[k] = ah * std::sin(0.5 * theta.hor[k]);
      c.z[k] = av * std::sin(0.5 * theta.ver[k]);
    }
  }
  return c;
}

ChiralityField scaled_chirality(const ChiralityField& c, const ModelParams& p) {
  ChiralityField t(c.grid);
  const double gamma = p.gamma();
  for (std::size_t k = 0; k < c.w.size(); ++k) {
    t.w[k] = gamma * c.w[k];
    t.z[k] = c.z[k];
  }
  return t;
}

}  // namespace helical
