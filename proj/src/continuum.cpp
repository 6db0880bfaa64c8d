#include "helical/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace helical {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kFdStep = 1e-5;

void check_unit_square(double x, double y) {
  if (x < 0.0 || y < 0.0 || x >= 1.0 || y >= 1.0) {
    throw std::out_of_range("extension evaluated outside [0,1)^2");
  }
}
}  // namespace

PCExtension::PCExtension(const Grid& g, std::vector<double> values)
    : grid_(g), v_(std::move(values)) {
  if (v_.size() != g.node_count()) throw std::invalid_argument("PCExtension: bad value count");
}

double PCExtension::operator()(double x, double y) const {
  check_unit_square(x, y);
  const int n = grid_.n();
  const int i = std::min(static_cast<int>(x / grid_.eps()), n - 1);
  const int j = std::min(static_cast<int>(y / grid_.eps()), n - 1);
  return v_[grid_.idx(i, j)];
}

PAExtension::PAExtension(const Grid& g, std::vector<double> values)
    : grid_(g), v_(std::move(values)) {
  if (v_.size() != g.node_count()) throw std::invalid_argument("PAExtension: bad value count");
}

double PAExtension::operator()(double x, double y) const {
  check_unit_square(x, y);
  const int n = grid_.n();
  const double eps = grid_.eps();
  const int i = std::min(static_cast<int>(x / eps), n - 2);
  const int j = std::min(static_cast<int>(y / eps), n - 2);
  const double lx = x - i * eps, ly = y - j * eps;
  const double d1 = (v_[grid_.idx(i + 1, j)] - v_[grid_.idx(i, j)]) / eps;
  const double d2 = (v_[grid_.idx(i, j + 1)] - v_[grid_.idx(i, j)]) / eps;
  if (ly <= eps - lx) {  // lower triangle
    return d1 * lx + d2 * ly + v_[grid_.idx(i, j)];
  }
  const double d1t = (v_[grid_.idx(i + 1, j + 1)] - v_[grid_.idx(i, j + 1)]) / eps;
  const double d2t = (v_[grid_.idx(i + 1, j + 1)] - v_[grid_.idx(i + 1, j)]) / eps;
  return d1t * (lx - eps) + d2t * (ly - eps) + v_[grid_.idx(i + 1, j + 1)];
}

ContinuumField ContinuumField::flat(double sigma, double gamma) {
  ContinuumField f;
  f.w = [](double, double) { return 0.0; };
  f.z = [](double, double) { return 0.0; };
  f.dw1 = f.dw2 = f.dz1 = f.dz2 = [](double, double) { return 0.0; };
  f.sigma = sigma;
  f.gamma = gamma;
  return f;
}

ContinuumField ContinuumField::shear(double sigma, double gamma) {
  ContinuumField f;
  f.w = [](double, double y) { return y; };
  f.z = [](double x, double) { return x; };
  f.dw1 = [](double, double) { return 0.0; };
  f.dw2 = [](double, double) { return 1.0; };
  f.dz1 = [](double, double) { return 1.0; };
  f.dz2 = [](double, double) { return 0.0; };
  f.sigma = sigma;
  f.gamma = gamma;
  return f;
}

namespace {

// Catmull-Rom along one axis
double cr(double fm1, double f0, double f1, double f2, double t) {
  return f0 + 0.5 * t * (f1 - fm1 + t * (2.0 * fm1 - 5.0 * f0 + 4.0 * f1 - f2 +
                                         t * (3.0 * (f0 - f1) + f2 - fm1)));
}

struct Bicubic {
  Grid grid;
  std::vector<double> v;

  double node(int i, int j) const {
    const int n = grid.n();
    i = std::clamp(i, 0, n - 1);
    j = std::clamp(j, 0, n - 1);
    return v[grid.idx(i, j)];
  }

  double operator()(double x, double y) const {
    const int n = grid.n();
    const double eps = grid.eps();
    const double gx = std::clamp(x, 0.0, (n - 1) * eps) / eps;
    const double gy = std::clamp(y, 0.0, (n - 1) * eps) / eps;
    const int i = std::min(static_cast<int>(gx), n - 2);
    const int j = std::min(static_cast<int>(gy), n - 2);
    const double tx = gx - i, ty = gy - j;
    double rows[4];
    for (int r = -1; r <= 2; ++r) {
      rows[r + 1] = cr(node(i - 1, j + r), node(i, j + r), node(i + 1, j + r),
                       node(i + 2, j + r), tx);
    }
    return cr(rows[0], rows[1], rows[2], rows[3], ty);
  }
};

}  // namespace

ContinuumField ContinuumField::sampled(const Grid& g, std::vector<double> w_nodes,
                                       std::vector<double> z_nodes, double sigma, double gamma) {
  if (w_nodes.size() != g.node_count() || z_nodes.size() != g.node_count()) {
    throw std::invalid_argument("ContinuumField::sampled: bad node count");
  }
  Bicubic bw{g, std::move(w_nodes)};
  Bicubic bz{g, std::move(z_nodes)};
  ContinuumField f;
  f.w = [bw](double x, double y) { return bw(x, y); };
  f.z = [bz](double x, double y) { return bz(x, y); };
  f.sigma = sigma;
  f.gamma = gamma;
  return f;
}

namespace {
double central_d1(const std::function<double(double, double)>& f, double x, double y) {
  return (f(x + kFdStep, y) - f(x - kFdStep, y)) / (2.0 * kFdStep);
}
double central_d2(const std::function<double(double, double)>& f, double x, double y) {
  return (f(x, y + kFdStep) - f(x, y - kFdStep)) / (2.0 * kFdStep);
}
}  // namespace

double ContinuumField::eval_dw1(double x, double y) const {
  return dw1 ? dw1(x, y) : central_d1(w, x, y);
}
double ContinuumField::eval_dz2(double x, double y) const {
  return dz2 ? dz2(x, y) : central_d2(z, x, y);
}
double ContinuumField::eval_curl(double x, double y) const {
  const double a = dz1 ? dz1(x, y) : central_d1(z, x, y);
  const double b = dw2 ? dw2(x, y) : central_d2(w, x, y);
  return a - b;
}

ContinuumEnergy H_continuum(const ContinuumField& f, int quad_res, double domain_tol) {
  ContinuumEnergy out;
  const int nb = 1024;
  for (int k = 0; k < nb; ++k) {
    const double t = (k + 0.5) / nb;
    if (std::abs(f.z(0.0, t)) > domain_tol) {
      out.reason = "z(0,.) != 0";
      return out;
    }
    if (std::abs(std::abs(f.z(t, 0.0)) - std::abs(f.z(t, 1.0))) > domain_tol) {
      out.reason = "|z(.,0)| != |z(.,1)|";
      return out;
    }
    if (std::abs(std::abs(f.w(0.0, t)) - std::abs(f.w(1.0, t))) > domain_tol) {
      out.reason = "|w(0,.)| != |w(1,.)|";
      return out;
    }
  }
  const int nc = 256;
  for (int j = 0; j < nc; ++j) {
    for (int i = 0; i < nc; ++i) {
      const double x = (i + 0.5) / nc, y = (j + 0.5) / nc;
      if (std::abs(f.eval_curl(x, y)) > domain_tol) {
        out.reason = "curl != 0";
        return out;
      }
    }
  }
  std::vector<double> cells;
  cells.reserve(static_cast<std::size_t>(quad_res) * quad_res);
  const double h = 1.0 / quad_res;
  const double g2 = f.gamma * f.gamma;
  for (int j = 0; j < quad_res; ++j) {
    for (int i = 0; i < quad_res; ++i) {
      const double x = (i + 0.5) * h, y = (j + 0.5) * h;
      const double w = f.w(x, y), z = f.z(x, y);
      const double well = (w * w - g2) * (w * w - g2) + (z * z - 1.0) * (z * z - 1.0);
      const double d1w = f.eval_dw1(x, y), d2z = f.eval_dz2(x, y);
      cells.push_back(h * h * (well / f.sigma + f.sigma * (d1w * d1w + d2z * d2z)));
    }
  }
  out.value = pairwise_sum(cells);
  out.finite = true;
  return out;
}

SpinField recovery_sequence(const ContinuumField& f, const Grid& g, const ModelParams& p) {
  const int n = g.n();
  const double eps = g.eps();
  const double root = std::sqrt(0.5 * p.delta_ver());
  std::vector<double> phi_hor(g.node_count());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double x = i == n - 1 ? 1.0 : i * eps;  // clamp the last column to the trace
      const double y = j == n - 1 ? 1.0 : j * eps;
      const double arg = root * f.w(x, j * eps);
      if (std::abs(arg) > 1.0 || std::abs(root * f.z(i * eps, y)) > 1.0) {
        throw std::domain_error("recovery_sequence: lift admissibility fails, |arg| > 1");
      }
      phi_hor[g.idx(i, j)] = 2.0 * std::asin(arg);
    }
  }
  AngularField th(g);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) th.hor_at(i, j) = phi_hor[g.idx(i, j)];
  }
  for (int j = 0; j + 1 < n; ++j) {
    double acc = 0.0;
    th.ver_at(0, j) = 0.0;
    for (int i = 1; i < n; ++i) {
      acc += phi_hor[g.idx(i - 1, j + 1)] - phi_hor[g.idx(i - 1, j)];
      if (std::abs(acc) >= 0.5 * kPi) {
        throw std::domain_error("recovery_sequence: |phi_ver| >= pi/2, level too coarse");
      }
      th.ver_at(i, j) = acc;
    }
  }
  return spins_from_angles(th, Vec2{0.0, 1.0});
}

GammaSchedule::GammaSchedule(std::vector<GammaLevel> levels, double sigma, double gamma,
                             double ratio_tol)
    : levels_(std::move(levels)), sigma_(sigma), gamma_(gamma) {
  if (levels_.empty()) throw std::invalid_argument("GammaSchedule: empty");
  for (std::size_t k = 1; k < levels_.size(); ++k) {
    if (!(levels_[k].eps < levels_[k - 1].eps)) {
      throw std::invalid_argument("GammaSchedule: eps must be strictly decreasing");
    }
  }
  const GammaLevel& fin = levels_.back();
  const double s = fin.eps / std::sqrt(2.0 * fin.delta_ver);
  const double g2 = fin.delta_hor / fin.delta_ver;
  if (std::abs(s - sigma_) > ratio_tol * sigma_ ||
      std::abs(g2 - gamma_ * gamma_) > ratio_tol * std::max(gamma_ * gamma_, 1e-12)) {
    throw std::invalid_argument("GammaSchedule: level ratios do not match sigma/gamma targets");
  }
}

GammaSchedule GammaSchedule::dyadic(int n_min, int n_max, double sigma, double gamma) {
  if (n_min > n_max) throw std::invalid_argument("GammaSchedule: n_min > n_max");
  std::vector<GammaLevel> lv;
  for (int k = n_min; k <= n_max; ++k) {
    const double eps = std::ldexp(1.0, -k);
    const double dv = eps * eps / (2.0 * sigma * sigma);
    lv.push_back({eps, gamma * gamma * dv, dv});
  }
  return GammaSchedule(std::move(lv), sigma, gamma);
}

std::vector<GammaRow> gamma_experiment(const ContinuumField& f, const GammaSchedule& sched,
                                       int quad_res) {
  const ContinuumEnergy H = H_continuum(f, quad_res);
  if (!H.finite) {
    throw std::domain_error("gamma_experiment: field not in the functional's domain: " + H.reason);
  }
  std::vector<GammaRow> rows;
  for (std::size_t k = 0; k < sched.levels().size(); ++k) {
    const GammaLevel& lv = sched.levels()[k];
    GammaRow row;
    const double lg = -std::log2(lv.eps);
    row.level = std::abs(lg - std::round(lg)) < 1e-9 ? static_cast<int>(std::round(lg))
                                                     : static_cast<int>(k);
    row.eps = lv.eps;
    row.delta_ver = lv.delta_ver;
    row.h_continuum = H.value;
    const Grid g(lv.eps);
    const ModelParams p(lv.delta_hor, lv.delta_ver);
    const SpinField u = recovery_sequence(f, g, p);
    const RenormalizedEnergy hn = renormalized_Hn(u, p);
    row.h_n = hn.value;
    row.note = hn.reason;
    row.gap = std::abs(hn.value - H.value);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace helical
