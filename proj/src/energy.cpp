#include "helical/energy.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace helical {

namespace {
constexpr double kPi = 3.14159265358979323846;

double pairwise_range(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += v[k];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_range(v, h) + pairwise_range(v + h, n - h);
}
}  // namespace

double pairwise_sum(const std::vector<double>& v) { return pairwise_range(v.data(), v.size()); }

double q_fn(double theta1, double theta2) {
  const double s1 = std::sin(theta1), s2 = std::sin(theta2);
  return s1 * s1 + s2 * s2 - (1.0 - std::cos(theta1 + theta2));
}

double p_fn(double theta1, double theta2) {
  if (theta1 == theta2) return 1.0;
  const double ds = std::sin(0.5 * theta2) - std::sin(0.5 * theta1);
  if (std::abs(ds) >= 1e-6) return q_fn(theta1, theta2) / (2.0 * ds * ds);
  const double cq = std::cos(0.25 * (theta1 + theta2));
  if (std::abs(cq) <= 1e-8) return 1.0;  // only approachable at the corners (+-pi, +-pi)
  const double cd = std::cos(0.25 * (theta2 - theta1));
  return cd * cd * std::cos(theta1 + theta2) / (cq * cq);
}

std::string EnergyBreakdown::to_json() const {
  nlohmann::json j;
  j["e_hor"] = e_hor;
  j["e_ver"] = e_ver;
  j["total"] = total;
  j["well_hor"] = well_hor;
  j["well_ver"] = well_ver;
  j["interface_hor"] = interface_hor;
  j["interface_ver"] = interface_ver;
  j["n_vortices"] = n_vortices;
  j["reason"] = reason;
  return j.dump();
}

namespace {

bool in_region(const std::optional<IndexRect>& region, int i, int j) {
  return !region || region->contains(i, j);
}

void check_region(const Grid& g, const std::optional<IndexRect>& region) {
  if (!region) return;
  if (region->i0 < 0 || region->j0 < 0 || region->i1 > g.n() - 1 || region->j1 > g.n() - 1 ||
      region->i0 > region->i1 || region->j0 > region->j1) {
    throw std::invalid_argument("energy: region outside grid");
  }
}

// fills well/interface decomposition from bond angles over the restricted NN sets
void fill_decomposition(EnergyBreakdown& out, const AngularField& th, const ModelParams& p,
                        const std::optional<IndexRect>& region) {
  const Grid& g = th.grid;
  const int n = g.n();
  const double e2 = g.eps() * g.eps();
  std::vector<double> wh, ih, wv, iv;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 2 < n; ++i) {
      if (!in_region(region, i, j)) continue;
      const double t1 = th.hor_at(i, j), t2 = th.hor_at(i + 1, j);
      const double a1 = 1.0 - p.delta_hor() - std::cos(t1);
      const double a2 = 1.0 - p.delta_hor() - std::cos(t2);
      wh.push_back(e2 * (a1 * a1 + a2 * a2));
      ih.push_back(e2 * q_fn(t1, t2));
    }
  }
  for (int j = 0; j + 2 < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (!in_region(region, i, j)) continue;
      const double t1 = th.ver_at(i, j), t2 = th.ver_at(i, j + 1);
      const double a1 = 1.0 - p.delta_ver() - std::cos(t1);
      const double a2 = 1.0 - p.delta_ver() - std::cos(t2);
      wv.push_back(e2 * (a1 * a1 + a2 * a2));
      iv.push_back(e2 * q_fn(t1, t2));
    }
  }
  out.well_hor = pairwise_sum(wh);
  out.interface_hor = pairwise_sum(ih);
  out.well_ver = pairwise_sum(wv);
  out.interface_ver = pairwise_sum(iv);
  out.n_summands_hor = static_cast<std::int64_t>(wh.size());
  out.n_summands_ver = static_cast<std::int64_t>(wv.size());
}

}  // namespace

EnergyBreakdown energy_direct(const SpinField& u, const ModelParams& p,
                              const std::optional<IndexRect>& region) {
  const Grid& g = u.grid;
  check_region(g, region);
  const int n = g.n();
  const double half_e2 = 0.5 * g.eps() * g.eps();
  std::vector<double> sh, sv;
  const double ch = 2.0 * (1.0 - p.delta_hor());
  const double cv = 2.0 * (1.0 - p.delta_ver());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 2 < n; ++i) {
      if (!in_region(region, i, j)) continue;
      const Vec2 a = u.at(i, j), b = u.at(i + 1, j), c = u.at(i + 2, j);
      const double rx = a.x - ch * b.x + c.x;
      const double ry = a.y - ch * b.y + c.y;
      sh.push_back(half_e2 * (rx * rx + ry * ry));
    }
  }
  for (int j = 0; j + 2 < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (!in_region(region, i, j)) continue;
      const Vec2 a = u.at(i, j), b = u.at(i, j + 1), c = u.at(i, j + 2);
      const double rx = a.x - cv * b.x + c.x;
      const double ry = a.y - cv * b.y + c.y;
      sv.push_back(half_e2 * (rx * rx + ry * ry));
    }
  }
  EnergyBreakdown out;
  out.e_hor = pairwise_sum(sh);
  out.e_ver = pairwise_sum(sv);
  out.total = out.e_hor + out.e_ver;
  fill_decomposition(out, angles_from_spins(u), p, region);
  return out;
}

EnergyBreakdown energy_reformulated(const SpinField& u, const ModelParams& p) {
  const AngularField th = angles_from_spins(u);
  const ChiralityField c = chirality_from_angles(th, p);
  const Grid& g = u.grid;
  const int n = g.n();
  const double e2 = g.eps() * g.eps();
  const double dh = p.delta_hor(), dv = p.delta_ver();
  std::vector<double> wh, ih, wv, iv;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 2 < n; ++i) {
      const double w1 = c.w_at(i, j), w2 = c.w_at(i + 1, j);
      const double b1 = 1.0 - w1 * w1, b2 = 1.0 - w2 * w2;
      wh.push_back(dh * dh * e2 * (b1 * b1 + b2 * b2));
      const double dw = w2 - w1;
      ih.push_back(dh * e2 * p_fn(th.hor_at(i, j), th.hor_at(i + 1, j)) * dw * dw);
    }
  }
  for (int j = 0; j + 2 < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double z1 = c.z_at(i, j), z2 = c.z_at(i, j + 1);
      const double b1 = 1.0 - z1 * z1, b2 = 1.0 - z2 * z2;
      wv.push_back(dv * dv * e2 * (b1 * b1 + b2 * b2));
      const double dz = z2 - z1;
      iv.push_back(dv * e2 * p_fn(th.ver_at(i, j), th.ver_at(i, j + 1)) * dz * dz);
    }
  }
  EnergyBreakdown out;
  out.well_hor = pairwise_sum(wh);
  out.interface_hor = pairwise_sum(ih);
  out.well_ver = pairwise_sum(wv);
  out.interface_ver = pairwise_sum(iv);
  out.e_hor = out.well_hor + out.interface_hor;
  out.e_ver = out.well_ver + out.interface_ver;
  out.total = out.e_hor + out.e_ver;
  out.n_summands_hor = static_cast<std::int64_t>(wh.size());
  out.n_summands_ver = static_cast<std::int64_t>(wv.size());
  return out;
}

EnergyBreakdown energy_from_angles(const AngularField& theta, const ModelParams& p,
                                   const std::optional<IndexRect>& region) {
  check_region(theta.grid, region);
  EnergyBreakdown out;
  fill_decomposition(out, theta, p, region);
  out.e_hor = out.well_hor + out.interface_hor;
  out.e_ver = out.well_ver + out.interface_ver;
  out.total = out.e_hor + out.e_ver;
  return out;
}

RenormalizedEnergy renormalized_Hn(const SpinField& u, const ModelParams& p, double tol) {
  const Grid& g = u.grid;
  const int n = g.n();
  RenormalizedEnergy r;
  for (int j = 0; j < n; ++j) {
    const Vec2 s = u.at(0, j);
    if (std::abs(s.x) > tol || std::abs(s.y - 1.0) > tol) {
      r.reason = "boundary";
      return r;
    }
  }
  for (int k = 0; k < n; ++k) {
    const double a = dot(u.at(0, k), u.at(1, k));
    const double b = dot(u.at(n - 2, k), u.at(n - 1, k));
    const double c = dot(u.at(k, 0), u.at(k, 1));
    const double d = dot(u.at(k, n - 2), u.at(k, n - 1));
    if (std::abs(a - b) > tol || std::abs(c - d) > tol) {
      r.reason = "periodicity";
      return r;
    }
  }
  const EnergyBreakdown e = energy_direct(u, p);
  r.value = e.total / (std::sqrt(2.0) * g.eps() * std::pow(p.delta_ver(), 1.5));
  r.finite = true;
  return r;
}

LargeAngleReport large_angle_set(const AngularField& theta, const ModelParams& p, double beta,
                                 Direction dir) {
  const double lo = std::max(p.theta_opt_hor(), p.theta_opt_ver());
  if (!(beta > lo) || !(beta <= kPi)) {
    throw std::invalid_argument("large_angle_set: beta must lie in (max theta_opt, pi]");
  }
  const Grid& g = theta.grid;
  const int n = g.n();
  const double delta = dir == Direction::Hor ? p.delta_hor() : p.delta_ver();
  LargeAngleReport rep;
  rep.beta = beta;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const bool valid = dir == Direction::Hor ? g.in_n_hor(i, j) : g.in_n_ver(i, j);
      if (!valid) continue;
      const double t = dir == Direction::Hor ? theta.hor_at(i, j) : theta.ver_at(i, j);
      if (std::abs(t) >= beta) rep.indices.emplace_back(i, j);
    }
  }
  const EnergyBreakdown e = energy_from_angles(theta, p);
  rep.energy_dir = dir == Direction::Hor ? e.e_hor : e.e_ver;
  rep.lhs = g.eps() * g.eps() * static_cast<double>(rep.indices.size());
  const double om = 1.0 - delta;
  const double band = 1.0 - delta - std::cos(beta);
  rep.rhs = 2.0 * rep.energy_dir / (om * om * band * band);
  if (std::abs(beta - 2.0 * kPi / 3.0) < 1e-12) {
    rep.rhs_two_thirds_pi = 8.0 * rep.energy_dir / (om * om);
  }
  rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12) + 1e-300;
  return rep;
}

}  // namespace helical
