#include "helical/topology.hpp"

#include <cmath>

#include "json.hpp"

namespace helical {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

std::string VortexSet::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const Vortex& v : list) j.push_back({{"i", v.i}, {"j", v.j}, {"winding", v.winding}});
  return j.dump();
}

CurlField discrete_curl(const AngularField& theta) {
  const Grid& g = theta.grid;
  CurlField c(g);
  const int n = g.n();
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      c.values[c.idx(i, j)] =
          theta.ver_at(i + 1, j) - theta.ver_at(i, j) - theta.hor_at(i, j + 1) + theta.hor_at(i, j);
    }
  }
  return c;
}

VortexSet vortices(const AngularField& theta, double tol) {
  const CurlField c = discrete_curl(theta);
  const int m = theta.grid.n() - 1;
  VortexSet out;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const double v = c.at(i, j);
      if (std::abs(v) <= tol) continue;
      if (std::abs(v - kTwoPi) <= tol) {
        out.list.push_back({i, j, +1});
      } else if (std::abs(v + kTwoPi) <= tol) {
        out.list.push_back({i, j, -1});
      } else {
        throw CurlViolation(i, j, v,
                            "non-quantized eps*curl at plaquette (" + std::to_string(i) + "," +
                                std::to_string(j) + "): " + std::to_string(v));
      }
    }
  }
  return out;
}

VortexBoundReport vortex_energy_bound_check(const SpinField& u, const ModelParams& p) {
  if (!p.isotropic_deltas() || !(p.delta_hor() < 0.5)) {
    throw std::invalid_argument("vortex_energy_bound_check: requires delta_hor = delta_ver < 1/2");
  }
  const AngularField th = angles_from_spins(u);
  const VortexSet vs = vortices(th);
  const EnergyBreakdown e = energy_direct(u, p);
  VortexBoundReport rep;
  rep.n_vortices = vs.count();
  rep.lhs = u.grid.eps() * u.grid.eps() * static_cast<double>(vs.count());
  rep.rhs = 64.0 * e.total;
  rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12) + 1e-300;
  rep.hor_half_pi = large_angle_set(th, p, 0.5 * kPi, Direction::Hor);
  rep.ver_half_pi = large_angle_set(th, p, 0.5 * kPi, Direction::Ver);
  rep.vortex_angles_large = true;
  for (const Vortex& v : vs.list) {
    const double m = std::max(
        std::max(std::abs(th.hor_at(v.i, v.j)), std::abs(th.hor_at(v.i, v.j + 1))),
        std::max(std::abs(th.ver_at(v.i, v.j)), std::abs(th.ver_at(v.i + 1, v.j))));
    if (m < 0.5 * kPi - 1e-12) rep.vortex_angles_large = false;
  }
  return rep;
}

PotentialGrid potential(const AngularField& theta, double normalization, double curl_tol) {
  const CurlField c = discrete_curl(theta);
  const int m = theta.grid.n() - 1;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      if (std::abs(c.at(i, j)) > curl_tol) {
        throw CurlViolation(i, j, c.at(i, j),
                            "potential: nonzero eps*curl at plaquette (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
      }
    }
  }
  const Grid& g = theta.grid;
  const int n = g.n();
  const double ce = normalization * g.eps();
  PotentialGrid pot(g);
  for (int j = 0; j + 1 < n; ++j) {
    pot.u[g.idx(0, j + 1)] = pot.u[g.idx(0, j)] + ce * theta.ver_at(0, j);
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      pot.u[g.idx(i + 1, j)] = pot.u[g.idx(i, j)] + ce * theta.hor_at(i, j);
    }
  }
  return pot;
}

}  // namespace helical
