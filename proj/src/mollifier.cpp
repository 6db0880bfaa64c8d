#include "helical/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace helical {

namespace {
constexpr double kPi = 3.14159265358979323846;

double bump_unscaled(double u) {
  const double d = 1.0 - u * u;
  return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
}
}  // namespace

GaussRule gauss_legendre(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

MollifierKernel::MollifierKernel(double lambda, int table_size) : lambda_(lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("MollifierKernel: lambda must be positive");
  const GaussRule g8 = gauss_legendre(8);
  // mass of the unscaled bump on (-1,1)
  double mass = 0.0;
  const int cells = 2000;
  for (int c = 0; c < cells; ++c) {
    const double a = -1.0 + 2.0 * c / cells, b = -1.0 + 2.0 * (c + 1) / cells;
    for (int q = 0; q < 8; ++q) {
      const double u = 0.5 * (a + b) + 0.5 * (b - a) * g8.nodes[q];
      mass += 0.5 * (b - a) * g8.weights[q] * bump_unscaled(u);
    }
  }
  norm_ = 1.0 / (lambda_ * mass);

  cdf_.assign(table_size + 1, 0.0);
  moment_.assign(table_size + 1, 0.0);
  step_ = 2.0 * lambda_ / table_size;
  double acc_p = 0.0, acc_q = 0.0;
  for (int c = 0; c < table_size; ++c) {
    const double a = -lambda_ + step_ * c, b = a + step_;
    double dp = 0.0, dq = 0.0;
    for (int q = 0; q < 8; ++q) {
      const double t = 0.5 * (a + b) + 0.5 * (b - a) * g8.nodes[q];
      const double w = 0.5 * (b - a) * g8.weights[q] * density(t);
      dp += w;
      dq += w * t;
    }
    acc_p += dp;
    acc_q += dq;
    cdf_[c + 1] = acc_p;
    moment_[c + 1] = acc_q;
  }
  // remove the residual mass defect so that P(lambda) = 1 exactly
  const double scale = 1.0 / cdf_.back();
  for (double& v : cdf_) v *= scale;
  norm_ *= scale;
  for (double& v : moment_) v *= scale;
}

double MollifierKernel::density(double x) const {
  return norm_ * bump_unscaled(x / lambda_);
}

namespace {
// cubic Hermite on one table cell, derivative values supplied by the caller
double hermite(double t, double f0, double f1, double d0, double d1, double h) {
  const double t2 = t * t, t3 = t2 * t;
  return (2.0 * t3 - 3.0 * t2 + 1.0) * f0 + (t3 - 2.0 * t2 + t) * h * d0 +
         (-2.0 * t3 + 3.0 * t2) * f1 + (t3 - t2) * h * d1;
}
}  // namespace

double MollifierKernel::cdf(double x) const {
  if (x <= -lambda_) return 0.0;
  if (x >= lambda_) return 1.0;
  const double s = (x + lambda_) / step_;
  const std::size_t c = std::min<std::size_t>(static_cast<std::size_t>(s), cdf_.size() - 2);
  const double a = -lambda_ + step_ * c;
  return hermite((x - a) / step_, cdf_[c], cdf_[c + 1], density(a), density(a + step_), step_);
}

double MollifierKernel::moment(double x) const {
  if (x <= -lambda_) return 0.0;
  if (x >= lambda_) return moment_.back();
  const double s = (x + lambda_) / step_;
  const std::size_t c = std::min<std::size_t>(static_cast<std::size_t>(s), moment_.size() - 2);
  const double a = -lambda_ + step_ * c;
  return hermite((x - a) / step_, moment_[c], moment_[c + 1], a * density(a),
                 (a + step_) * density(a + step_), step_);
}

double MollifierKernel::total_abs_derivative() const { return 2.0 * density(0.0); }

double PiecewiseLinear1D::eval(double t) const {
  if (tau.empty()) return 0.0;
  if (t <= tau.front()) return val.front();
  if (t >= tau.back()) return val.back();
  const auto it = std::upper_bound(tau.begin(), tau.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - tau.begin()) - 1;
  const double w = (t - tau[k]) / (tau[k + 1] - tau[k]);
  return (1.0 - w) * val[k] + w * val[k + 1];
}

double PiecewiseConstant1D::eval(double t) const {
  const auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
  return values[static_cast<std::size_t>(it - breaks.begin())];
}

double mollify_at(const MollifierKernel& k, const PiecewiseConstant1D& f, double y) {
  // (p*f)(y) = sum_k c_k [P(y - a_k) - P(y - a_{k+1})] over pieces [a_k, a_{k+1})
  const double lam = k.lambda();
  double acc = 0.0;
  double hi = 1.0;  // P(y - (-inf))
  for (std::size_t b = 0; b < f.breaks.size(); ++b) {
    const double lo = k.cdf(y - f.breaks[b]);
    acc += f.values[b] * (hi - lo);
    hi = lo;
    if (y - f.breaks[b] <= -lam) break;  // every later window lies left of the support
  }
  acc += f.values.back() * hi;
  return acc;
}

std::vector<double> mollify_1d(const MollifierKernel& k, const PiecewiseConstant1D& f,
                               const std::vector<double>& points) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = mollify_at(k, f, points[i]);
  return out;
}

double mollify_at(const MollifierKernel& k, const PiecewiseLinear1D& f, double y) {
  // contribution of piece [tau_a, tau_b] with f = A + B*s at s = y - t:
  // (A + B y)(P(t_hi)-P(t_lo)) - B (Q(t_hi)-Q(t_lo))
  const double lam = k.lambda();
  if (f.tau.empty()) return 0.0;
  double acc = 0.0;
  const double lo_s = y - lam, hi_s = y + lam;
  // left constant continuation
  if (lo_s < f.tau.front()) {
    const double t_lo = y - std::min(f.tau.front(), hi_s);
    acc += f.val.front() * (k.cdf(std::min(lam, y - lo_s)) - k.cdf(t_lo));
  }
  for (std::size_t seg = 0; seg + 1 < f.tau.size(); ++seg) {
    const double a = f.tau[seg], b = f.tau[seg + 1];
    if (b <= lo_s || a >= hi_s) continue;
    const double sa = std::max(a, lo_s), sb = std::min(b, hi_s);
    const double B = (f.val[seg + 1] - f.val[seg]) / (b - a);
    const double A = f.val[seg] - B * a;
    const double t_lo = y - sb, t_hi = y - sa;
    const double dP = k.cdf(t_hi) - k.cdf(t_lo);
    const double dQ = k.moment(t_hi) - k.moment(t_lo);
    acc += (A + B * y) * dP - B * dQ;
  }
  // right constant continuation
  if (hi_s > f.tau.back()) {
    const double t_hi = y - std::max(f.tau.back(), lo_s);
    acc += f.val.back() * (k.cdf(t_hi) - k.cdf(-lam));
  }
  return acc;
}

}  // namespace helical
