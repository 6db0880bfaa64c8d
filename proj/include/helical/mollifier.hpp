#pragma once

#include <cstddef>
#include <vector>

#include "helical/lattice.hpp"

namespace helical {

/// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Scaled smooth bump c/lambda * exp(-1/(1-(x/lambda)^2)) supported on
/// (-lambda, lambda), with unit mass. Keeps dense tables of the antiderivative
/// P(t) = int_{-lambda}^t p and the first moment Q(t) = int_{-lambda}^t s p(s) ds
/// for the analytic convolution of piecewise-linear functions.
class MollifierKernel {
 public:
  explicit MollifierKernel(double lambda, int table_size = 4096);

  double lambda() const { return lambda_; }
  double density(double x) const;      // p_lambda(x)
  double cdf(double x) const;          // P(x), P(lambda) = 1
  double moment(double x) const;       // Q(x)
  double total_abs_derivative() const; // int |p'| = 2 * max p

 private:
  double lambda_;
  double norm_;  // 1 / (lambda * int_{-1}^1 exp(-1/(1-u^2)) du)
  std::vector<double> cdf_;
  std::vector<double> moment_;
  double step_;
};

/// Piecewise-linear function of one variable given by breakpoints and values;
/// constant continuation outside [tau.front(), tau.back()].
struct PiecewiseLinear1D {
  std::vector<double> tau;
  std::vector<double> val;

  double eval(double t) const;
};

/// Piecewise-constant function: value[k] on [breaks[k-1], breaks[k]), with
/// value[0] left of breaks[0] and value.back() right of breaks.back().
struct PiecewiseConstant1D {
  std::vector<double> breaks;
  std::vector<double> values;  // size = breaks.size() + 1

  double eval(double t) const;
};

/// (p_lambda * f)(y), exact given the kernel tables.
double mollify_at(const MollifierKernel& k, const PiecewiseConstant1D& f, double y);
double mollify_at(const MollifierKernel& k, const PiecewiseLinear1D& f, double y);

/// Convolve a piecewise-constant f with the kernel at many points.
std::vector<double> mollify_1d(const MollifierKernel& k, const PiecewiseConstant1D& f,
                               const std::vector<double>& points);

}  // namespace helical
