#pragma once

// Riemann-Liouville fractional integrals and derivatives on uniform grids.
//
// Integrals use product integration: the sampled function is interpolated
// piecewise linearly and integrated exactly against the singular kernel
// (t-s)^{α-1}. Derivatives are finite differences of the order-(1-α) integral.

#include <span>
#include <vector>

namespace memwave {

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  int steps = 2;  ///< number of intervals; there are steps + 1 nodes

  double spacing() const { return (t_end - t_start) / steps; }
  double node(int i) const { return t_start + i * spacing(); }
  std::vector<double> nodes() const;
  void validate() const;
};

struct KernelOrder {
  double alpha = 0.5;  ///< in (0,1)
  int k = 0;           ///< integer part of a composite order k + α

  void validate() const;
};

/// Temporal weight w(t) = (1 - t/T)^σ on [0,T].
struct PowerTestFunction {
  double horizon = 1.0;
  double sigma = 20.0;

  double operator()(double t) const;
  /// max(20, 4 (k_max + 1) p') with p' = p/(p-1).
  static double default_sigma(double p, int k_max);
};

/// Weight table for ∫_0^{t_n} (t_n - s)^{α-1} f(s) ds ≈ Σ_j weight(n, j) f(t_j)
/// with piecewise-linear f on a uniform grid. No 1/Γ(α) factor is applied.
///
/// Weights depend on n - j except in the first column, so storage is O(N).
/// All weights are nonnegative and each row sums to t_n^α / α.
class ProductIntegrationWeights {
 public:
  ProductIntegrationWeights(double alpha, double spacing, int max_steps);

  double weight(int n, int j) const;
  double alpha() const { return alpha_; }
  double spacing() const { return h_; }
  int max_steps() const { return max_steps_; }

 private:
  double alpha_;
  double h_;
  int max_steps_;
  double scale_;                 // h^α / (α (α+1))
  std::vector<double> interior_;  // indexed by n - j, 1 <= n - j
  std::vector<double> first_;     // j = 0, indexed by n
};

/// I^α_{0|t} f at every node. Node 0 is 0. Throws DataError on non-finite samples.
std::vector<double> rl_left_integral(std::span<const double> samples, const TimeGrid& grid,
                                     double alpha);
/// I^α_{t|T} f at every node, T = grid.t_end. The last node is 0.
std::vector<double> rl_right_integral(std::span<const double> samples, const TimeGrid& grid,
                                      double alpha);

/// D^α_{0|t} f = d/dt I^{1-α}_{0|t} f by fourth-order finite differences.
/// Requires grid.steps >= 8.
std::vector<double> rl_left_derivative(std::span<const double> samples, const TimeGrid& grid,
                                       double alpha);
/// D^α_{t|T} f = -d/dt I^{1-α}_{t|T} f.
std::vector<double> rl_right_derivative(std::span<const double> samples, const TimeGrid& grid,
                                        double alpha);
/// D^{k+α}_{t|T} f = (-1)^k d^k/dt^k D^α_{t|T} f, all steps numerical.
std::vector<double> rl_right_derivative_numeric(std::span<const double> samples,
                                                const TimeGrid& grid, const KernelOrder& order);

/// Closed form of D^{k+α}_{t|T} w for the power test function.
/// Requires σ - k - α > 0 and t in [0,T].
double rl_right_derivative_power(const PowerTestFunction& w, const KernelOrder& order, double t);

/// Fourth-order finite-difference derivative on a uniform grid (five-point
/// stencils, off-centre near the ends). Three or four values fall back to
/// second order.
std::vector<double> finite_difference_derivative(std::span<const double> values, double spacing);

/// Trapezoid rule over a uniform grid.
double trapezoid(std::span<const double> values, double spacing);

struct IntegrationByPartsCheck {
  double lhs = 0.0;  ///< ∫ f D^α_{0|t} g
  double rhs = 0.0;  ///< ∫ g D^α_{t|T} f
  double residual = 0.0;
  double relative = 0.0;  ///< residual / max(|lhs|, |rhs|)
};

IntegrationByPartsCheck check_integration_by_parts(std::span<const double> f,
                                                   std::span<const double> g, double alpha,
                                                   const TimeGrid& grid);

enum class LemmaVariant { weight_1_plus_t, weight_mixed, weight_mu, weight_mu_mixed };

/// Left-hand integral of the fractional test-function estimates divided by the
/// claimed T-power bound, for each T in horizons. σ <= 0 selects the default policy.
std::vector<double> lemma_integral_ratio(int k, double alpha, double p, LemmaVariant variant,
                                         double mu, std::span<const double> horizons,
                                         double sigma = 0.0);

}  // namespace memwave
