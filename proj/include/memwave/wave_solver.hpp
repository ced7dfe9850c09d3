#pragma once

// Radial solver for
//   u_tt - Δu + μ/(1+t) u_t = c_γ ∫_0^t (t-τ)^{-γ} |u(τ)|^p dτ
// by finite volumes in r and leapfrog in t. Growth past the threshold is
// reported as certified growth, never as proved blow-up.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "memwave/exponents.hpp"
#include "memwave/fraccalc.hpp"

namespace memwave {

struct SpaceGrid {
  double r_max = 8.0;
  int points = 201;  ///< nodes r_i = i Δr, i = 0 .. points-1
  int n = 1;

  double spacing() const { return r_max / (points - 1); }
  double node(int i) const { return i * spacing(); }
  void validate() const;
};

enum class DataShape {
  bump,         ///< (R^2 - r^2)^2 / R^4 on r <= R
  smooth_bump,  ///< (1 - r^2/R^2)^4 on r <= R
  zero,
};

enum class SolverMode { direct, liouville, ode };

enum class Outcome { completed, blowup_detected, cfl_violation };

std::string to_string(DataShape shape);
std::string to_string(SolverMode mode);
std::string to_string(Outcome outcome);
DataShape data_shape_from_string(const std::string& s);
SolverMode solver_mode_from_string(const std::string& s);
Outcome outcome_from_string(const std::string& s);

struct InitialData {
  DataShape shape = DataShape::bump;
  double amplitude = 1.0;  ///< scales both u0 and u1
  double R = 1.0;          ///< support radius

  /// Profile value at radius r (before amplitude).
  double profile(double r) const;
  void validate() const;
  friend bool operator==(const InitialData&, const InitialData&) = default;
};

struct SimulationConfig {
  ModelParams model;
  double r_max = 8.0;
  int points = 201;
  double t_end = 4.0;
  double dt_factor = 0.5;  ///< Δt <= dt_factor Δr
  InitialData data;
  double blowup_threshold = 1e8;
  SolverMode mode = SolverMode::direct;
  bool richardson = false;  ///< refine the crossing time with a halved-grid run
  /// Relative amplitude below which a node counts as outside the support.
  double support_tolerance = 1e-10;
  bool store_profiles = false;

  SpaceGrid space() const { return {r_max, points, model.n}; }
  /// Number of time steps and the resulting step size.
  int time_steps() const;
  double time_step() const;
  void validate() const;
  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

/// Time series sharing one axis.
struct Traces {
  std::vector<double> t;
  std::vector<double> F;            ///< ∫ u dx
  std::vector<double> weighted_dF;  ///< (1+t)^μ F'(t), F' by backward half-step difference
  std::vector<double> sup_u;
  std::vector<double> energy;
  std::vector<double> support_radius;
  std::vector<double> lp_mass;      ///< ∫ |u|^p dx

  std::size_t size() const { return t.size(); }
  friend bool operator==(const Traces&, const Traces&) = default;
};

/// Full space-time samples (every step) for the weak-form diagnostics.
struct ProfileHistory {
  std::vector<double> t;
  std::vector<std::vector<double>> u;
  std::vector<std::vector<double>> u_t;     ///< central in time, one-sided at the ends
  std::vector<std::vector<double>> source;  ///< memory term at each time
};

struct RunRecord {
  static constexpr int kSchemaVersion = 1;
  int schema_version = kSchemaVersion;
  SimulationConfig config;
  Traces traces;
  Outcome outcome = Outcome::completed;
  std::optional<double> blowup_time_estimate;
  std::vector<std::string> notes;
  std::optional<ProfileHistory> profiles;  ///< not persisted
};

/// c_γ times product-trapezoid weights for ∫_0^{t_m} (t_m-τ)^{-γ} f(τ) dτ.
class MemoryKernel {
 public:
  MemoryKernel(double gamma, double dt, int max_steps);

  double gamma() const { return gamma_; }
  double c_gamma() const { return c_gamma_; }
  /// Weight of sample j in step m, without c_γ.
  double weight(int m, int j) const { return weights_.weight(m, j); }
  int max_steps() const { return weights_.max_steps(); }

 private:
  double gamma_;
  double c_gamma_;
  ProductIntegrationWeights weights_;
};

/// c_γ Σ_j w_{m,j} history[j][i] for every node i. history holds |u|^p
/// profiles for steps 0..m (at least m+1 rows of equal length).
std::vector<double> memory_source(std::span<const std::vector<double>> history, int m,
                                  const MemoryKernel& kernel);

/// Conservative radial Laplacian, 2n(u_1-u_0)/Δr^2 at the origin, zero flux at r_max.
void radial_laplacian(std::span<const double> u, const SpaceGrid& grid, std::span<double> out);

/// Radial cell volumes V_i (without the sphere measure).
std::vector<double> cell_volumes(const SpaceGrid& grid);

/// |S^{n-1}| Σ V_i f_i.
double radial_integral(std::span<const double> f, const SpaceGrid& grid);

RunRecord simulate(const SimulationConfig& config);

/// The Volterra ODE for F with the Hölder floor C0 (1+τ)^{-n(p-1)} F^p.
struct OdeTrace {
  std::vector<double> t;
  std::vector<double> F;
  std::vector<double> weighted_dF;
  std::optional<double> crossing_time;  ///< first time F exceeds the threshold
};

OdeTrace ode_model(const ModelParams& model, double R, double F0, double F1, double t_end,
                   int steps, double threshold = 1e8);

}  // namespace memwave
