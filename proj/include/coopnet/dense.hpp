#pragma once

#include <vector>

namespace coopnet::dense {

// x^alpha with fast paths for the integral exponents the models use.
double pow_alpha(double base, double alpha);

struct DenseParams {
  double radius = 1.0;
  double path_loss_exp = 4.0;
  double propagation_constant = 1.0;  // K

  void validate() const;  // radius > 0, alpha > 1
};

// Disk split into `rings` annuli of width `width` (R = rings * width).
struct RingModel {
  int rings = 1;
  double width = 1.0;

  void validate() const;
};

// Row-stochastic relay-targeting probabilities: rows[i-1][j] = p_{i,j} for
// ring i = 1..N and target ring j = 0..i-1 (j = 0 is the sink).
struct RingDistribution {
  std::vector<std::vector<double>> rows;

  int rings() const { return static_cast<int>(rows.size()); }
  void validate() const;  // shape, entries >= 0, row sums within 1e-8 of 1
  static RingDistribution uniform(int n);
  static RingDistribution single_target(int n, const std::vector<int>& target);
};

// Combined transmit-plus-cooperation energy density for a sender at radius x
// relaying through radius y: (x-y)^alpha + y^(alpha-1) * x. Requires 0 <= y <= x.
double ring_cost(double x, double y, double alpha);

struct QMinResult {
  double y_star = 0.0;
  double q = 0.0;
};

// Minimum of ring_cost(x, ., alpha) over y in [0, x], located to 1e-10 in y.
// The bracket is seeded by a 1024-point scan before golden-section descent.
QMinResult q_min(double x, double alpha);

// K * integral of q(x) over [0, R] by adaptive quadrature (relative
// tolerance 1e-8).
double minimal_total_energy(const DenseParams& params);

// Per-ring coefficient of p_{i,j} in the network's mean energy:
// (i-j)^alpha + i*j^(alpha-1) for j >= 1, and i^alpha for j = 0 (direct to
// the sink, which pays nothing).
double ring_delta(int i, int j, double alpha);

// E(i) = r^alpha * [sum_{j<i} p_ij (i-j)^alpha + sum_{k>i} p_ki i^(alpha-1) k].
std::vector<double> ring_energy_profile(const RingModel& model, const RingDistribution& dist,
                                        double alpha);

struct MeanVariance {
  double mean = 0.0;
  double variance = 0.0;
};

MeanVariance mean_and_variance(const RingModel& model, const RingDistribution& dist,
                               double alpha);

// Each row concentrated on argmin_j ring_delta(i, j) (ties to the smaller j):
// the discrete analogue of the singular minimal-energy distribution.
RingDistribution min_total_assignment(const RingModel& model, double alpha);

struct BalanceResult {
  RingDistribution dist;
  bool converged = false;
  int iterations = 0;
  double objective = 0.0;        // variance at exit
  double projected_gradient_norm = 0.0;
  std::vector<double> objective_trace;  // start value plus every accepted step
};

// Minimizes the per-ring energy variance over the product of row simplices by
// projected gradient descent, warm-started from the uniform distribution.
// Accepted steps never increase the objective. Non-convergence within
// max_iters is reported through the flag, not an exception.
BalanceResult balance_optimize(const RingModel& model, double alpha, int max_iters,
                               double tol);

}  // namespace coopnet::dense
