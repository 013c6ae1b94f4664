#include "coopnet/dense.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coopnet/errors.hpp"

namespace coopnet::dense {

double pow_alpha(double base, double alpha) {
  if (alpha == 4.0) {
    const double s = base * base;
    return s * s;
  }
  if (alpha == 2.0) return base * base;
  if (alpha == 3.0) return base * base * base;
  return std::pow(base, alpha);
}

void DenseParams::validate() const {
  if (!(radius > 0.0)) throw ConfigError("dense model radius must be positive");
  if (!(path_loss_exp > 1.0)) throw ConfigError("dense model needs path-loss exponent > 1");
}

void RingModel::validate() const {
  if (rings < 1) throw ConfigError("ring count must be >= 1");
  if (!(width > 0.0)) throw ConfigError("ring width must be positive");
}

void RingDistribution::validate() const {
  if (rows.empty()) throw ConfigError("ring distribution has no rows");
  for (int i = 1; i <= rings(); ++i) {
    const auto& row = rows[i - 1];
    if (static_cast<int>(row.size()) != i) {
      throw ConfigError("ring distribution row has wrong length");
    }
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= -1e-12) || !std::isfinite(v)) {
        throw ConfigError("ring distribution entry out of range");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-8) throw ConfigError("ring distribution row does not sum to 1");
  }
}

RingDistribution RingDistribution::uniform(int n) {
  RingDistribution d;
  d.rows.resize(n);
  for (int i = 1; i <= n; ++i) d.rows[i - 1].assign(i, 1.0 / i);
  return d;
}

RingDistribution RingDistribution::single_target(int n, const std::vector<int>& target) {
  RingDistribution d;
  d.rows.resize(n);
  for (int i = 1; i <= n; ++i) {
    d.rows[i - 1].assign(i, 0.0);
    d.rows[i - 1][target[i - 1]] = 1.0;
  }
  return d;
}

double ring_cost(double x, double y, double alpha) {
  if (x < 0.0 || y < 0.0 || y > x) throw std::domain_error("ring_cost needs 0 <= y <= x");
  return pow_alpha(x - y, alpha) + pow_alpha(y, alpha - 1.0) * x;
}

QMinResult q_min(double x, double alpha) {
  if (!(x > 0.0)) throw std::domain_error("q_min needs x > 0");
  if (!(alpha > 1.0)) throw std::domain_error("q_min needs alpha > 1");

  // Coarse scan seeds the bracket; ring_cost is not unimodal for every alpha.
  constexpr int kScanPoints = 1024;
  int best = 0;
  double best_val = ring_cost(x, 0.0, alpha);
  for (int k = 1; k <= kScanPoints; ++k) {
    const double y = x * static_cast<double>(k) / kScanPoints;
    const double v = ring_cost(x, std::min(y, x), alpha);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  double lo = x * static_cast<double>(std::max(0, best - 1)) / kScanPoints;
  double hi = x * static_cast<double>(std::min(kScanPoints, best + 1)) / kScanPoints;

  const auto f = [&](double y) { return ring_cost(x, std::clamp(y, 0.0, x), alpha); };
  constexpr double kInvPhi = 0.6180339887498949;
  constexpr double kTolY = 1e-10;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > kTolY) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
  }
  const double y_star = std::clamp(0.5 * (lo + hi), 0.0, x);
  return QMinResult{y_star, f(y_star)};
}

namespace {

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double rel_tol) {
  const double fa = f(a);
  const double fm = f(0.5 * (a + b));
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = rel_tol * std::max(std::abs(whole), 1e-30);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double minimal_total_energy(const DenseParams& params) {
  params.validate();
  const auto q = [&](double x) {
    return x > 0.0 ? q_min(x, params.path_loss_exp).q : 0.0;
  };
  return params.propagation_constant * integrate(q, 0.0, params.radius, 1e-8);
}

double ring_delta(int i, int j, double alpha) {
  if (j == 0) return pow_alpha(static_cast<double>(i), alpha);
  return pow_alpha(static_cast<double>(i - j), alpha) +
         static_cast<double>(i) * pow_alpha(static_cast<double>(j), alpha - 1.0);
}

std::vector<double> ring_energy_profile(const RingModel& model, const RingDistribution& dist,
                                        double alpha) {
  model.validate();
  if (dist.rings() != model.rings) throw ConfigError("ring distribution does not match model");
  const int n = model.rings;
  const double r_pow = pow_alpha(model.width, alpha);

  std::vector<double> energy(n, 0.0);
  for (int i = 1; i <= n; ++i) {
    double own = 0.0;
    for (int j = 0; j < i; ++j) {
      own += dist.rows[i - 1][j] * pow_alpha(static_cast<double>(i - j), alpha);
    }
    energy[i - 1] = r_pow * own;
  }
  // Cooperation load: ring i relays for every outer ring k targeting it.
  for (int k = 2; k <= n; ++k) {
    for (int i = 1; i < k; ++i) {
      energy[i - 1] += r_pow * dist.rows[k - 1][i] *
                       pow_alpha(static_cast<double>(i), alpha - 1.0) * static_cast<double>(k);
    }
  }
  return energy;
}

MeanVariance mean_and_variance(const RingModel& model, const RingDistribution& dist,
                               double alpha) {
  const std::vector<double> energy = ring_energy_profile(model, dist, alpha);
  const int n = model.rings;
  const double r_pow = pow_alpha(model.width, alpha);

  double mean = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j < i; ++j) {
      mean += ring_delta(i, j, alpha) * dist.rows[i - 1][j];
    }
  }
  mean *= r_pow / n;

  double profile_mean = 0.0;
  for (double e : energy) profile_mean += e;
  profile_mean /= n;
  double var = 0.0;
  for (double e : energy) var += (e - profile_mean) * (e - profile_mean);
  var /= n;
  return MeanVariance{mean, var};
}

RingDistribution min_total_assignment(const RingModel& model, double alpha) {
  model.validate();
  std::vector<int> target(model.rings, 0);
  for (int i = 1; i <= model.rings; ++i) {
    int best = 0;
    double best_val = ring_delta(i, 0, alpha);
    for (int j = 1; j < i; ++j) {
      const double v = ring_delta(i, j, alpha);
      if (v < best_val) {
        best_val = v;
        best = j;
      }
    }
    target[i - 1] = best;
  }
  return RingDistribution::single_target(model.rings, target);
}

namespace {

// Euclidean projection onto the probability simplex (sort-based).
void project_simplex(std::vector<double>& v) {
  static thread_local std::vector<double> u;
  u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0;
  double tau = 0.0;
  int rho = 0;
  for (int k = 0; k < static_cast<int>(u.size()); ++k) {
    cum += u[k];
    const double t = (cum - 1.0) / (k + 1);
    if (u[k] - t > 0.0) {
      rho = k + 1;
      tau = t;
    }
  }
  (void)rho;
  for (double& x : v) x = std::max(x - tau, 0.0);
}

double variance_of(const RingModel& model, const RingDistribution& p, double alpha) {
  const std::vector<double> energy = ring_energy_profile(model, p, alpha);
  double mean = 0.0;
  for (double e : energy) mean += e;
  mean /= energy.size();
  double var = 0.0;
  for (double e : energy) var += (e - mean) * (e - mean);
  return var / energy.size();
}

}  // namespace

BalanceResult balance_optimize(const RingModel& model, double alpha, int max_iters,
                               double tol) {
  model.validate();
  const int n = model.rings;
  const double r_pow = pow_alpha(model.width, alpha);

  BalanceResult result;
  result.dist = RingDistribution::uniform(n);
  if (n == 1) {
    result.converged = true;
    return result;
  }

  // Lipschitz bound for the gradient via the Frobenius norm of the linear map
  // p -> E; the fixed reference step 1/L also defines the stationarity measure.
  double frob = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j < i; ++j) {
      const double tx_coef = pow_alpha(static_cast<double>(i - j), alpha);
      frob += tx_coef * tx_coef;
      if (j >= 1) {
        const double coop_coef =
            pow_alpha(static_cast<double>(j), alpha - 1.0) * static_cast<double>(i);
        frob += coop_coef * coop_coef;
      }
    }
  }
  const double lipschitz = 2.0 / n * frob * r_pow * r_pow;
  const double ref_step = 1.0 / lipschitz;

  RingDistribution& p = result.dist;
  double obj = variance_of(model, p, alpha);
  double step = ref_step;
  result.objective_trace.push_back(obj);

  std::vector<double> residual(n);
  RingDistribution grad = RingDistribution::uniform(n);  // reused as scratch
  RingDistribution cand;

  const auto compute_grad = [&]() {
    const std::vector<double> energy = ring_energy_profile(model, p, alpha);
    double mean = 0.0;
    for (double e : energy) mean += e;
    mean /= n;
    for (int i = 0; i < n; ++i) residual[i] = energy[i] - mean;
    for (int i = 1; i <= n; ++i) {
      for (int j = 0; j < i; ++j) {
        double g = residual[i - 1] * pow_alpha(static_cast<double>(i - j), alpha);
        if (j >= 1) {
          g += residual[j - 1] * pow_alpha(static_cast<double>(j), alpha - 1.0) *
               static_cast<double>(i);
        }
        grad.rows[i - 1][j] = 2.0 / n * r_pow * g;
      }
    }
  };

  const auto stepped = [&](double s) {
    cand = p;
    for (int i = 1; i <= n; ++i) {
      for (int j = 0; j < i; ++j) cand.rows[i - 1][j] -= s * grad.rows[i - 1][j];
      project_simplex(cand.rows[i - 1]);
    }
  };

  int it = 0;
  for (; it < max_iters; ++it) {
    compute_grad();

    stepped(ref_step);
    double pg_sq = 0.0;
    for (int i = 1; i <= n; ++i) {
      for (int j = 0; j < i; ++j) {
        const double d = (p.rows[i - 1][j] - cand.rows[i - 1][j]) / ref_step;
        pg_sq += d * d;
      }
    }
    result.projected_gradient_norm = std::sqrt(pg_sq);
    if (result.projected_gradient_norm <= tol) {
      result.converged = true;
      break;
    }

    // Backtracking keeps accepted steps monotone in the objective.
    bool accepted = false;
    double trial = step;
    for (int back = 0; back < 60; ++back) {
      if (trial != ref_step) stepped(trial);
      const double cand_obj = variance_of(model, cand, alpha);
      if (cand_obj <= obj) {
        p = cand;
        obj = cand_obj;
        step = std::min(trial * 1.25, 64.0 * ref_step);
        accepted = true;
        result.objective_trace.push_back(obj);
        break;
      }
      trial *= 0.5;
    }
    if (!accepted) break;  // stalled at numerical precision
  }

  result.iterations = it;
  for (auto& row : p.rows) {
    for (double& v : row) v = std::max(v, 0.0);
  }
  result.objective = variance_of(model, p, alpha);
  return result;
}

}  // namespace coopnet::dense
