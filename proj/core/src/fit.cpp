#include "symbolbench/dynamics/fit.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>

#include "symbolbench/dynamics/derivatives.hpp"
#include "symbolbench/expr/eval.hpp"
#include "symbolbench/expr/measures.hpp"

namespace symbolbench::dynamics {

namespace {

std::atomic<std::uint64_t> g_fit_calls{0};

enum class CoeffClass { Constant, Affine, Nonlinear };

CoeffClass classify(const expr::AlgExpr& node) {
  using expr::AlgKind;
  switch (node.kind) {
    case AlgKind::Literal:
    case AlgKind::Var:
      return CoeffClass::Constant;
    case AlgKind::Coeff:
      return CoeffClass::Affine;
    case AlgKind::Sum: {
      CoeffClass acc = CoeffClass::Constant;
      for (const auto& child : node.args) {
        CoeffClass c = classify(child);
        if (c == CoeffClass::Nonlinear) return CoeffClass::Nonlinear;
        if (c == CoeffClass::Affine) acc = CoeffClass::Affine;
      }
      return acc;
    }
    case AlgKind::Product: {
      int affine_factors = 0;
      for (const auto& child : node.args) {
        CoeffClass c = classify(child);
        if (c == CoeffClass::Nonlinear) return CoeffClass::Nonlinear;
        if (c == CoeffClass::Affine) ++affine_factors;
      }
      if (affine_factors > 1) return CoeffClass::Nonlinear;
      return affine_factors == 1 ? CoeffClass::Affine : CoeffClass::Constant;
    }
    case AlgKind::Divide: {
      CoeffClass num = classify(node.args[0]);
      CoeffClass den = classify(node.args[1]);
      if (num == CoeffClass::Nonlinear || den != CoeffClass::Constant) {
        return CoeffClass::Nonlinear;
      }
      return num;
    }
    case AlgKind::Power:
    case AlgKind::Call: {
      for (const auto& child : node.args) {
        if (classify(child) != CoeffClass::Constant) return CoeffClass::Nonlinear;
      }
      return CoeffClass::Constant;
    }
  }
  return CoeffClass::Nonlinear;
}

bool linear_in_placeholders(const expr::AlgebraicSystem& system) {
  for (const auto& eq : system.equations) {
    if (classify(eq) == CoeffClass::Nonlinear) return false;
  }
  return true;
}

struct Problem {
  const expr::AlgebraicSystem& system;
  const Trajectory& traj;
  const std::vector<std::vector<double>>& targets;
  const std::vector<int>& slots;
  int dense_size;

  // Residuals stacked over (time, dimension); false when any entry is
  // non-finite.
  bool residuals(const Eigen::VectorXd& theta, Eigen::VectorXd& out) const {
    std::vector<double> dense(static_cast<size_t>(dense_size), 0.0);
    for (size_t k = 0; k < slots.size(); ++k) dense[slots[k]] = theta[static_cast<int>(k)];
    const int n = traj.length();
    const int d = traj.dim();
    out.resize(static_cast<Eigen::Index>(n) * d);
    bool finite = true;
    for (int t = 0; t < n; ++t) {
      for (int j = 0; j < d; ++j) {
        double v = expr::evaluate(system.equations[j], traj.values[t], dense);
        double r = v - targets[t][j];
        if (!std::isfinite(r)) finite = false;
        out[static_cast<Eigen::Index>(t) * d + j] = r;
      }
    }
    return finite;
  }
};

struct LmResult {
  Eigen::VectorXd theta;
  double cost = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  bool valid = false;
};

LmResult levenberg_marquardt(const Problem& prob, Eigen::VectorXd theta,
                             const FitConfig& cfg) {
  LmResult result;
  const int k = static_cast<int>(theta.size());

  Eigen::VectorXd r;
  if (!prob.residuals(theta, r)) return result;
  double cost = r.squaredNorm();

  double lambda = 1e-3;
  Eigen::MatrixXd jac(r.size(), k);
  Eigen::VectorXd probe_r;

  int iter = 0;
  bool done = false;
  for (; iter < cfg.max_iterations && !done; ++iter) {
    // Forward-difference Jacobian.
    bool jac_ok = true;
    for (int c = 0; c < k; ++c) {
      double step = std::sqrt(std::numeric_limits<double>::epsilon()) *
                    std::max(1.0, std::abs(theta[c]));
      Eigen::VectorXd probe = theta;
      probe[c] += step;
      if (!prob.residuals(probe, probe_r)) {
        jac_ok = false;
        break;
      }
      jac.col(c) = (probe_r - r) / step;
    }
    if (!jac_ok) break;

    Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::VectorXd jtr = jac.transpose() * r;
    if (jtr.lpNorm<Eigen::Infinity>() < 1e-14) {
      result.converged = true;
      break;
    }

    bool accepted = false;
    for (int attempt = 0; attempt < 12 && !accepted; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      for (int c = 0; c < k; ++c) {
        damped(c, c) += lambda * std::max(jtj(c, c), 1e-12);
      }
      Eigen::VectorXd delta = damped.ldlt().solve(-jtr);
      Eigen::VectorXd candidate = theta + delta;
      if (prob.residuals(candidate, probe_r)) {
        double candidate_cost = probe_r.squaredNorm();
        if (candidate_cost < cost) {
          double improvement = (cost - candidate_cost) / std::max(cost, 1e-300);
          theta = candidate;
          r = probe_r;
          cost = candidate_cost;
          lambda = std::max(lambda * 0.3, 1e-12);
          accepted = true;
          if (improvement < cfg.tolerance) {
            result.converged = true;
            done = true;
          }
          break;
        }
      }
      lambda = std::min(lambda * 4.0, 1e14);
    }
    if (!accepted) {
      result.converged = true;  // stuck in a (possibly flat) minimum
      break;
    }
  }

  result.theta = std::move(theta);
  result.cost = cost;
  result.iterations = iter;
  result.valid = std::isfinite(cost);
  return result;
}

}  // namespace

std::vector<double> FittedModel::dense_coefficients() const {
  int size = 0;
  for (int s : slots) size = std::max(size, s + 1);
  std::vector<double> dense(static_cast<size_t>(size), 0.0);
  for (size_t k = 0; k < slots.size(); ++k) dense[slots[k]] = coefficients[k];
  return dense;
}

std::uint64_t fit_call_count() { return g_fit_calls.load(); }

FittedModel fit_coefficients(const expr::AlgebraicSystem& system,
                             const Trajectory& traj, const FitConfig& cfg) {
  g_fit_calls.fetch_add(1);

  if (system.dim != traj.dim()) {
    throw std::invalid_argument("fit_coefficients: system/trajectory dimension mismatch");
  }

  auto targets = estimate_derivatives(traj);

  FittedModel model;
  model.system = system;
  auto indices = expr::placeholder_indices(system);
  model.slots.assign(indices.begin(), indices.end());
  const int k = static_cast<int>(model.slots.size());
  int dense_size = model.slots.empty() ? 0 : model.slots.back() + 1;

  Problem prob{system, traj, targets, model.slots, dense_size};
  const double scale = static_cast<double>(traj.length()) * traj.dim();

  if (k == 0) {
    Eigen::VectorXd r;
    if (!prob.residuals(Eigen::VectorXd(), r)) {
      throw FitError("fit_coefficients: structure evaluates to non-finite values");
    }
    model.residual = r.squaredNorm() / scale;
    model.converged = true;
    return model;
  }

  // Closed-form shortcut when the model is linear in its placeholders:
  // residual(theta) = A*theta + r0.
  if (linear_in_placeholders(system)) {
    Eigen::VectorXd r0;
    if (prob.residuals(Eigen::VectorXd::Zero(k), r0)) {
      Eigen::MatrixXd a(r0.size(), k);
      bool ok = true;
      Eigen::VectorXd rk;
      for (int c = 0; c < k && ok; ++c) {
        Eigen::VectorXd basis = Eigen::VectorXd::Zero(k);
        basis[c] = 1.0;
        ok = prob.residuals(basis, rk);
        if (ok) a.col(c) = rk - r0;
      }
      if (ok) {
        Eigen::VectorXd theta = a.colPivHouseholderQr().solve(-r0);
        Eigen::VectorXd r;
        if (prob.residuals(theta, r)) {
          model.coefficients.assign(theta.data(), theta.data() + k);
          model.residual = r.squaredNorm() / scale;
          model.iterations = 1;
          model.converged = true;
          return model;
        }
      }
    }
    // Non-finite constants somewhere: fall through to multi-start, which
    // will reject cleanly if nothing evaluates.
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> random_start(-2.0, 2.0);
  const double fixed_starts[] = {1.0, -1.0, 0.1, -0.1};

  LmResult best;
  for (int s = 0; s < cfg.num_starts; ++s) {
    Eigen::VectorXd theta(k);
    if (s < 4) {
      theta.setConstant(fixed_starts[s]);
    } else {
      for (int c = 0; c < k; ++c) theta[c] = random_start(rng);
    }
    LmResult attempt = levenberg_marquardt(prob, std::move(theta), cfg);
    if (attempt.valid && attempt.cost < best.cost) best = std::move(attempt);
  }

  if (!best.valid) {
    throw FitError("fit_coefficients: no start produced finite residuals");
  }

  model.coefficients.assign(best.theta.data(), best.theta.data() + k);
  model.residual = best.cost / scale;
  model.iterations = best.iterations;
  model.converged = best.converged;
  return model;
}

}  // namespace symbolbench::dynamics
