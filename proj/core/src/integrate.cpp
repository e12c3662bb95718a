#include "symbolbench/dynamics/integrate.hpp"

#include <Eigen/Dense>
#include <boost/numeric/odeint/integrate/integrate_times.hpp>
#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>
#include <cmath>
#include <functional>

#include "symbolbench/expr/eval.hpp"

namespace symbolbench::dynamics {

namespace odeint = boost::numeric::odeint;

namespace {

struct BudgetExhausted {};
struct StateInvalid {};

struct Rhs {
  const expr::AlgebraicSystem& system;
  const std::vector<double>& coeffs;
  const IntegrateConfig& cfg;
  mutable std::uint64_t evals = 0;

  void eval_into(const double* x, std::size_t n, double* dxdt) const {
    if (++evals > cfg.max_rhs_evals) throw BudgetExhausted{};
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(x[j]) || std::abs(x[j]) > cfg.state_limit) {
        throw StateInvalid{};
      }
    }
    std::span<const double> state(x, n);
    for (std::size_t j = 0; j < n; ++j) {
      double v = expr::evaluate(system.equations[j], state, coeffs);
      if (!std::isfinite(v)) throw StateInvalid{};
      dxdt[j] = v;
    }
  }

  void operator()(const std::vector<double>& x, std::vector<double>& dxdt,
                  double /*t*/) const {
    dxdt.resize(x.size());
    eval_into(x.data(), x.size(), dxdt.data());
  }
};

Trajectory run_explicit(const Rhs& rhs, const std::vector<double>& x0,
                        const std::vector<double>& times,
                        const IntegrateConfig& cfg) {
  Trajectory out;
  std::vector<double> state = x0;
  double dt = times.size() > 1 ? (times[1] - times[0]) / 10.0 : 1e-3;
  auto stepper =
      odeint::make_controlled<odeint::runge_kutta_dopri5<std::vector<double>>>(
          cfg.abs_tol, cfg.rel_tol);
  odeint::integrate_times(stepper, std::cref(rhs), state, times.begin(),
                          times.end(), dt,
                          [&out](const std::vector<double>& x, double t) {
                            out.times.push_back(t);
                            out.values.emplace_back(x.begin(), x.end());
                          });
  return out;
}

// Adaptive second-order Rosenbrock scheme (ode23s family) with a
// finite-difference Jacobian. Serves as the stiff fallback when the
// explicit scheme burns through its step budget.
class Rosenbrock {
 public:
  Rosenbrock(const Rhs& rhs, int dim, const IntegrateConfig& cfg)
      : rhs_(rhs), n_(dim), cfg_(cfg) {}

  Trajectory integrate(const std::vector<double>& x0,
                       const std::vector<double>& times) {
    Trajectory out;
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(x0.data(), n_);
    double t = times.front();
    out.times.push_back(t);
    out.values.emplace_back(x.data(), x.data() + n_);

    double h = times.size() > 1 ? (times[1] - times[0]) / 10.0 : 1e-3;
    for (std::size_t target = 1; target < times.size(); ++target) {
      const double t_end = times[target];
      while (t < t_end) {
        h = std::min(h, t_end - t);
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
          throw StateInvalid{};  // step-size underflow
        }
        double err = attempt_step(x, t, h);
        if (err <= 1.0) {
          t += h;
          x = x_new_;
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err, 1e-10), -1.0 / 3.0), 0.2, 5.0);
        h *= factor;
      }
      out.times.push_back(t_end);
      out.values.emplace_back(x.data(), x.data() + n_);
      t = t_end;
    }
    return out;
  }

 private:
  // Returns the scaled error norm of the attempted step; x_new_ holds the
  // proposal.
  double attempt_step(const Eigen::VectorXd& x, double /*t*/, double h) {
    static const double d = 1.0 / (2.0 + std::sqrt(2.0));
    static const double e32 = 6.0 + std::sqrt(2.0);

    Eigen::VectorXd f0 = eval(x);
    Eigen::MatrixXd jac = jacobian(x, f0);
    Eigen::MatrixXd w = Eigen::MatrixXd::Identity(n_, n_) - h * d * jac;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(w);

    Eigen::VectorXd k1 = lu.solve(f0);
    Eigen::VectorXd f1 = eval(x + 0.5 * h * k1);
    Eigen::VectorXd k2 = lu.solve(f1 - k1) + k1;
    x_new_ = x + h * k2;
    Eigen::VectorXd f2 = eval(x_new_);
    Eigen::VectorXd k3 = lu.solve(f2 - e32 * (k2 - f1) - 2.0 * (k1 - f0));

    Eigen::VectorXd err = (h / 6.0) * (k1 - 2.0 * k2 + k3);
    double norm = 0.0;
    for (int j = 0; j < n_; ++j) {
      const double scale =
          cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(x[j]), std::abs(x_new_[j]));
      norm = std::max(norm, std::abs(err[j]) / scale);
    }
    return norm;
  }

  Eigen::VectorXd eval(const Eigen::VectorXd& x) {
    Eigen::VectorXd out(n_);
    rhs_.eval_into(x.data(), static_cast<std::size_t>(n_), out.data());
    return out;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x, const Eigen::VectorXd& f0) {
    Eigen::MatrixXd jac(n_, n_);
    Eigen::VectorXd probe = x;
    Eigen::VectorXd f1(n_);
    for (int c = 0; c < n_; ++c) {
      const double step = std::sqrt(std::numeric_limits<double>::epsilon()) *
                          std::max(1.0, std::abs(x[c]));
      probe[c] = x[c] + step;
      rhs_.eval_into(probe.data(), static_cast<std::size_t>(n_), f1.data());
      probe[c] = x[c];
      jac.col(c) = (f1 - f0) / step;
    }
    return jac;
  }

  const Rhs& rhs_;
  int n_;
  const IntegrateConfig& cfg_;
  Eigen::VectorXd x_new_;
};

}  // namespace

Trajectory integrate_ode(const FittedModel& model, const std::vector<double>& x0,
                         const std::vector<double>& times,
                         const IntegrateConfig& cfg) {
  if (static_cast<int>(x0.size()) != model.system.dim) {
    throw std::invalid_argument("integrate_ode: initial state dimension mismatch");
  }
  if (times.empty()) throw std::invalid_argument("integrate_ode: empty time grid");
  for (std::size_t t = 1; t < times.size(); ++t) {
    if (!(times[t] > times[t - 1])) {
      throw std::invalid_argument("integrate_ode: times must be strictly increasing");
    }
  }

  std::vector<double> dense = model.dense_coefficients();

  bool try_stiff = false;
  try {
    Rhs rhs{model.system, dense, cfg};
    return run_explicit(rhs, x0, times, cfg);
  } catch (const BudgetExhausted&) {
    try_stiff = true;  // classic stiffness symptom
  } catch (const StateInvalid&) {
    throw IntegrationError("integration failed: non-finite or diverging state");
  } catch (const std::overflow_error&) {
    try_stiff = true;  // too many rejected steps inside the controlled stepper
  }

  if (try_stiff) {
    Rhs rhs{model.system, dense, cfg};
    try {
      Rosenbrock solver(rhs, model.system.dim, cfg);
      return solver.integrate(x0, times);
    } catch (const BudgetExhausted&) {
      throw IntegrationError("integration failed: step budget exhausted");
    } catch (const StateInvalid&) {
      throw IntegrationError("integration failed: non-finite or diverging state");
    }
  }
  throw IntegrationError("integration failed");
}

}  // namespace symbolbench::dynamics
