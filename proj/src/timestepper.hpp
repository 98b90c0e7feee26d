#pragma once

#include <Eigen/SparseLU>
#include <functional>
#include <span>

#include "assembly.hpp"

namespace acsim {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TimeGrid {
  double dt = 0.0;
  int n_steps = 0;

  static TimeGrid make(double dt, int n_steps);
  /// n_steps = ceil(T / dt_hint), dt = T / n_steps (lands exactly on T).
  static TimeGrid cover(double T, double dt_hint);
  double final_time() const { return dt * n_steps; }
};

/// Accuracy-driven default step: 0.2 * (min mesh edge) / c.
double default_dt(const Mesh& mesh, const MaterialParams& params);

/// Discrete trajectory sample: U (displacement | pressure), V = U', W = U''.
struct StateVector {
  Eigen::VectorXd U, V, W;
  double t = 0.0;
};

/// Right-hand side F(t) plus the time derivative of its elastic block (used
/// only by the energy-work recorder; identically zero when no interface
/// forcing is present).
struct LoadProvider {
  std::function<Eigen::VectorXd(double)> load;
  std::function<Eigen::VectorXd(double)> elastic_rate;

  static LoadProvider none(int size);
  Eigen::VectorXd rate_or_zero(double t, int size) const {
    return elastic_rate ? elastic_rate(t) : Eigen::VectorXd::Zero(size);
  }
};

/// Implicit Newmark average-acceleration integrator (beta = 1/4, gamma = 1/2)
/// for A U'' + B U = F. One sparse LU of A + (dt^2/4) B is reused across all
/// steps; a second LU of A provides the consistent initial acceleration.
class NewmarkSolver {
 public:
  NewmarkSolver(const AssembledSystem& sys, const TimeGrid& grid);

  /// State at t = 0 with W solved from A W = F(0) - B U0.
  StateVector initial_state(Eigen::VectorXd U0, Eigen::VectorXd V0,
                            const LoadProvider& loads) const;

  /// Advances one step of size grid.dt.
  StateVector step(const StateVector& state, const LoadProvider& loads) const;

  const TimeGrid& grid() const { return grid_; }

 private:
  const AssembledSystem* sys_;
  TimeGrid grid_;
  Eigen::SparseLU<SpMat> lu_mass_;
  Eigen::SparseLU<SpMat> lu_eff_;
};

/// Called every `stride` steps (and at step 0) with the current state and the
/// load vector at the state's time.
struct Observer {
  int stride = 1;
  std::function<void(int step, const StateVector& state, const Eigen::VectorXd& load)> on_sample;
};

/// Integrates from the given initial data over the whole grid, invoking the
/// observers. Deterministic for fixed inputs.
StateVector run(const AssembledSystem& sys, const TimeGrid& grid, Eigen::VectorXd U0,
                Eigen::VectorXd V0, const LoadProvider& loads, std::span<Observer> observers);

}  // namespace acsim
