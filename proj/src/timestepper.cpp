#include "timestepper.hpp"

#include <cmath>

namespace acsim {

TimeGrid TimeGrid::make(double dt, int n_steps) {
  if (!(dt > 0.0) || n_steps < 1) throw SolverError("TimeGrid: need dt > 0 and n_steps >= 1");
  return TimeGrid{dt, n_steps};
}

TimeGrid TimeGrid::cover(double T, double dt_hint) {
  if (!(T > 0.0) || !(dt_hint > 0.0)) throw SolverError("TimeGrid::cover: need T, dt > 0");
  const int n = std::max(1, static_cast<int>(std::ceil(T / dt_hint - 1e-9)));
  return TimeGrid{T / n, n};
}

double default_dt(const Mesh& mesh, const MaterialParams& params) {
  return 0.2 * mesh.min_edge_length() / params.c;
}

LoadProvider LoadProvider::none(int size) {
  return LoadProvider{[size](double) { return Eigen::VectorXd::Zero(size); }, nullptr};
}

namespace {

void check_factorization(const Eigen::SparseLU<SpMat>& lu, const char* which) {
  if (lu.info() == Eigen::Success) return;
  throw SolverError(std::string("NewmarkSolver: LU factorization of ") + which + " failed: " +
                    lu.lastErrorMessage());
}

}  // namespace

NewmarkSolver::NewmarkSolver(const AssembledSystem& sys, const TimeGrid& grid)
    : sys_(&sys), grid_(grid) {
  lu_mass_.compute(sys.A);
  check_factorization(lu_mass_, "A");
  SpMat eff = sys.A + (0.25 * grid.dt * grid.dt) * sys.B;
  eff.makeCompressed();
  lu_eff_.compute(eff);
  check_factorization(lu_eff_, "A + dt^2/4 B");
}

StateVector NewmarkSolver::initial_state(Eigen::VectorXd U0, Eigen::VectorXd V0,
                                         const LoadProvider& loads) const {
  const int n = static_cast<int>(sys_->A.rows());
  if (U0.size() != n || V0.size() != n)
    throw SolverError("initial_state: vector length does not match the dof map");
  StateVector s;
  s.t = 0.0;
  s.U = std::move(U0);
  s.V = std::move(V0);
  s.W = lu_mass_.solve(loads.load(0.0) - sys_->B * s.U);
  if (lu_mass_.info() != Eigen::Success) throw SolverError("initial_state: solve with A failed");
  return s;
}

StateVector NewmarkSolver::step(const StateVector& state, const LoadProvider& loads) const {
  const double dt = grid_.dt;
  StateVector next;
  next.t = state.t + dt;
  // Predictor, then one solve for the new acceleration.
  const Eigen::VectorXd u_pred = state.U + dt * state.V + (0.25 * dt * dt) * state.W;
  next.W = lu_eff_.solve(loads.load(next.t) - sys_->B * u_pred);
  if (lu_eff_.info() != Eigen::Success) throw SolverError("newmark_step: effective solve failed");
  next.U = u_pred + (0.25 * dt * dt) * next.W;
  next.V = state.V + (0.5 * dt) * (state.W + next.W);
  return next;
}

StateVector run(const AssembledSystem& sys, const TimeGrid& grid, Eigen::VectorXd U0,
                Eigen::VectorXd V0, const LoadProvider& loads, std::span<Observer> observers) {
  const NewmarkSolver solver(sys, grid);
  StateVector state = solver.initial_state(std::move(U0), std::move(V0), loads);

  auto notify = [&](int step) {
    Eigen::VectorXd F;
    for (const Observer& obs : observers) {
      if (!obs.on_sample || obs.stride <= 0 || step % obs.stride != 0) continue;
      if (F.size() == 0) F = loads.load(state.t);
      obs.on_sample(step, state, F);
    }
  };

  notify(0);
  for (int n = 1; n <= grid.n_steps; ++n) {
    state = solver.step(state, loads);
    notify(n);
  }
  return state;
}

}  // namespace acsim
