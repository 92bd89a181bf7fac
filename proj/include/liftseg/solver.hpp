#pragma once

#include "liftseg/datafit.hpp"
#include "liftseg/image.hpp"
#include "liftseg/projections.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace liftseg {

struct SolverConfig {
  double lambda = 0.1;             // TV weight, > 0
  std::optional<double> sigma;     // dual step; derived from operator norms when unset
  std::optional<double> tau;       // primal step; defaults to sigma's value
  double theta = 1.0;              // extrapolation weight in [0, 1]
  SmoothingEps eps{};              // l1 smoothing in the region means
  int max_iters = 200;
  SimplexMode mode = SimplexMode::Equality;
  int log_every = 1;               // history stride; the final iterate is always logged
  MeanGradient mean_gradient = MeanGradient::Componentwise;
  bool use_jacobian_adjoint = true;  // false: apply forward blocks to the dual (comparison variant)
};

/// Human-readable diagnostics for out-of-range settings; empty when valid.
std::vector<std::string> validate(const SolverConfig& cfg);

struct HistoryRecord {
  int iter = 0;
  double energy = 0.0;
  double tv = 0.0;      // sum of per-class TV, unweighted
  double datafit = 0.0;
  std::optional<double> abs_error;  // sum_k |u_k - ref_k|_1 when a reference is set
};

struct EnergyBreakdown {
  double total = 0.0;
  double tv_term = 0.0;       // lambda * sum_k tv(u_k)
  double datafit_term = 0.0;
  bool feasible = false;      // in_admissible_set at default tolerances
};

/// Relaxed energy lambda*sum_k tv(u_k) + sum of data-fit residuals.
EnergyBreakdown energy(const MaskStack& u, const FeatureStack& phi,
                       const SolverConfig& cfg);

struct SolverState {
  MaskStack u;
  MaskStack u_bar;
  GradientDuals v;      // one 2-vector field per class
  DataFitValue w;       // 2K box-constrained duals
  int iter = 0;
  double sigma = 0.0;   // effective step sizes after derivation
  double tau = 0.0;
  std::vector<HistoryRecord> history;
  std::optional<MaskStack> reference;  // indicator masks for the abs_error column
};

/// Power-method estimate of the data-fit Jacobian norm at u (deterministic
/// start vector). Throws NumericalError if the estimate is non-finite.
double estimate_data_jacobian_norm(const MaskStack& u, const FeatureStack& phi,
                                   SmoothingEps eps, int iters = 30);

/// Uniform start: u = ubar = 1/K per channel in Equality mode, 1/(K+1) in
/// Inequality mode (the uniform point over K classes plus the implicit
/// background; 1/K would make the two branches of every dual pair identical
/// for K = 2 and the iteration would never leave it). Duals start at zero.
/// Note the analogous caveat for Equality mode with K = 2: the uniform start
/// is stationary there, so supply an explicit init for binary equality runs.
/// Unset step sizes become sigma = tau = 1/sqrt(8/h^2 + |DM(u0)|^2 + 1e-2).
SolverState make_initial_state(const FeatureStack& phi, const SolverConfig& cfg,
                               std::optional<MaskStack> init = std::nullopt,
                               std::optional<MaskStack> reference = std::nullopt);

/// One primal-dual iteration in place:
///   v <- P_{lambda-ball}(v + sigma * grad ubar)
///   w <- clamp_[-1,1](w + sigma * M(ubar))
///   u <- P_simplex(u - tau * grad* v - tau * DM(u)* w)
///   ubar <- u_new + theta (u_new - u_old)
/// Appends a history record per log_every. Throws NumericalError on NaN/Inf.
void pdhg_step(SolverState& state, const FeatureStack& phi, const SolverConfig& cfg);

struct SolveResult {
  MaskStack u;
  std::vector<HistoryRecord> history;
  double sigma = 0.0;
  double tau = 0.0;
};

/// Runs max_iters PDHG iterations from the uniform (or given) start.
SolveResult solve(const FeatureStack& phi, const SolverConfig& cfg,
                  std::optional<MaskStack> init = std::nullopt,
                  std::optional<MaskStack> reference = std::nullopt);

/// CSV with header iter,energy,tv,datafit,abs_error; the last column is empty
/// when no reference was supplied.
void write_history_csv(std::ostream& os, const std::vector<HistoryRecord>& history);

}  // namespace liftseg
