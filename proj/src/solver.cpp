#include "liftseg/solver.hpp"

#include "liftseg/errors.hpp"
#include "liftseg/grid_ops.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace liftseg {

namespace {

/// splitmix-style generator for reproducible start vectors; values in [-0.5, 0.5)
class DetRng {
public:
  explicit DetRng(std::uint64_t seed) : state_(seed) {}
  double next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
  }

private:
  std::uint64_t state_;
};

double stack_norm(const MaskStack& s) {
  double n2 = 0.0;
  for (int k = 0; k < s.num_channels(); ++k) n2 += inner(s.channel(k), s.channel(k));
  return std::sqrt(n2);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void append_history(SolverState& state, const FeatureStack& phi,
                    const SolverConfig& cfg) {
  double tv_sum = 0.0;
  for (int k = 0; k < state.u.num_channels(); ++k)
    tv_sum += tv_isotropic(state.u.channel(k));
  HistoryRecord rec;
  rec.iter = state.iter;
  rec.tv = tv_sum;
  rec.datafit = data_operator(state.u, phi, cfg.eps).total();
  rec.energy = cfg.lambda * tv_sum + rec.datafit;
  if (state.reference) {
    double err = 0.0;
    for (int k = 0; k < state.u.num_channels(); ++k)
      err += l1_distance(state.u.channel(k), state.reference->channel(k));
    rec.abs_error = err;
  }
  state.history.push_back(rec);
}

}  // namespace

std::vector<std::string> validate(const SolverConfig& cfg) {
  std::vector<std::string> out;
  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda))
    out.push_back("lambda must be positive");
  if (cfg.sigma && (!(*cfg.sigma > 0.0) || !std::isfinite(*cfg.sigma)))
    out.push_back("sigma must be a positive finite number");
  if (cfg.tau && (!(*cfg.tau > 0.0) || !std::isfinite(*cfg.tau)))
    out.push_back("tau must be a positive finite number");
  if (!(cfg.theta >= 0.0 && cfg.theta <= 1.0))
    out.push_back("theta must lie in [0, 1]");
  if (!(cfg.eps.value > 0.0)) out.push_back("eps must be positive");
  if (cfg.max_iters < 1) out.push_back("max_iters must be at least 1");
  if (cfg.log_every < 1) out.push_back("log_every must be at least 1");
  return out;
}

EnergyBreakdown energy(const MaskStack& u, const FeatureStack& phi,
                       const SolverConfig& cfg) {
  EnergyBreakdown out;
  double tv_sum = 0.0;
  for (int k = 0; k < u.num_channels(); ++k) tv_sum += tv_isotropic(u.channel(k));
  out.tv_term = cfg.lambda * tv_sum;
  out.datafit_term = data_operator(u, phi, cfg.eps).total();
  out.total = out.tv_term + out.datafit_term;
  out.feasible = in_admissible_set(u, cfg.mode);
  return out;
}

double estimate_data_jacobian_norm(const MaskStack& u, const FeatureStack& phi,
                                   SmoothingEps eps, int iters) {
  DetRng rng(0x5eed5eed5eed5eedULL);
  MaskStack d(u.num_channels(), u.width(), u.height(), 0.0, u.spacing());
  for (int k = 0; k < d.num_channels(); ++k) {
    Image& img = d.channel(k);
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = rng.next();
  }
  double n0 = stack_norm(d);
  if (n0 == 0.0) return 0.0;
  for (int k = 0; k < d.num_channels(); ++k)
    for (std::size_t i = 0; i < d.channel(k).size(); ++i) d.channel(k)[i] /= n0;

  double lam = 0.0;
  for (int it = 0; it < iters; ++it) {
    DataFitValue y = data_jacobian_apply(u, phi, d, eps);
    MaskStack z = data_jacobian_adjoint(u, phi, y, eps);
    lam = stack_norm(z);  // Rayleigh estimate of |DM* DM|
    if (!std::isfinite(lam))
      throw NumericalError("operator norm estimate diverged");
    if (lam <= 1e-300) return 0.0;  // negligible data operator
    for (int k = 0; k < z.num_channels(); ++k)
      for (std::size_t i = 0; i < z.channel(k).size(); ++i)
        z.channel(k)[i] /= lam;
    d = std::move(z);
  }
  return std::sqrt(lam);
}

SolverState make_initial_state(const FeatureStack& phi, const SolverConfig& cfg,
                               std::optional<MaskStack> init,
                               std::optional<MaskStack> reference) {
  std::vector<std::string> diags = validate(cfg);
  if (!diags.empty()) throw ConfigError("invalid solver config: " + diags.front());
  const int kc = phi.num_channels();
  if (kc < 1) throw std::invalid_argument("feature stack is empty");

  SolverState state;
  if (init) {
    if (init->num_channels() != kc || init->width() != phi.width() ||
        init->height() != phi.height())
      throw std::invalid_argument("init stack shape does not match features");
    state.u = std::move(*init);
  } else {
    const double fill = cfg.mode == SimplexMode::Equality
                            ? 1.0 / static_cast<double>(kc)
                            : 1.0 / static_cast<double>(kc + 1);
    state.u = MaskStack(kc, phi.width(), phi.height(), fill, phi.spacing());
  }
  state.u_bar = state.u;
  state.v.resize(static_cast<std::size_t>(kc));
  for (GradientField& f : state.v) {
    f.g1 = Image(phi.width(), phi.height(), 0.0, phi.spacing());
    f.g2 = Image(phi.width(), phi.height(), 0.0, phi.spacing());
  }
  state.w = DataFitValue(kc, phi.width(), phi.height(), 0.0, phi.spacing());

  if (reference) {
    if (reference->num_channels() != kc || reference->width() != phi.width() ||
        reference->height() != phi.height())
      throw std::invalid_argument("reference stack shape does not match features");
    state.reference = std::move(*reference);
  }

  if (cfg.sigma || cfg.tau) {
    state.sigma = cfg.sigma.value_or(cfg.tau.value_or(0.0));
    state.tau = cfg.tau.value_or(state.sigma);
  } else {
    const double h = phi.spacing();
    const double grad_norm_sq = 8.0 / (h * h);
    const double dm_norm = estimate_data_jacobian_norm(state.u, phi, cfg.eps);
    state.sigma = state.tau = 1.0 / std::sqrt(grad_norm_sq + dm_norm * dm_norm + 1e-2);
  }

  append_history(state, phi, cfg);
  return state;
}

void pdhg_step(SolverState& state, const FeatureStack& phi, const SolverConfig& cfg) {
  const int kc = state.u.num_channels();
  const double sigma = state.sigma, tau = state.tau;

  // dual ascent on the TV pairing, evaluated at the extrapolated point
  for (int k = 0; k < kc; ++k) {
    GradientField g = gradient(state.u_bar.channel(k));
    GradientField& vk = state.v[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < g.g1.size(); ++i) {
      vk.g1[i] += sigma * g.g1[i];
      vk.g2[i] += sigma * g.g2[i];
    }
  }
  state.v = project_ball_2inf(std::move(state.v), cfg.lambda);

  // dual ascent on the data-fit pairing
  DataFitValue mu = data_operator(state.u_bar, phi, cfg.eps);
  for (int j = 0; j < state.w.num_channels(); ++j) {
    Image& wj = state.w.channel(j);
    const Image& mj = mu.channel(j);
    for (std::size_t i = 0; i < wj.size(); ++i) wj[i] += sigma * mj[i];
  }
  state.w = project_ball_infinf(std::move(state.w));
  for (int j = 0; j < state.w.num_channels(); ++j)
    if (!all_finite(state.w.channel(j)))
      throw NumericalError("dual iterate is not finite");

  // primal descent: transport both duals back to mask space, then project
  MaskStack dmw = cfg.use_jacobian_adjoint
                      ? data_jacobian_adjoint(state.u, phi, state.w, cfg.eps,
                                              cfg.mean_gradient)
                      : data_jacobian_forward_on_dual(state.u, phi, state.w, cfg.eps,
                                                      cfg.mean_gradient);
  MaskStack candidate = state.u;
  for (int k = 0; k < kc; ++k) {
    const Image div = gradient_adjoint(state.v[static_cast<std::size_t>(k)]);
    Image& ck = candidate.channel(k);
    const Image& dk = dmw.channel(k);
    for (std::size_t i = 0; i < ck.size(); ++i)
      ck[i] -= tau * (div[i] + dk[i]);
    if (!all_finite(ck)) throw NumericalError("primal iterate is not finite");
  }
  MaskStack u_new = project_simplex(candidate, cfg.mode);

  for (int k = 0; k < kc; ++k) {
    Image& bk = state.u_bar.channel(k);
    const Image& nk = u_new.channel(k);
    const Image& ok = state.u.channel(k);
    for (std::size_t i = 0; i < bk.size(); ++i)
      bk[i] = nk[i] + cfg.theta * (nk[i] - ok[i]);
  }
  state.u = std::move(u_new);
  state.iter += 1;

  if (state.iter % cfg.log_every == 0) append_history(state, phi, cfg);
}

SolveResult solve(const FeatureStack& phi, const SolverConfig& cfg,
                  std::optional<MaskStack> init, std::optional<MaskStack> reference) {
  SolverState state =
      make_initial_state(phi, cfg, std::move(init), std::move(reference));
  for (int it = 0; it < cfg.max_iters; ++it) pdhg_step(state, phi, cfg);
  if (state.history.empty() || state.history.back().iter != state.iter)
    append_history(state, phi, cfg);
  SolveResult out;
  out.u = std::move(state.u);
  out.history = std::move(state.history);
  out.sigma = state.sigma;
  out.tau = state.tau;
  return out;
}

void write_history_csv(std::ostream& os, const std::vector<HistoryRecord>& history) {
  os << "iter,energy,tv,datafit,abs_error\n";
  for (const HistoryRecord& r : history) {
    os << r.iter << ',' << format_double(r.energy) << ',' << format_double(r.tv)
       << ',' << format_double(r.datafit) << ',';
    if (r.abs_error) os << format_double(*r.abs_error);
    os << '\n';
  }
}

}  // namespace liftseg
