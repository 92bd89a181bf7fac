#include "liftseg/datafit.hpp"

#include "liftseg/grid_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace liftseg {

SmoothingEps::SmoothingEps(double v) : value(v) {
  if (!(v > 0.0)) throw std::invalid_argument("smoothing eps must be positive");
}

DataFitValue::DataFitValue(int num_classes, int width, int height, double fill,
                           double spacing) {
  if (num_classes < 1)
    throw std::invalid_argument("data-fit value needs at least one class");
  flat_.reserve(2 * static_cast<std::size_t>(num_classes));
  for (int j = 0; j < 2 * num_classes; ++j)
    flat_.emplace_back(width, height, fill, spacing);
}

DataFitValue::DataFitValue(std::vector<Image> flat) : flat_(std::move(flat)) {
  if (flat_.empty() || flat_.size() % 2 != 0)
    throw std::invalid_argument("data-fit value needs an even channel count");
  for (std::size_t j = 1; j < flat_.size(); ++j)
    if (!flat_[j].same_shape(flat_[0]))
      throw std::invalid_argument("data-fit channels must share one shape");
}

double DataFitValue::total() const {
  double s = 0.0;
  for (const Image& img : flat_)
    for (std::size_t i = 0; i < img.size(); ++i) s += img[i];
  return s;
}

namespace {

void check_pair(const Image& u, const Image& phi) {
  if (!u.same_shape(phi))
    throw std::invalid_argument("mask and feature must share one shape");
}

void check_stacks(const MaskStack& u, const FeatureStack& phi) {
  if (u.num_channels() != phi.num_channels())
    throw std::invalid_argument("mask and feature stacks must have equal class counts");
  if (u.num_channels() == 0)
    throw std::invalid_argument("empty stacks");
  if (u.width() != phi.width() || u.height() != phi.height())
    throw std::invalid_argument("mask and feature stacks must share one shape");
}

Image complement(const Image& u) {
  Image out(u.width(), u.height(), 0.0, u.spacing());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = 1.0 - u[i];
  return out;
}

/// q = (phi - A(x) r) / |x|_{1,eps} with r the chosen derivative of the
/// smoothed l1 denominator at x.
Image mean_gradient_vector(const Image& x, const Image& phi, SmoothingEps eps,
                           MeanGradient variant) {
  const double denom = smoothed_l1(x, eps.value);
  const double a = inner(x, phi) / denom;
  Image q(x.width(), x.height(), 0.0, x.spacing());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = variant == MeanGradient::Componentwise
                         ? x[i] / std::sqrt(x[i] * x[i] + eps.value)
                         : x[i] / denom;
    q[i] = (phi[i] - a * r) / denom;
  }
  return q;
}

/// Forward application of the per-channel Jacobian:
///   Dm(x) d = t^2 .* d + 2 (x .* t) <q, d>,  t = A(x) - phi.
Image dm_apply(const Image& x, const Image& phi, const Image& d, SmoothingEps eps,
               MeanGradient variant) {
  const double a = channel_mean(x, phi, eps);
  const Image q = mean_gradient_vector(x, phi, eps, variant);
  const double qd = inner(q, d);
  Image out(x.width(), x.height(), 0.0, x.spacing());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = a - phi[i];
    out[i] = t * t * d[i] + 2.0 * x[i] * t * qd;
  }
  return out;
}

/// Adjoint of dm_apply: Dm(x)* w = t^2 .* w + 2 q <x .* t, w>.
Image dm_adjoint(const Image& x, const Image& phi, const Image& w, SmoothingEps eps,
                 MeanGradient variant) {
  const double a = channel_mean(x, phi, eps);
  const Image q = mean_gradient_vector(x, phi, eps, variant);
  double xtw = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) xtw += x[i] * (a - phi[i]) * w[i];
  Image out(x.width(), x.height(), 0.0, x.spacing());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = a - phi[i];
    out[i] = t * t * w[i] + 2.0 * q[i] * xtw;
  }
  return out;
}

}  // namespace

double channel_mean(const Image& u, const Image& phi, SmoothingEps eps) {
  check_pair(u, phi);
  return inner(u, phi) / smoothed_l1(u, eps.value);
}

Image m_residual(const Image& u, const Image& phi, SmoothingEps eps) {
  check_pair(u, phi);
  const double a = channel_mean(u, phi, eps);
  Image out(u.width(), u.height(), 0.0, u.spacing());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double t = a - phi[i];
    out[i] = u[i] * t * t;
  }
  return out;
}

DataFitValue data_operator(const MaskStack& u, const FeatureStack& phi,
                           SmoothingEps eps) {
  check_stacks(u, phi);
  std::vector<Image> flat;
  flat.reserve(2 * static_cast<std::size_t>(u.num_channels()));
  for (int k = 0; k < u.num_channels(); ++k) {
    flat.push_back(m_residual(u.channel(k), phi.channel(k), eps));
    flat.push_back(m_residual(complement(u.channel(k)), phi.channel(k), eps));
  }
  return DataFitValue(std::move(flat));
}

DataFitValue data_jacobian_apply(const MaskStack& u, const FeatureStack& phi,
                                 const MaskStack& d, SmoothingEps eps,
                                 MeanGradient variant) {
  check_stacks(u, phi);
  check_stacks(d, phi);
  std::vector<Image> flat;
  flat.reserve(2 * static_cast<std::size_t>(u.num_channels()));
  for (int k = 0; k < u.num_channels(); ++k) {
    const Image comp = complement(u.channel(k));
    // d/du m(1-u) applied to d is -Dm(1-u) d by the chain rule
    flat.push_back(dm_apply(u.channel(k), phi.channel(k), d.channel(k), eps, variant));
    Image outer = dm_apply(comp, phi.channel(k), d.channel(k), eps, variant);
    for (std::size_t i = 0; i < outer.size(); ++i) outer[i] = -outer[i];
    flat.push_back(std::move(outer));
  }
  return DataFitValue(std::move(flat));
}

namespace {

using ChannelOp = Image (*)(const Image&, const Image&, const Image&, SmoothingEps,
                            MeanGradient);

MaskStack combine_dual_channels(const MaskStack& u, const FeatureStack& phi,
                                const DataFitValue& w, SmoothingEps eps,
                                MeanGradient variant, ChannelOp op) {
  check_stacks(u, phi);
  if (w.num_classes() != u.num_channels())
    throw std::invalid_argument("dual has wrong class count");
  if (w.channel(0).width() != u.width() || w.channel(0).height() != u.height())
    throw std::invalid_argument("dual has wrong shape");
  std::vector<Image> out;
  out.reserve(static_cast<std::size_t>(u.num_channels()));
  for (int k = 0; k < u.num_channels(); ++k) {
    const Image comp = complement(u.channel(k));
    Image a = op(u.channel(k), phi.channel(k), w.inside(k), eps, variant);
    const Image b = op(comp, phi.channel(k), w.outside(k), eps, variant);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    out.push_back(std::move(a));
  }
  return MaskStack(std::move(out));
}

}  // namespace

MaskStack data_jacobian_adjoint(const MaskStack& u, const FeatureStack& phi,
                                const DataFitValue& w, SmoothingEps eps,
                                MeanGradient variant) {
  return combine_dual_channels(u, phi, w, eps, variant, &dm_adjoint);
}

MaskStack data_jacobian_forward_on_dual(const MaskStack& u, const FeatureStack& phi,
                                        const DataFitValue& w, SmoothingEps eps,
                                        MeanGradient variant) {
  return combine_dual_channels(u, phi, w, eps, variant, &dm_apply);
}

}  // namespace liftseg
