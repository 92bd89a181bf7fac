#pragma once

#include "liftseg/image.hpp"

namespace liftseg {

/// Positive smoothing constant for the l1 denominator in the region means.
struct SmoothingEps {
  double value = 1e-6;
  SmoothingEps() = default;
  explicit SmoothingEps(double v);
};

/// Which derivative of the smoothed l1 denominator enters the mean gradient.
/// Componentwise uses the exact derivative u_j / sqrt(u_j^2 + eps);
/// Normalized uses u_j / |u|_{1,eps} (kept for comparison, not exact).
enum class MeanGradient { Componentwise, Normalized };

/// The stacked data-fit residuals: for each class k the pair
/// (m(u_k), m(1 - u_k)) of inside/outside residual images, 2K channels total.
/// The same shape carries the corresponding dual variable.
class DataFitValue {
public:
  DataFitValue() = default;
  DataFitValue(int num_classes, int width, int height, double fill = 0.0,
               double spacing = 1.0);
  explicit DataFitValue(std::vector<Image> flat);  // size must be even

  int num_classes() const { return static_cast<int>(flat_.size() / 2); }
  int num_channels() const { return static_cast<int>(flat_.size()); }

  const Image& inside(int k) const { return flat_[2 * static_cast<std::size_t>(k)]; }
  Image& inside(int k) { return flat_[2 * static_cast<std::size_t>(k)]; }
  const Image& outside(int k) const { return flat_[2 * static_cast<std::size_t>(k) + 1]; }
  Image& outside(int k) { return flat_[2 * static_cast<std::size_t>(k) + 1]; }

  const Image& channel(int j) const { return flat_[static_cast<std::size_t>(j)]; }
  Image& channel(int j) { return flat_[static_cast<std::size_t>(j)]; }

  /// Sum of all entries over all 2K channels. For feasible masks (values in
  /// [0, 1]) every entry is nonnegative and this is the data-fit energy term.
  double total() const;

private:
  std::vector<Image> flat_;
};

/// Smoothed weighted mean of the feature over the soft region u:
///   A(u) = <u, phi> / |u|_{1,eps}.
double channel_mean(const Image& u, const Image& phi, SmoothingEps eps);

/// Pointwise residual m(u) = u .* (A(u) - phi)^2. Nonnegative wherever u >= 0.
Image m_residual(const Image& u, const Image& phi, SmoothingEps eps);

/// M(u): per class k the pair (m(u_k), m(1 - u_k)) against feature phi_k.
DataFitValue data_operator(const MaskStack& u, const FeatureStack& phi,
                           SmoothingEps eps);

/// Directional derivative of M at u applied to the mask-shaped increment d.
/// Matrix-free: per channel, Dm(x) d = t^2 .* d + 2 (x .* t) <q, d> with
/// t = A(x) - phi and q = (phi - A(x) r) / |x|_{1,eps}; the rank-one factor is
/// never materialized.
DataFitValue data_jacobian_apply(const MaskStack& u, const FeatureStack& phi,
                                 const MaskStack& d, SmoothingEps eps,
                                 MeanGradient variant = MeanGradient::Componentwise);

/// Adjoint of data_jacobian_apply in the second slot:
///   <data_jacobian_apply(u, phi, d), w> == <d, data_jacobian_adjoint(u, phi, w)>.
/// Per class k the two dual channels combine as
///   Dm(u_k)* w_in - Dm(1 - u_k)* w_out.
MaskStack data_jacobian_adjoint(const MaskStack& u, const FeatureStack& phi,
                                const DataFitValue& w, SmoothingEps eps,
                                MeanGradient variant = MeanGradient::Componentwise);

/// Comparison variant for the solver: applies the forward per-channel blocks
/// (not their adjoints) to a dual-shaped w, Dm(u_k) w_in - Dm(1 - u_k) w_out.
MaskStack data_jacobian_forward_on_dual(const MaskStack& u, const FeatureStack& phi,
                                        const DataFitValue& w, SmoothingEps eps,
                                        MeanGradient variant = MeanGradient::Componentwise);

}  // namespace liftseg
