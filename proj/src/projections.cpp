#include "liftseg/projections.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace liftseg {

GradientDuals project_ball_2inf(GradientDuals v, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  for (GradientField& f : v) {
    if (!f.g1.same_shape(f.g2))
      throw std::invalid_argument("gradient field components must share one shape");
    for (std::size_t i = 0; i < f.g1.size(); ++i) {
      const double n = std::sqrt(f.g1[i] * f.g1[i] + f.g2[i] * f.g2[i]);
      if (n > radius) {
        const double s = radius / n;
        f.g1[i] *= s;
        f.g2[i] *= s;
      }
    }
  }
  return v;
}

DataFitValue project_ball_infinf(DataFitValue w) {
  for (int j = 0; j < w.num_channels(); ++j) {
    Image& img = w.channel(j);
    for (std::size_t i = 0; i < img.size(); ++i)
      img[i] = std::clamp(img[i], -1.0, 1.0);
  }
  return w;
}

namespace {

/// Michelot's algorithm: repeatedly project onto the affine hull of the
/// current active set and drop coordinates that land below zero. Terminates
/// because the active set shrinks strictly; it can never empty out, since the
/// kept coordinates always sum to 1.
void project_equality(std::span<double> x) {
  const std::size_t n = x.size();
  std::vector<char> active(n, 1);
  std::size_t count = n;
  for (;;) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (active[i]) sum += x[i];
    const double shift = (sum - 1.0) / static_cast<double>(count);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (active[i] && x[i] - shift > 0.0) ++kept;
    if (kept == count) {
      for (std::size_t i = 0; i < n; ++i)
        x[i] = active[i] ? std::max(x[i] - shift, 0.0) : 0.0;
      return;
    }
    if (kept == 0) {
      // unreachable in exact arithmetic (kept coordinates sum to 1); guard
      // against pathological rounding by snapping to the nearest vertex
      std::size_t best = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (x[i] > x[best]) best = i;
      for (std::size_t i = 0; i < n; ++i) x[i] = i == best ? 1.0 : 0.0;
      return;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (active[i] && x[i] - shift <= 0.0) active[i] = 0;
    count = kept;
  }
}

}  // namespace

void project_simplex_point(std::span<double> x, SimplexMode mode) {
  if (x.empty()) throw std::invalid_argument("empty class vector");
  if (mode == SimplexMode::Equality) {
    project_equality(x);
    return;
  }
  // clip to the nonnegative orthant; if that already satisfies the sum bound
  // it is the projection, otherwise the sum constraint is active and the
  // projection coincides with the equality projection of the original point
  double sum = 0.0;
  for (double v : x) sum += std::max(v, 0.0);
  if (sum <= 1.0) {
    for (double& v : x) v = std::max(v, 0.0);
    return;
  }
  project_equality(x);
}

MaskStack project_simplex(const MaskStack& u, SimplexMode mode) {
  const int kc = u.num_channels();
  if (kc == 0) throw std::invalid_argument("empty stack");
  MaskStack out = u;
  std::vector<double> buf(static_cast<std::size_t>(kc));
  const std::size_t n = u.channel(0).size();
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < kc; ++k) buf[static_cast<std::size_t>(k)] = u.channel(k)[i];
    project_simplex_point(buf, mode);
    for (int k = 0; k < kc; ++k) out.channel(k)[i] = buf[static_cast<std::size_t>(k)];
  }
  return out;
}

bool in_admissible_set(const MaskStack& u, SimplexMode mode, double neg_tol,
                       double sum_tol) {
  const int kc = u.num_channels();
  if (kc == 0) return false;
  const std::size_t n = u.channel(0).size();
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int k = 0; k < kc; ++k) {
      const double v = u.channel(k)[i];
      if (v < -neg_tol) return false;
      sum += v;
    }
    if (mode == SimplexMode::Equality) {
      if (std::abs(sum - 1.0) > sum_tol) return false;
    } else {
      if (sum > 1.0 + sum_tol) return false;
    }
  }
  return true;
}

}  // namespace liftseg
