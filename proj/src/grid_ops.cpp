#include "liftseg/grid_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace liftseg {

GradientField gradient(const Image& u) {
  const int w = u.width(), h = u.height();
  if (w < 2 || h < 2)
    throw std::invalid_argument("gradient needs at least 2 samples per axis");
  const double inv = 1.0 / u.spacing();
  GradientField g{Image(w, h, 0.0, u.spacing()), Image(w, h, 0.0, u.spacing())};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) g.g1(x, y) = (u(x + 1, y) - u(x, y)) * inv;
      if (y + 1 < h) g.g2(x, y) = (u(x, y + 1) - u(x, y)) * inv;
    }
  }
  return g;
}

Image gradient_adjoint(const GradientField& v) {
  const Image& v1 = v.g1;
  const Image& v2 = v.g2;
  if (!v1.same_shape(v2))
    throw std::invalid_argument("gradient field components must share one shape");
  const int w = v1.width(), h = v1.height();
  if (w < 2 || h < 2)
    throw std::invalid_argument("gradient_adjoint needs at least 2 samples per axis");
  const double inv = 1.0 / v1.spacing();
  Image out(w, h, 0.0, v1.spacing());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      // transpose of the forward-difference stencil, axis by axis
      double a;
      if (x == 0)
        a = -v1(0, y);
      else if (x == w - 1)
        a = v1(w - 2, y);
      else
        a = v1(x - 1, y) - v1(x, y);
      double b;
      if (y == 0)
        b = -v2(x, 0);
      else if (y == h - 1)
        b = v2(x, h - 2);
      else
        b = v2(x, y - 1) - v2(x, y);
      out(x, y) = (a + b) * inv;
    }
  }
  return out;
}

double tv_isotropic(const Image& u) {
  GradientField g = gradient(u);
  double s = 0.0;
  for (std::size_t i = 0; i < g.g1.size(); ++i)
    s += std::sqrt(g.g1[i] * g.g1[i] + g.g2[i] * g.g2[i]);
  return s;
}

double smoothed_l1(const Image& u, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("smoothing eps must be positive");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::sqrt(u[i] * u[i] + eps);
  return s;
}

}  // namespace liftseg
