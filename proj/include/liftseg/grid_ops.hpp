#pragma once

#include "liftseg/image.hpp"

namespace liftseg {

/// Forward-difference gradient with homogeneous Neumann boundary:
///   g1(x, y) = (u(x+1, y) - u(x, y)) / h, zero on the last column,
///   g2(x, y) = (u(x, y+1) - u(x, y)) / h, zero on the last row.
/// Throws std::invalid_argument if either dimension is below 2.
GradientField gradient(const Image& u);

/// Exact adjoint of gradient(): <gradient(u), v> == <u, gradient_adjoint(v)>
/// for all u, v (up to rounding). Backward differences in the interior,
/// -v(0)/h on the first and +v(last-1)/h on the last index of each axis.
Image gradient_adjoint(const GradientField& v);

/// Isotropic discrete total variation: sum over pixels of the pointwise
/// Euclidean norm sqrt(g1^2 + g2^2) of gradient(u).
double tv_isotropic(const Image& u);

/// Smoothed l1 norm: sum_i sqrt(u_i^2 + eps). Strictly greater than the exact
/// l1 norm, within n*sqrt(eps) of it. Throws if eps <= 0.
double smoothed_l1(const Image& u, double eps);

}  // namespace liftseg
