#pragma once

#include "liftseg/datafit.hpp"
#include "liftseg/image.hpp"

#include <span>
#include <vector>

namespace liftseg {

/// Per-class dual variables paired with the gradient: one 2-vector field per class.
using GradientDuals = std::vector<GradientField>;

/// Admissible-set flavour for the relaxed masks at each pixel:
/// Equality:   u >= 0 componentwise and sum_k u_k = 1;
/// Inequality: u >= 0 componentwise and sum_k u_k <= 1 (implicit background).
enum class SimplexMode { Equality, Inequality };

/// Pixelwise radial projection of each 2-vector onto the Euclidean ball of
/// radius `radius` (the dual ball of the TV term scaled by lambda).
GradientDuals project_ball_2inf(GradientDuals v, double radius);

/// Componentwise clamp to [-1, 1] (the dual box of the l1 data term).
DataFitValue project_ball_infinf(DataFitValue w);

/// Euclidean projection of one pixel's class vector onto the simplex, in place.
/// Equality mode runs Michelot's finite active-set algorithm; Inequality mode
/// clips negatives and falls back to the equality projection of the original
/// vector when the clipped sum still exceeds 1.
void project_simplex_point(std::span<double> x, SimplexMode mode);

/// project_simplex_point applied at every pixel of the stack.
MaskStack project_simplex(const MaskStack& u, SimplexMode mode);

/// Feasibility check with tolerances: componentwise u >= -neg_tol and the
/// per-pixel sums within sum_tol of (Equality) or below (Inequality) 1.
bool in_admissible_set(const MaskStack& u, SimplexMode mode,
                       double neg_tol = 1e-12, double sum_tol = 1e-9);

}  // namespace liftseg
