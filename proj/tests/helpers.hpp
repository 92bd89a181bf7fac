#pragma once

#include "liftseg/image.hpp"
#include "liftseg/projections.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace testutil {

/// splitmix64: portable deterministic values for fixtures
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

private:
  std::uint64_t state_;
};

inline liftseg::Image random_image(int w, int h, Rng& rng, double lo = 0.0,
                                   double hi = 1.0, double spacing = 1.0) {
  liftseg::Image img(w, h, 0.0, spacing);
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = rng.uniform(lo, hi);
  return img;
}

inline liftseg::ChannelStack random_stack(int k, int w, int h, Rng& rng,
                                          double lo = 0.0, double hi = 1.0,
                                          double spacing = 1.0) {
  std::vector<liftseg::Image> ch;
  for (int i = 0; i < k; ++i) ch.push_back(random_image(w, h, rng, lo, hi, spacing));
  return liftseg::ChannelStack(std::move(ch));
}

/// brute-force Euclidean projection onto the simplex by KKT enumeration:
/// tries every active (zero) pattern for the equality case, plus the plain
/// orthant clip for the inequality case, and keeps the feasible candidate
/// closest to x. Exponential in K, used only for tiny K.
inline std::vector<double> simplex_oracle(const std::vector<double>& x,
                                          liftseg::SimplexMode mode) {
  const std::size_t n = x.size();
  std::vector<double> best;
  double best_d = std::numeric_limits<double>::infinity();
  auto consider = [&](const std::vector<double>& cand) {
    double sum = 0.0;
    for (double v : cand) {
      if (v < -1e-12) return;
      sum += v;
    }
    if (mode == liftseg::SimplexMode::Equality ? std::abs(sum - 1.0) > 1e-9
                                               : sum > 1.0 + 1e-9)
      return;
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) d += (cand[i] - x[i]) * (cand[i] - x[i]);
    if (d < best_d) {
      best_d = d;
      best = cand;
    }
  };
  // every support pattern, projected onto the affine slice sum = 1
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::size_t count = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        ++count;
        sum += x[i];
      }
    const double shift = (sum - 1.0) / static_cast<double>(count);
    std::vector<double> cand(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) cand[i] = x[i] - shift;
    consider(cand);
  }
  if (mode == liftseg::SimplexMode::Inequality) {
    // interior of the sum constraint: plain clip to the orthant
    std::vector<double> cand(n);
    for (std::size_t i = 0; i < n; ++i) cand[i] = std::max(x[i], 0.0);
    consider(cand);
  }
  return best;
}

/// two disjoint axis-aligned squares on a dark background; feature channel k
/// is the indicator of square k, truth labels are {0, 1, 2}
struct SquaresFixture {
  liftseg::FeatureStack features;
  std::vector<int> truth_labels;
  int width = 0;
  int height = 0;
};

inline SquaresFixture make_squares(int n) {
  const int a0 = n / 8, a1 = 3 * n / 8;          // first square, x and y
  const int b0 = 5 * n / 8, b1 = 7 * n / 8;      // second square
  liftseg::Image phi1(n, n), phi2(n, n);
  std::vector<int> truth(static_cast<std::size_t>(n) * n, 0);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * n + x;
      if (x >= a0 && x < a1 && y >= a0 && y < a1) {
        phi1(x, y) = 1.0;
        truth[i] = 1;
      } else if (x >= b0 && x < b1 && y >= b0 && y < b1) {
        phi2(x, y) = 1.0;
        truth[i] = 2;
      }
    }
  SquaresFixture fx;
  fx.features = liftseg::FeatureStack({phi1, phi2});
  fx.truth_labels = std::move(truth);
  fx.width = n;
  fx.height = n;
  return fx;
}

}  // namespace testutil
