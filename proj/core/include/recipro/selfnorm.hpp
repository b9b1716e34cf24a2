#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "recipro/reciprocator.hpp"

namespace recipro {

/// Observations with their gaps W_i = |x_i - r_i(x_i, U)| and products
/// Y_i = |x_i·r_i(x_i, U)|. `u` holds the randomizer actually applied: the
/// uniform draw at atoms of the source law, 1 elsewhere.
struct ObservationBatch {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> y;
  std::vector<double> u;
  std::uint64_t seed = 0;

  std::size_t size() const { return x.size(); }
};

/// Draws U_i ~ Uniform[0,1) from `seed` (one draw per observation, always,
/// so streams stay aligned) and fills W and Y. Throws ValidationError when
/// an observation is outside its law's support or the lengths differ.
ObservationBatch attach_w_y(std::span<const double> x,
                            std::span<const ReciprocatingFunction* const> recips,
                            std::uint64_t seed);

/// i.i.d. case: the same law for every observation.
ObservationBatch attach_w_y(std::span<const double> x, const ReciprocatingFunction& recip,
                            std::uint64_t seed);

/// As attach_w_y, with caller-supplied randomizer draws.
ObservationBatch attach_w_y_with_u(std::span<const double> x,
                                   std::span<const ReciprocatingFunction* const> recips,
                                   std::span<const double> u);

/// Σx / (½ √Σw²), with 0/0 := 0.
double s_w(const ObservationBatch& batch);

/// Σx / (Σ y^λ)^{1/(2λ)}, with 0/0 := 0. Requires λ > 0.
double s_y(const ObservationBatch& batch, double lambda);

/// Σx / √Σx², with 0/0 := 0.
double s_classic(std::span<const double> x);

/// Mean-shifted statistic. When the denominator vanishes but the shifted
/// numerator does not, `value` is a signed infinity and `out_of_domain` is set.
struct PivotValue {
  double value = 0.0;
  bool out_of_domain = false;
};

/// S_W (no λ) or S_{Y,λ} with numerator Σx_i - nθ.
PivotValue pivot(const ObservationBatch& batch, double theta, std::optional<double> lambda = std::nullopt);

/// T = √((n-1)/n)·S/√(1 - S²/n). Throws ValidationError for |s| >= √n.
double student_t_from_s(double s, std::size_t n);

}  // namespace recipro
