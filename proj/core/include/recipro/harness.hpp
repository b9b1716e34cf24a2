#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recipro/bounds.hpp"
#include "recipro/dist.hpp"
#include "recipro/mixture.hpp"
#include "recipro/rational.hpp"

namespace recipro {

enum class Statistic { s_w, s_y, classic };

std::string_view to_string(Statistic statistic);

/// One coordinate's joint law of (X, W, Y) as finitely many weighted cells.
struct Cell {
  Rational x;
  Rational w;
  Rational y;
  Rational probability;
};

/// Cells from the u-branch enumeration of r(x,·).
std::vector<Cell> cells_from_branches(const ZeroMeanDiscreteDist& dist);
/// Cells from the W-mixture: P(W = v) times the two-point law D_v.
std::vector<Cell> cells_from_mixture(const MixtureDecomposition& w_mixture);

struct LawPoint {
  double value;
  Rational weight;
};

/// Exact law of a statistic of independent coordinates: values in floating
/// point (they involve square roots), weights exact. Values closer than a
/// relative 1e-12 are merged.
class ExactLaw {
 public:
  ExactLaw() = default;
  explicit ExactLaw(std::vector<LawPoint> support);

  const std::vector<LawPoint>& support() const { return support_; }
  Rational total_weight() const;

  /// P(S >= x), counting support points within a relative 1e-12 of x.
  Rational tail_exact(double x) const;
  double tail(double x) const { return to_double(tail_exact(x)); }

  double expectation(const std::function<double(double)>& f) const;

 private:
  std::vector<LawPoint> support_;
};

using ExactSwLaw = ExactLaw;

/// Product enumeration over per-coordinate cells. Throws ValidationError
/// when the outcome count exceeds 10^6.
ExactLaw exact_law_from_cells(std::span<const std::vector<Cell>> coordinates, Statistic statistic,
                              double lambda = 1.0);

/// Exact law of S_W for up to four independent discrete laws.
ExactSwLaw exact_sw_law(std::span<const ZeroMeanDiscreteDist> dists);
/// Same law assembled from the W-mixtures instead of the branch enumeration.
ExactSwLaw exact_sw_law_from_mixture(std::span<const ZeroMeanDiscreteDist> dists);
ExactLaw exact_sy_law(std::span<const ZeroMeanDiscreteDist> dists, double lambda);

/// Exact law of ε_1a_1 + … + ε_na_n, n <= 20.
ExactLaw exact_rademacher_law(std::span<const double> a);

/// E max(Z - t, 0)^alpha for Z ~ N(0,1) by exp-sinh quadrature.
double normal_positive_part_moment(int alpha, double t);

/// Monte Carlo tail estimates P(S >= x) on a grid, with standard errors.
struct TailEstimate {
  std::vector<double> grid;
  std::vector<double> probability;
  std::vector<double> stderr_;
  std::size_t replications = 0;
};

/// Draws X_i from each law, U_i uniform, sets W_i/Y_i through r_i, and
/// evaluates the statistic. Replications run in fixed chunks with their own
/// RNG substreams, so output is independent of the thread count.
TailEstimate estimate_tail(std::span<const ZeroMeanDiscreteDist> dists, Statistic statistic, double lambda,
                           std::span<const double> grid, std::size_t replications, std::uint64_t seed);

enum class VerifyMode { automatic, exact, monte_carlo };

std::string_view to_string(VerifyMode mode);

struct ReportRow {
  std::string bound;
  double point = 0.0;  // x for tails, t for moments
  double lhs = 0.0;
  double stderr_ = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs (exact) or rhs - (lhs - 3·stderr) (MC)
  bool pass = true;
};

struct VerificationReport {
  std::string id;
  std::string inequality;
  std::string statistic;
  std::string mode;  // "exact" or "monte-carlo"
  std::vector<ReportRow> rows;
  std::uint64_t seed = 0;
  std::size_t replications = 0;
  bool pass = true;
};

/// Evaluation points: explicit values, or every positive support point of
/// the exact law (exact mode only).
struct Grid {
  std::vector<double> points;
  bool support = false;

  static Grid at(std::vector<double> points) { return Grid{std::move(points), false}; }
  static Grid support_points() { return Grid{{}, true}; }
};

/// Tail of S_W (or S_{Y,λ} for a bernoulli-lc bound) against the bound on
/// the grid. Exact when at most four laws and at most 10^6 outcomes unless
/// Monte Carlo is forced; Monte Carlo needs N >= 10^4.
VerificationReport verify_tail_bound(std::span<const ZeroMeanDiscreteDist> dists, const BoundSpec& bound,
                                     const Grid& grid, std::size_t N, std::uint64_t seed,
                                     VerifyMode mode = VerifyMode::automatic);

/// E f_t(S_W) against E f_t(Z) for f_t(x) = max(x - t, 0)^alpha, alpha in {3, 5}.
VerificationReport verify_moment_bound(std::span<const ZeroMeanDiscreteDist> dists, int alpha,
                                       std::span<const double> t_grid, std::size_t N, std::uint64_t seed,
                                       VerifyMode mode = VerifyMode::automatic);

/// Tail of S_{Y,λ} against min(1, c30·P^LC(T_n >= x)). Throws
/// PreconditionError when a law's asymmetry parameter is below p or
/// λ < λ*(p).
VerificationReport verify_sy_bound(std::span<const ZeroMeanDiscreteDist> dists, double p, double lambda,
                                   const Grid& grid, std::size_t N, std::uint64_t seed,
                                   VerifyMode mode = VerifyMode::automatic);

/// Exact Rademacher-sum tail against e^{-x²/2} (x >= 0) and c30·P(Z >= x).
/// Requires Σa² = 1 within 1e-12 and n <= 20.
VerificationReport verify_rademacher(std::span<const double> a, const Grid& grid);

/// One entry of a verification config.
struct CheckSpec {
  enum class Kind { tail, moment, sy_tail, rademacher };

  std::string id;
  Kind kind = Kind::tail;
  std::vector<ZeroMeanDiscreteDist> dists;
  BoundSpec bound;                   // tail
  int alpha = 5;                     // moment
  double p = 0.5;                    // sy_tail
  double lambda = 0.0;               // sy_tail; <= 0 selects λ*(p)
  std::vector<double> coefficients;  // rademacher
  Grid grid;
  std::size_t replications = 100000;
  VerifyMode mode = VerifyMode::automatic;
};

/// Runs every check; check k is seeded with substream k of `seed`.
std::vector<VerificationReport> run_checks(std::span<const CheckSpec> checks, std::uint64_t seed);

}  // namespace recipro
