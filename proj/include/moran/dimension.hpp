#pragma once

// Hausdorff dimension of the families: Moran equations solved in t = s^-alpha,
// closed forms for MD and its periodic variant, and running estimates for
// Cantor series.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moran/families.hpp"
#include "moran/rational.hpp"

namespace moran {

enum class Method {
  MoranRoot,
  BlockRoot,
  ClosedLog,
  ClosedCubic,
  Periodic,
  LiminfEstimate,
  Boxcount,
};

std::string to_string(Method m);

struct DimensionResult {
  double alpha = 0;
  Method method = Method::BlockRoot;
  double residual = 0;
  double bracket_lo = 0;
  double bracket_hi = 0;
  int iterations = 0;
  bool degenerate = false;
  std::optional<double> cross_check;  // second evaluation of the same alpha
  std::optional<Rational> exact;      // exact rational alpha when known
  std::string note;
};

/// Similarity ratios, each in (0, 1).
using RatioList = std::vector<double>;

/// Root alpha >= 0 of sum r_i^alpha = 1.
DimensionResult moran_dimension(const RatioList& ratios);

/// Root of sum_k N_k t^k (+ analytic tail) = 1 with t = s^-alpha.
DimensionResult block_dimension(int s, const BlockSet& blocks);

/// Block-length histogram read straight off the family's dimension theorem,
/// independent of blocks_of_family. Nullopt for MD, MDper and Cantor families.
std::optional<std::map<int, std::uint64_t>> theorem_histogram(const FamilySpec& fam);

/// |sum_k N_k s^(-k alpha) - 1| for the histogram above.
double theorem_residual(const FamilySpec& fam, double alpha);

/// Dispatches on the family: block equation, MD cubic, periodic gap formula, or
/// the Cantor-series estimate. `note` names the equation solved.
DimensionResult family_dimension(const FamilySpec& fam);

/// Cardano form of the real root of x^3 - x = s - 1, alpha = log_s x, with the
/// bisection root of (s-1)t^3 + t^2 - 1 = 0 as cross_check.
DimensionResult md_closed_form(int s);

/// t / (m_1 + ... + m_t) for odd gaps m.
DimensionResult periodic_dimension(const std::vector<int>& m);

/// log l / -log lam. When s is given the hypothesis s - 1 < (l - 1)^2 is
/// checked and reported in the note.
DimensionResult lambda_dimension(double lam, long l, std::optional<int> s = std::nullopt);

struct CantorEstimate {
  std::vector<double> running;  // r_1 .. r_nmax
  double proxy = 0;             // min of r_n over the trailing window
  std::size_t window = 0;
  double side_ratio = 0;        // log d_n / log(d_1...d_n) at n_max
  std::string warning;          // set when the side condition looks slow
};

/// r_n = sum_{j<=n} log|I_j| / sum_{j<=n} log d_j; `levels` repeat with period
/// levels.size().
CantorEstimate cantor_series_dim_estimate(const CantorBasis& basis,
                                          const std::vector<std::vector<int>>& levels,
                                          std::size_t n_max);

}  // namespace moran
