#pragma once

// Box counting on a fixed mesh anchored at the infimum of the set.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "moran/families.hpp"
#include "moran/rational.hpp"

namespace moran {

struct ScaleCount {
  double epsilon = 0;
  std::uint64_t count = 0;
  std::size_t depth = 0;  // deepest cylinder rank used in the cover
};

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  std::vector<ScaleCount> scales;
};

/// Number of cells [inf + k eps, inf + (k+1) eps) met by a cover of the set by
/// cylinder hulls of diameter at most eps. Each branch is refined only until
/// its hull is small enough; for MD, the cylinders with long leading zero runs
/// are merged into one hull once that hull is below eps. `cap` bounds the
/// number of visited cylinders.
ScaleCount boxes_at_scale(const FamilySpec& fam, const Rational& eps, std::size_t cap = kDefaultCap);
ScaleCount boxes_at_scale(const FamilySpec& fam, double eps, std::size_t cap = kDefaultCap);

/// Natural mesh base: s, or d_1 for Cantor families.
int mesh_base(const FamilySpec& fam);

/// Counts at eps = base^-n for n = n_lo..n_hi.
std::vector<ScaleCount> count_scales(const FamilySpec& fam, int n_lo, int n_hi,
                                     std::size_t cap = kDefaultCap);

/// Least-squares slope of log count against log(1/eps). Needs at least three
/// scales spanning two decades.
FitResult fit_dimension(const std::vector<ScaleCount>& points);

}  // namespace moran
