#pragma once

// Every family is the attractor of affine maps x = offset + scale * y, one map
// per address symbol. Cylinder hulls follow by composing maps along the
// address and applying the result to the exact hull of the tail set.

#include <cstddef>
#include <vector>

#include "moran/families.hpp"
#include "moran/rational.hpp"

namespace moran {

struct AffineMap {
  Rational offset = 0;
  Rational scale = 1;

  Rational apply(const Rational& y) const { return offset + scale * y; }
  /// (*this) o inner.
  AffineMap compose(const AffineMap& inner) const {
    return {offset + scale * inner.offset, scale * inner.scale};
  }
  IntervalR image(const IntervalR& in) const;
  /// Fixed point; requires scale != 1.
  Rational fixed_point() const { return offset / (1 - scale); }
};

struct Branch {
  int symbol = 0;
  AffineMap map;
};

/// Maps of one family, grouped by phase. Self-similar families have a single
/// phase; MDper and periodic Cantor families cycle through several, the tail
/// set after rank n being that of phase n mod phases(). MD has infinitely many
/// maps and is served through md_map().
class FamilyIfs {
 public:
  explicit FamilyIfs(const FamilySpec& fam);

  const FamilySpec& family() const { return fam_; }
  std::size_t phases() const { return phases_; }
  std::size_t phase_of(std::size_t rank) const { return rank % phases_; }
  bool infinite() const { return fam_.kind == FamilyKind::MD; }

  /// Branches taken from `phase` (level phase+1 mod phases()). Empty for MD.
  const std::vector<Branch>& branches(std::size_t phase) const { return branches_[phase]; }
  /// Map of a single step at address position `level` (1-based).
  AffineMap step(std::size_t level, int symbol, int gap = 0) const;
  AffineMap md_map(int gap, int digit) const;

  /// Exact closed hull of the tail set of `phase`.
  const IntervalR& hull(std::size_t phase = 0) const { return hulls_[phase]; }

  AffineMap address_map(const CylinderAddress& addr) const;
  IntervalR cylinder_hull(const CylinderAddress& addr) const;

 private:
  FamilySpec fam_;
  std::size_t phases_ = 1;
  std::vector<std::vector<Branch>> branches_;
  std::vector<std::vector<int>> lookup_;  // per phase: symbol -> branch index
  std::vector<IntervalR> hulls_;
};

/// [inf, sup] of the attractor of finitely many monotone affine contractions.
/// The extremes are attained at a fixed point, a map applied to a fixed point,
/// or a fixed point of a two-fold composition; all are enumerated.
IntervalR attractor_hull(const std::vector<AffineMap>& maps);

}  // namespace moran
