#pragma once

// Cylinder geometry of the run-length families. Closed-form intervals follow
// the cylinder lemmas for S_(s,u), S_(-s,0) and S^-; a branch-and-bound
// search over admissible continuations provides an independent check.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moran/families.hpp"
#include "moran/rational.hpp"

namespace moran {

enum class Orientation { LeftToRight, RightToLeft, Mixed, Overlap };

std::string to_string(Orientation o);

/// Whole-set [inf, sup] from the lemma constants (S, Su, NSu with u = 0,
/// Sminus).
IntervalR lemma_set_hull(const FamilySpec& fam);

/// Exact cylinder interval from the lemma case analysis. For Sminus the lemma
/// gives a containing interval.
IntervalR cylinder_interval(const FamilySpec& fam, const CylinderAddress& addr);

/// Exact cylinder diameter from the lemma.
Rational cylinder_diameter(const FamilySpec& fam, const CylinderAddress& addr);

struct OracleResult {
  IntervalR interval;
  Rational tail_bound;         // s^-(c_1+...+c_n+depth) * s/(s-1)
  std::uint64_t leaves = 0;    // leaves evaluated
  std::uint64_t visited = 0;   // nodes evaluated
};

/// Min and max over the points addr + w + closure, for every admissible
/// continuation w of length `depth`, where the closure repeats the smallest or
/// the largest admissible symbol forever. Every such point lies in the set, so
/// the result sits inside the true cylinder hull and is within tail_bound of
/// it. Subtrees that provably cannot improve the current extreme are skipped;
/// `cap` bounds the number of evaluated nodes.
OracleResult tail_extrema_oracle(const FamilySpec& fam, const CylinderAddress& addr,
                                 std::size_t depth, std::size_t cap = kDefaultCap);

/// Orientation the lemma predicts for siblings p and the next admissible
/// symbol after p.
Orientation expected_orientation(const FamilySpec& fam, const CylinderAddress& addr, int p);

/// Next admissible symbol after p at the child level, if any.
std::optional<int> next_sibling(const FamilySpec& fam, const CylinderAddress& addr, int p);

/// Open interval strictly between sibling cylinders p and next_sibling(p),
/// oriented per the lemma; nullopt when the two cylinders touch or overlap.
std::optional<IntervalR> gap_interval(const FamilySpec& fam, const CylinderAddress& addr, int p);

/// Sum of the diameters of all rank-`depth` cylinders.
Rational covering_sum(const FamilySpec& fam, std::size_t depth, std::size_t cap = kDefaultCap);

struct SiblingCheck {
  int first = 0;
  int second = 0;
  IntervalR first_interval;
  IntervalR second_interval;
  Orientation expected = Orientation::LeftToRight;
  Orientation actual = Orientation::LeftToRight;
  bool pass = false;
};

struct OrderingReport {
  CylinderAddress address;
  std::vector<SiblingCheck> pairs;
  Orientation overall = Orientation::LeftToRight;
  bool pass = true;
};

/// Compares the lemma orientation of each consecutive sibling pair under
/// `addr` against exact interval comparisons.
OrderingReport ordering_check(const FamilySpec& fam, const CylinderAddress& addr);

struct CylinderReport {
  CylinderAddress address;
  IntervalR interval;
  Rational diameter;
  std::optional<int> child;
  std::optional<Rational> child_ratio;  // diameter(addr + child) / diameter(addr)
  Orientation orientation = Orientation::Mixed;
  bool from_lemma = false;
};

/// Lemma geometry when the family has a cylinder lemma, exact IFS hulls
/// otherwise.
CylinderReport cylinder_report(const FamilySpec& fam, const CylinderAddress& addr,
                               std::optional<int> child = std::nullopt);

}  // namespace moran
