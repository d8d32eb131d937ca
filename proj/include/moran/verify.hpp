#pragma once

// Property suite for cylinder geometry: closed-form intervals against the
// extrema oracle, nesting, ratio law, sibling gaps, orientation and covering
// sums. Families without a cylinder lemma are checked against exact IFS hulls.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "moran/families.hpp"
#include "moran/rational.hpp"

namespace moran {

struct Counterexample {
  CylinderAddress address;
  std::string what;
  Rational left;
  Rational right;
};

struct PropertyResult {
  std::string name;
  std::size_t checked = 0;
  bool pass = true;
  bool skipped = false;
  std::string note;
  std::optional<Counterexample> counterexample;  // first failure
};

struct VerifyReport {
  FamilySpec family;
  std::size_t depth = 0;
  std::size_t oracle_depth = 0;
  std::vector<PropertyResult> properties;
  Rational max_oracle_distance = 0;  // largest Hausdorff distance seen
  bool pass = true;
};

/// Runs every property over all addresses of rank <= depth. MD is rejected.
VerifyReport verify_family(const FamilySpec& fam, std::size_t depth, std::size_t oracle_depth,
                           std::size_t cap = kDefaultCap);

}  // namespace moran
