#pragma once

// Digit-restricted set families described as block languages.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moran/radix.hpp"

namespace moran {

enum class FamilyKind {
  S,               // S_(s,0): run-length blocks 0..0p
  Su,              // S_(s,u): blocks u..up, p != u
  NegaSu,          // S_(-s,u): same blocks read in base -s
  Sminus,          // S^-: sum (-1)^n a_n / s^(a_1+...+a_n)
  Tilde,           // all blocks u..uc with c in A_0, u in A, c != u
  MD,              // M_(-D,s): blocks 0..0a, odd length >= 3, a != 0
  MDPeriodic,      // M'_(-D,s,t): nega-s-adic Cantor series, periodic gaps
  Blocks,          // explicit s-adic block list
  CantorRestrict,  // Cantor series with digit e_n restricted to I_n
};

std::string to_string(FamilyKind kind);

/// Tagged descriptor of one set family. Build through the named constructors,
/// which enforce the parameter invariants.
struct FamilySpec {
  FamilyKind kind = FamilyKind::S;
  int s = 3;
  int u = 0;
  std::vector<int> period;               // MDPeriodic gaps m_1..m_t
  std::vector<std::vector<int>> blocks;  // Blocks, sorted and deduplicated
  CantorBasis basis;                     // CantorRestrict
  std::vector<std::vector<int>> levels;  // CantorRestrict I_j, repeating

  static FamilySpec s_family(int s);
  static FamilySpec su(int s, int u);
  static FamilySpec nega_su(int s, int u);
  static FamilySpec sminus(int s);
  static FamilySpec tilde(int s);
  static FamilySpec md(int s);
  static FamilySpec md_periodic(int s, std::vector<int> period);
  static FamilySpec block_list(int s, std::vector<std::vector<int>> blocks);
  static FamilySpec cantor(CantorBasis basis,
                           std::vector<std::vector<int>> levels);

  /// Digits are read in base -s.
  bool negative_base() const;
  /// Run-length families S, Su, NegaSu, Sminus: address symbols are digits
  /// c in A_0 (minus u) and c is also the block length.
  bool run_length() const;
  /// The cylinder lemmas cover S, Su, NegaSu with u = 0, and Sminus.
  bool has_cylinder_lemma() const;

  /// Symbols allowed at address position `level` (1-based). For MD these are
  /// the nonzero digits; the gap is chosen separately.
  std::vector<int> admissible(std::size_t level) const;

  /// Only one infinite address exists, so the set is a single point.
  bool degenerate() const;

  /// Canonical text in the family grammar, e.g. "Su(s=5,u=2)".
  std::string to_string() const;

  bool operator==(const FamilySpec&) const = default;
};

/// Parses the family grammar: S(s=3), Su(s=5,u=2), NSu(s=5,u=2), Sminus(s=3),
/// Tilde(s=4), MD(s=2), MDper(s=3,m=[3,5]), Blocks(s=3,B=[0 2;1]),
/// Cantor(d=[3],I=[{0,2}]) and Cantor(d=geom(2),I=[{0,1}]).
FamilySpec parse_family(const std::string& text);

/// Names a cylinder: c_1..c_n. Symbols are digits for the run-length, MD and
/// Cantor families and block indices for Tilde and Blocks. `gaps` holds
/// m_1..m_n and is used by MD only.
struct CylinderAddress {
  std::vector<int> symbols;
  std::vector<int> gaps;

  std::size_t rank() const { return symbols.size(); }
  CylinderAddress child(int symbol, int gap = 0) const;

  bool operator==(const CylinderAddress&) const = default;
  auto operator<=>(const CylinderAddress&) const = default;
};

std::string to_string(const CylinderAddress& addr);

/// Throws FamilyConstraint unless every symbol (and MD gap) is admissible.
void validate(const FamilySpec& fam, const CylinderAddress& addr);

/// Infinitely many blocks with `count` blocks of each length
/// first, first + step, first + 2 step, ...
struct AnalyticTail {
  int first = 3;
  int step = 2;
  std::uint64_t count = 1;

  bool operator==(const AnalyticTail&) const = default;
};

struct BlockSet {
  int base = 2;
  std::vector<std::vector<int>> blocks;      // sorted, distinct
  std::map<int, std::uint64_t> histogram;    // length k -> N_k (finite part)
  std::optional<AnalyticTail> tail;          // MD only

  std::uint64_t size() const;                // finite blocks only
  bool degenerate() const { return !tail && size() == 1; }
};

BlockSet blocks_of_family(const FamilySpec& fam);

/// Builds a block set from explicit blocks, filling the histogram.
BlockSet make_block_set(int base, std::vector<std::vector<int>> blocks);

inline constexpr std::size_t kDefaultCap = 1'000'000;

/// All admissible addresses of the given rank in lexicographic order.
std::vector<CylinderAddress> enumerate_addresses(const FamilySpec& fam,
                                                 std::size_t depth,
                                                 std::size_t cap = kDefaultCap);

/// Number of addresses enumerate_addresses would return, saturating at
/// UINT64_MAX. Throws Unsupported for MD.
std::uint64_t address_count(const FamilySpec& fam, std::size_t depth);

/// True iff `digits` is a prefix of some concatenation of the family's blocks
/// (for CantorRestrict: e_n in I_n for each position).
bool membership_prefix(const FamilySpec& fam, const DigitString& digits);

/// Value of the family's defining series on the address prefix. When
/// `periodic_tail` is given its symbols repeat forever after the prefix;
/// otherwise the series is truncated after the prefix.
Rational eval_family_point(
    const FamilySpec& fam, const CylinderAddress& addr,
    const std::optional<CylinderAddress>& periodic_tail = std::nullopt);

/// Digit string spelled by the address: u..u c_1 u..u c_2 ... for the run-length
/// families, 0..0 e_1 0..0 e_2 ... for the nega-s-adic Cantor families and the
/// concatenated blocks for block families.
DigitString expand_address(const FamilySpec& fam, const CylinderAddress& addr);

}  // namespace moran
