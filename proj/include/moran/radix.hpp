#pragma once

// Exact evaluation of s-adic, nega-s-adic and Cantor-series expansions.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moran/rational.hpp"

namespace moran {

/// Digits over {0, ..., base-1}. `digits` is the finite prefix; `period`, when
/// nonempty, repeats forever after it. An empty period denotes a zero tail.
struct DigitString {
  int base = 10;
  std::vector<int> digits;
  std::vector<int> period;

  bool operator==(const DigitString&) const = default;
};

/// Throws InvalidDigit unless every digit (prefix and period) lies in [0, base).
void validate(const DigitString& d);

std::string to_string(const DigitString& d);

/// Basis (d_n) of a Cantor series. Every term is >= 2 and depends only on n.
class CantorBasis {
 public:
  enum class Kind { Constant, Periodic, Geometric };

  CantorBasis() = default;

  static CantorBasis constant(long d);
  /// d_n = values[(n - 1) mod values.size()].
  static CantorBasis periodic(std::vector<long> values);
  /// d_n = ratio^n.
  static CantorBasis geometric(long ratio);

  /// d_n for n >= 1.
  Integer at(std::size_t n) const;
  /// log d_n, evaluated without forming d_n.
  double log_at(std::size_t n) const;

  Kind kind() const { return kind_; }
  const std::vector<long>& values() const { return values_; }
  long ratio() const { return ratio_; }
  /// Length of the repeating pattern; nullopt for geometric bases.
  std::optional<std::size_t> period() const;

  std::string to_string() const;
  bool operator==(const CantorBasis&) const = default;

 private:
  Kind kind_ = Kind::Constant;
  std::vector<long> values_{2};
  long ratio_ = 0;
};

/// Gap sequence (m_n) of a nega-s-adic Cantor series; k_n = m_1 + ... + m_n.
class GapSequence {
 public:
  enum class Kind { Explicit, Periodic, Constant };

  GapSequence() = default;

  static GapSequence explicit_list(std::vector<int> values);
  static GapSequence periodic(std::vector<int> values);
  static GapSequence constant(int m);

  /// m_n for n >= 1. Throws DomainError past the end of an explicit list.
  int at(std::size_t n) const;
  /// Number of defined terms; nullopt when the sequence is unbounded.
  std::optional<std::size_t> length() const;

  Kind kind() const { return kind_; }
  const std::vector<int>& values() const { return values_; }

  bool operator==(const GapSequence&) const = default;

 private:
  Kind kind_ = Kind::Constant;
  std::vector<int> values_{1};
};

/// Sum of d_n s^-n, with the periodic tail summed in closed form.
Rational eval_sadic(const DigitString& d);

/// Sum of (-1)^n d_n s^-n. Always lies in [-s/(s+1), 1/(s+1)].
Rational eval_negasadic(const DigitString& d);

/// Sum of eps_n / (d_1 ... d_n), with sign (-1)^n when `alternating`.
Rational eval_cantor(std::span<const int> eps, const CantorBasis& basis,
                     bool alternating);

/// Nega-s-adic Cantor series: sum of (-1)^n eps_n / s^(m_1+...+m_n).
Rational eval_negas_cantor(std::span<const int> eps, const GapSequence& gaps,
                           int s);

/// Nega-s-adic series: sum of alpha_n / (-s)^(m_1+...+m_n). Coincides with
/// eval_negas_cantor exactly when the gaps involved are odd.
Rational eval_nega_series(std::span<const int> alphas, const GapSequence& gaps,
                          int s);

/// True iff m_n is odd for every n <= horizon (clipped to the length of an
/// explicit list).
bool lemma1_check(const GapSequence& gaps, std::size_t horizon);

/// First n digits of the canonical expansion of x. For the positive base x must
/// lie in [0, 1); the greedy expansion never ends in an (s-1)-run. For the
/// negative base x must lie in [-s/(s+1), 1/(s+1)].
DigitString digits_from_rational(const Rational& x, int s, std::size_t n,
                                 bool negative);

}  // namespace moran
