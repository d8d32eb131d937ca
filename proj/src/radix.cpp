#include "moran/radix.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "moran/error.hpp"
#include "moran/families.hpp"

namespace moran {

namespace {

void check_base(int s) {
  if (s < 2) throw DomainError("base must be >= 2, got " + std::to_string(s));
}

void check_digit(int digit, long limit, std::size_t position) {
  if (digit < 0 || digit >= limit) {
    throw InvalidDigit("digit " + std::to_string(digit) + " at position " +
                       std::to_string(position) + " is outside [0, " +
                       std::to_string(limit) + ")");
  }
}

// Sum of d_j r^j over the prefix, plus the periodic tail in closed form.
Rational positional(const std::vector<int>& digits, const std::vector<int>& period,
                    const Rational& r) {
  Rational value = 0;
  Rational pw = r;
  for (int d : digits) {
    value += d * pw;
    pw *= r;
  }
  if (period.empty()) return value;
  // pw == r^(L+1); the tail is r^L * sum_j p_j r^j / (1 - r^P).
  Rational block = 0;
  Rational q = r;
  for (int d : period) {
    block += d * q;
    q *= r;
  }
  const Rational rP = q / r;
  return value + (pw / r) * block / (1 - rP);
}

// Terms w_n * sign_n * s^-K_n with K_n the running sum of `length`.
struct SeriesTerm {
  Rational weight;
  int length;
};

enum class SignRule { None, ByDepth, ByIndex };

int sign_of(SignRule rule, long depth, std::size_t index) {
  switch (rule) {
    case SignRule::None: return 1;
    case SignRule::ByDepth: return depth % 2 == 0 ? 1 : -1;
    case SignRule::ByIndex: return index % 2 == 0 ? 1 : -1;
  }
  return 1;
}

Rational run_series(int s, SignRule rule, const std::vector<SeriesTerm>& prefix,
                    const std::vector<SeriesTerm>& period) {
  Rational value = 0;
  long depth = 0;
  std::size_t index = 0;
  for (const auto& t : prefix) {
    depth += t.length;
    ++index;
    value += sign_of(rule, depth, index) * t.weight * inv_pow(s, depth);
  }
  if (period.empty()) return value;
  Rational block = 0;
  long d = depth;
  std::size_t i = index;
  for (const auto& t : period) {
    d += t.length;
    ++i;
    block += sign_of(rule, d, i) * t.weight * inv_pow(s, d);
  }
  const long span = d - depth;
  int shift = 1;
  if (rule == SignRule::ByDepth && span % 2 != 0) shift = -1;
  if (rule == SignRule::ByIndex && period.size() % 2 != 0) shift = -1;
  const Rational ratio = shift * inv_pow(s, span);
  return value + block / (1 - ratio);
}

}  // namespace

void validate(const DigitString& d) {
  check_base(d.base);
  std::size_t pos = 1;
  for (int digit : d.digits) check_digit(digit, d.base, pos++);
  for (int digit : d.period) check_digit(digit, d.base, pos++);
}

std::string to_string(const DigitString& d) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < d.digits.size(); ++i) os << (i ? "," : "") << d.digits[i];
  if (!d.period.empty()) {
    os << (d.digits.empty() ? "" : ",") << "[";
    for (std::size_t i = 0; i < d.period.size(); ++i) os << (i ? "," : "") << d.period[i];
    os << "]...";
  }
  os << ")_" << d.base;
  return os.str();
}

// ---------------------------------------------------------------- CantorBasis

CantorBasis CantorBasis::constant(long d) { return periodic({d}); }

CantorBasis CantorBasis::periodic(std::vector<long> values) {
  if (values.empty()) throw DomainError("Cantor basis needs at least one term");
  for (long v : values)
    if (v < 2) throw DomainError("Cantor basis terms must be >= 2");
  CantorBasis b;
  b.kind_ = values.size() == 1 ? Kind::Constant : Kind::Periodic;
  b.values_ = std::move(values);
  return b;
}

CantorBasis CantorBasis::geometric(long ratio) {
  if (ratio < 2) throw DomainError("geometric Cantor basis needs ratio >= 2");
  CantorBasis b;
  b.kind_ = Kind::Geometric;
  b.values_.clear();
  b.ratio_ = ratio;
  return b;
}

Integer CantorBasis::at(std::size_t n) const {
  if (n == 0) throw DomainError("Cantor basis is indexed from 1");
  if (kind_ == Kind::Geometric) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(ratio_), n);
    return p;
  }
  return Integer(values_[(n - 1) % values_.size()]);
}

double CantorBasis::log_at(std::size_t n) const {
  if (n == 0) throw DomainError("Cantor basis is indexed from 1");
  if (kind_ == Kind::Geometric) return static_cast<double>(n) * std::log(static_cast<double>(ratio_));
  return std::log(static_cast<double>(values_[(n - 1) % values_.size()]));
}

std::optional<std::size_t> CantorBasis::period() const {
  if (kind_ == Kind::Geometric) return std::nullopt;
  return values_.size();
}

std::string CantorBasis::to_string() const {
  if (kind_ == Kind::Geometric) return "geom(" + std::to_string(ratio_) + ")";
  std::string out = "[";
  for (std::size_t i = 0; i < values_.size(); ++i)
    out += (i ? "," : "") + std::to_string(values_[i]);
  return out + "]";
}

// ---------------------------------------------------------------- GapSequence

namespace {
void check_gaps(const std::vector<int>& values) {
  for (int m : values)
    if (m < 1) throw DomainError("gap m_n must be a positive integer, got " + std::to_string(m));
}
}  // namespace

GapSequence GapSequence::explicit_list(std::vector<int> values) {
  check_gaps(values);
  GapSequence g;
  g.kind_ = Kind::Explicit;
  g.values_ = std::move(values);
  return g;
}

GapSequence GapSequence::periodic(std::vector<int> values) {
  if (values.empty()) throw DomainError("periodic gap sequence needs a period");
  check_gaps(values);
  GapSequence g;
  g.kind_ = Kind::Periodic;
  g.values_ = std::move(values);
  return g;
}

GapSequence GapSequence::constant(int m) {
  check_gaps({m});
  GapSequence g;
  g.kind_ = Kind::Constant;
  g.values_ = {m};
  return g;
}

int GapSequence::at(std::size_t n) const {
  if (n == 0) throw DomainError("gap sequence is indexed from 1");
  if (kind_ == Kind::Explicit) {
    if (n > values_.size())
      throw DomainError("gap m_" + std::to_string(n) + " is past the end of the list");
    return values_[n - 1];
  }
  return values_[(n - 1) % values_.size()];
}

std::optional<std::size_t> GapSequence::length() const {
  if (kind_ == Kind::Explicit) return values_.size();
  return std::nullopt;
}

// ---------------------------------------------------------------- evaluation

Rational eval_sadic(const DigitString& d) {
  validate(d);
  return positional(d.digits, d.period, make_rational(1, d.base));
}

Rational eval_negasadic(const DigitString& d) {
  validate(d);
  return positional(d.digits, d.period, make_rational(-1, d.base));
}

Rational eval_cantor(std::span<const int> eps, const CantorBasis& basis, bool alternating) {
  Rational value = 0;
  Integer product = 1;
  for (std::size_t n = 1; n <= eps.size(); ++n) {
    const Integer d = basis.at(n);
    const int e = eps[n - 1];
    if (e < 0 || Integer(e) >= d) {
      throw InvalidDigit("digit " + std::to_string(e) + " at position " + std::to_string(n) +
                         " is outside [0, " + d.get_str() + ")");
    }
    product *= d;
    Rational term(Integer(e), product);
    term.canonicalize();
    if (alternating && n % 2 == 1) term = -term;
    value += term;
  }
  return value;
}

Rational eval_negas_cantor(std::span<const int> eps, const GapSequence& gaps, int s) {
  check_base(s);
  Rational value = 0;
  long depth = 0;
  for (std::size_t n = 1; n <= eps.size(); ++n) {
    check_digit(eps[n - 1], s, n);
    depth += gaps.at(n);
    Rational term = eps[n - 1] * inv_pow(s, depth);
    value += n % 2 == 1 ? Rational(-term) : term;
  }
  return value;
}

Rational eval_nega_series(std::span<const int> alphas, const GapSequence& gaps, int s) {
  check_base(s);
  Rational value = 0;
  long depth = 0;
  for (std::size_t n = 1; n <= alphas.size(); ++n) {
    check_digit(alphas[n - 1], s, n);
    depth += gaps.at(n);
    value += alphas[n - 1] * inv_pow(-s, depth);
  }
  return value;
}

bool lemma1_check(const GapSequence& gaps, std::size_t horizon) {
  std::size_t limit = horizon;
  if (auto len = gaps.length()) limit = std::min(limit, *len);
  if (gaps.kind() != GapSequence::Kind::Explicit)
    limit = std::min(limit, gaps.values().size());
  for (std::size_t n = 1; n <= limit; ++n)
    if (gaps.at(n) % 2 == 0) return false;
  return true;
}

DigitString digits_from_rational(const Rational& x, int s, std::size_t n, bool negative) {
  check_base(s);
  if (n == 0) throw DomainError("digit count must be >= 1");
  DigitString out{s, {}, {}};
  out.digits.reserve(n);
  Rational rest = x;
  if (!negative) {
    if (x < 0 || x >= 1)
      throw DomainError("x = " + to_string(x) + " is outside [0, 1) for a canonical s-adic expansion");
    for (std::size_t i = 0; i < n; ++i) {
      rest *= s;
      const Integer digit = moran::floor(rest);
      out.digits.push_back(static_cast<int>(digit.get_si()));
      rest -= digit;
    }
    return out;
  }
  const Rational lo(-s, s + 1), hi(1, s + 1);
  if (x < lo || x > hi)
    throw DomainError("x = " + to_string(x) + " is outside [-s/(s+1), 1/(s+1)]");
  // x = (a + y) / (-s) with y back in [lo, hi]; take the largest such digit.
  for (std::size_t i = 0; i < n; ++i) {
    const Rational shifted = -s * rest;
    Integer digit = moran::floor(make_rational(s, s + 1) + shifted);
    if (digit > s - 1) digit = s - 1;
    out.digits.push_back(static_cast<int>(digit.get_si()));
    rest = shifted - digit;
  }
  return out;
}

// ---------------------------------------------------------------- families

namespace {

std::size_t lcm_size(std::size_t a, std::size_t b) { return a / std::gcd(a, b) * b; }

// Symbols and gaps of the tail repeated until it spans whole family periods.
CylinderAddress unrolled_tail(const FamilySpec& fam, const CylinderAddress& tail) {
  std::size_t reps = 1;
  if (fam.kind == FamilyKind::MDPeriodic) {
    reps = lcm_size(tail.rank(), fam.period.size()) / tail.rank();
  } else if (fam.kind == FamilyKind::CantorRestrict) {
    const auto bp = fam.basis.period();
    if (!bp) throw Unsupported("periodic closure needs a periodic Cantor basis");
    const std::size_t joint = lcm_size(*bp, fam.levels.size());
    reps = lcm_size(tail.rank(), joint) / tail.rank();
  }
  CylinderAddress out;
  for (std::size_t r = 0; r < reps; ++r) {
    out.symbols.insert(out.symbols.end(), tail.symbols.begin(), tail.symbols.end());
    out.gaps.insert(out.gaps.end(), tail.gaps.begin(), tail.gaps.end());
  }
  return out;
}

std::vector<SeriesTerm> run_terms(const FamilySpec& fam, const CylinderAddress& addr,
                                  std::size_t first_level) {
  std::vector<SeriesTerm> terms;
  terms.reserve(addr.rank());
  for (std::size_t i = 0; i < addr.rank(); ++i) {
    const int c = addr.symbols[i];
    switch (fam.kind) {
      case FamilyKind::S:
      case FamilyKind::Su:
      case FamilyKind::NegaSu:
        terms.push_back({Rational(c - fam.u), c});
        break;
      case FamilyKind::Sminus:
        terms.push_back({Rational(c), c});
        break;
      case FamilyKind::MD:
        terms.push_back({Rational(c), addr.gaps[i]});
        break;
      case FamilyKind::MDPeriodic: {
        const std::size_t level = first_level + i;
        terms.push_back({Rational(c), fam.period[(level - 1) % fam.period.size()]});
        break;
      }
      default:
        throw Unsupported("not a run-length family");
    }
  }
  return terms;
}

std::vector<int> concat_digits(const DigitString& a) { return a.digits; }

}  // namespace

Rational eval_family_point(const FamilySpec& fam, const CylinderAddress& addr,
                           const std::optional<CylinderAddress>& periodic_tail) {
  validate(fam, addr);
  std::optional<CylinderAddress> tail;
  if (periodic_tail) {
    if (periodic_tail->rank() == 0) throw DomainError("periodic tail must be nonempty");
    tail = unrolled_tail(fam, *periodic_tail);
    CylinderAddress joined = addr;
    joined.symbols.insert(joined.symbols.end(), tail->symbols.begin(), tail->symbols.end());
    joined.gaps.insert(joined.gaps.end(), tail->gaps.begin(), tail->gaps.end());
    validate(fam, joined);
  }
  const int s = fam.s;
  switch (fam.kind) {
    case FamilyKind::S:
    case FamilyKind::Su: {
      const auto pre = run_terms(fam, addr, 1);
      const auto per = tail ? run_terms(fam, *tail, addr.rank() + 1) : std::vector<SeriesTerm>{};
      return make_rational(fam.u, s - 1) + run_series(s, SignRule::None, pre, per);
    }
    case FamilyKind::NegaSu: {
      const auto pre = run_terms(fam, addr, 1);
      const auto per = tail ? run_terms(fam, *tail, addr.rank() + 1) : std::vector<SeriesTerm>{};
      return run_series(s, SignRule::ByDepth, pre, per) - make_rational(fam.u, s + 1);
    }
    case FamilyKind::Sminus:
    case FamilyKind::MDPeriodic: {
      const auto pre = run_terms(fam, addr, 1);
      const auto per = tail ? run_terms(fam, *tail, addr.rank() + 1) : std::vector<SeriesTerm>{};
      return run_series(s, SignRule::ByIndex, pre, per);
    }
    case FamilyKind::MD: {
      const auto pre = run_terms(fam, addr, 1);
      const auto per = tail ? run_terms(fam, *tail, addr.rank() + 1) : std::vector<SeriesTerm>{};
      return run_series(s, SignRule::ByDepth, pre, per);
    }
    case FamilyKind::Tilde:
    case FamilyKind::Blocks: {
      DigitString d = expand_address(fam, addr);
      if (tail) d.period = concat_digits(expand_address(fam, *tail));
      return eval_sadic(d);
    }
    case FamilyKind::CantorRestrict: {
      Rational value = eval_cantor(addr.symbols, fam.basis, false);
      if (!tail) return value;
      // Tail terms e_j / (d_1 ... d_j) for j past the prefix; the product over
      // one unrolled period is constant, so the tail is a geometric series.
      Integer prefix_product = 1;
      for (std::size_t n = 1; n <= addr.rank(); ++n) prefix_product *= fam.basis.at(n);
      Rational block = 0;
      Integer product = prefix_product;
      for (std::size_t j = 0; j < tail->rank(); ++j) {
        product *= fam.basis.at(addr.rank() + j + 1);
        Rational term(Integer(tail->symbols[j]), product);
        term.canonicalize();
        block += term;
      }
      Rational ratio(prefix_product, product);
      ratio.canonicalize();
      return value + block / (1 - ratio);
    }
  }
  throw Unsupported("unknown family kind");
}

DigitString expand_address(const FamilySpec& fam, const CylinderAddress& addr) {
  validate(fam, addr);
  DigitString out{fam.s, {}, {}};
  switch (fam.kind) {
    case FamilyKind::S:
    case FamilyKind::Su:
    case FamilyKind::NegaSu:
    case FamilyKind::Sminus:
      for (int c : addr.symbols) {
        out.digits.insert(out.digits.end(), static_cast<std::size_t>(c - 1), fam.u);
        out.digits.push_back(c);
      }
      return out;
    case FamilyKind::MD:
      for (std::size_t i = 0; i < addr.rank(); ++i) {
        out.digits.insert(out.digits.end(), static_cast<std::size_t>(addr.gaps[i] - 1), 0);
        out.digits.push_back(addr.symbols[i]);
      }
      return out;
    case FamilyKind::MDPeriodic:
      for (std::size_t i = 0; i < addr.rank(); ++i) {
        const int m = fam.period[i % fam.period.size()];
        out.digits.insert(out.digits.end(), static_cast<std::size_t>(m - 1), 0);
        out.digits.push_back(addr.symbols[i]);
      }
      return out;
    case FamilyKind::Tilde:
    case FamilyKind::Blocks: {
      const BlockSet blocks = blocks_of_family(fam);
      for (int index : addr.symbols) {
        const auto& b = blocks.blocks[static_cast<std::size_t>(index)];
        out.digits.insert(out.digits.end(), b.begin(), b.end());
      }
      return out;
    }
    case FamilyKind::CantorRestrict:
      throw Unsupported("Cantor-series digits have no fixed base to expand into");
  }
  throw Unsupported("unknown family kind");
}

}  // namespace moran
