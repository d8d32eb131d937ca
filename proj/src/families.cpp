#include "moran/families.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "moran/error.hpp"

namespace moran {

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::S: return "S";
    case FamilyKind::Su: return "Su";
    case FamilyKind::NegaSu: return "NSu";
    case FamilyKind::Sminus: return "Sminus";
    case FamilyKind::Tilde: return "Tilde";
    case FamilyKind::MD: return "MD";
    case FamilyKind::MDPeriodic: return "MDper";
    case FamilyKind::Blocks: return "Blocks";
    case FamilyKind::CantorRestrict: return "Cantor";
  }
  return "?";
}

namespace {

void require_s_above_2(int s, const char* name) {
  if (s <= 2) throw DomainError(std::string(name) + " requires s > 2, got s=" + std::to_string(s));
}

void require_u(int s, int u) {
  if (u < 0 || u >= s)
    throw DomainError("u must lie in {0,...,s-1}, got u=" + std::to_string(u));
}

void normalize_blocks(int base, std::vector<std::vector<int>>& blocks) {
  if (blocks.empty()) throw DomainError("block set must be nonempty");
  for (const auto& b : blocks) {
    if (b.empty()) throw DomainError("blocks must be nonempty digit strings");
    for (int d : b) {
      if (d < 0 || d >= base)
        throw InvalidDigit("block digit " + std::to_string(d) + " is outside base " +
                           std::to_string(base));
    }
  }
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
}

std::string join(const std::vector<int>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

FamilySpec FamilySpec::s_family(int s) {
  require_s_above_2(s, "S");
  FamilySpec f;
  f.kind = FamilyKind::S;
  f.s = s;
  return f;
}

FamilySpec FamilySpec::su(int s, int u) {
  require_s_above_2(s, "Su");
  require_u(s, u);
  FamilySpec f;
  f.kind = FamilyKind::Su;
  f.s = s;
  f.u = u;
  return f;
}

FamilySpec FamilySpec::nega_su(int s, int u) {
  require_s_above_2(s, "NSu");
  require_u(s, u);
  FamilySpec f;
  f.kind = FamilyKind::NegaSu;
  f.s = s;
  f.u = u;
  return f;
}

FamilySpec FamilySpec::sminus(int s) {
  require_s_above_2(s, "Sminus");
  FamilySpec f;
  f.kind = FamilyKind::Sminus;
  f.s = s;
  return f;
}

FamilySpec FamilySpec::tilde(int s) {
  require_s_above_2(s, "Tilde");
  FamilySpec f;
  f.kind = FamilyKind::Tilde;
  f.s = s;
  return f;
}

FamilySpec FamilySpec::md(int s) {
  if (s < 2) throw DomainError("MD requires s > 1");
  FamilySpec f;
  f.kind = FamilyKind::MD;
  f.s = s;
  return f;
}

FamilySpec FamilySpec::md_periodic(int s, std::vector<int> period) {
  if (s < 2) throw DomainError("MDper requires s > 1");
  if (period.empty()) throw DomainError("MDper requires a nonempty gap period");
  for (int m : period) {
    if (m < 3 || m % 2 == 0)
      throw DomainError("MDper gaps must be odd and >= 3, got " + std::to_string(m));
  }
  FamilySpec f;
  f.kind = FamilyKind::MDPeriodic;
  f.s = s;
  f.period = std::move(period);
  return f;
}

FamilySpec FamilySpec::block_list(int s, std::vector<std::vector<int>> blocks) {
  if (s < 2) throw DomainError("Blocks requires s >= 2");
  normalize_blocks(s, blocks);
  FamilySpec f;
  f.kind = FamilyKind::Blocks;
  f.s = s;
  f.blocks = std::move(blocks);
  return f;
}

FamilySpec FamilySpec::cantor(CantorBasis basis, std::vector<std::vector<int>> levels) {
  if (levels.empty()) throw DomainError("Cantor family needs at least one digit set");
  for (auto& level : levels) {
    if (level.empty()) throw DomainError("digit sets I_j must be nonempty");
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
    if (level.front() < 0) throw InvalidDigit("digit sets hold nonnegative digits");
  }
  // Check I_j within {0..d_j-1} over one joint period (geometric bases grow,
  // so their first occurrence is the tightest).
  std::size_t span = levels.size();
  if (auto p = basis.period()) span = std::lcm(span, *p);
  for (std::size_t n = 1; n <= span; ++n) {
    const auto& level = levels[(n - 1) % levels.size()];
    if (Integer(level.back()) >= basis.at(n))
      throw InvalidDigit("digit " + std::to_string(level.back()) + " exceeds d_" +
                         std::to_string(n) + " - 1");
  }
  FamilySpec f;
  f.kind = FamilyKind::CantorRestrict;
  f.s = 0;
  f.basis = std::move(basis);
  f.levels = std::move(levels);
  return f;
}

bool FamilySpec::negative_base() const {
  return kind == FamilyKind::NegaSu || kind == FamilyKind::MD || kind == FamilyKind::MDPeriodic;
}

bool FamilySpec::run_length() const {
  return kind == FamilyKind::S || kind == FamilyKind::Su || kind == FamilyKind::NegaSu ||
         kind == FamilyKind::Sminus;
}

bool FamilySpec::has_cylinder_lemma() const {
  return kind == FamilyKind::S || kind == FamilyKind::Su || kind == FamilyKind::Sminus ||
         (kind == FamilyKind::NegaSu && u == 0);
}

namespace {
std::uint64_t tilde_count(int s) {
  return static_cast<std::uint64_t>(s) * s - 3ull * s + 3;
}
}  // namespace

std::vector<int> FamilySpec::admissible(std::size_t level) const {
  std::vector<int> out;
  switch (kind) {
    case FamilyKind::S:
    case FamilyKind::Sminus:
    case FamilyKind::MD:
      for (int c = 1; c < s; ++c) out.push_back(c);
      break;
    case FamilyKind::Su:
    case FamilyKind::NegaSu:
      for (int c = 1; c < s; ++c)
        if (c != u) out.push_back(c);
      break;
    case FamilyKind::Tilde:
      out.resize(tilde_count(s));
      std::iota(out.begin(), out.end(), 0);
      break;
    case FamilyKind::Blocks:
      out.resize(blocks.size());
      std::iota(out.begin(), out.end(), 0);
      break;
    case FamilyKind::MDPeriodic:
      for (int c = 0; c < s; ++c) out.push_back(c);
      break;
    case FamilyKind::CantorRestrict:
      if (level == 0) throw DomainError("levels are indexed from 1");
      out = levels[(level - 1) % levels.size()];
      break;
  }
  return out;
}

bool FamilySpec::degenerate() const {
  switch (kind) {
    case FamilyKind::MD:
    case FamilyKind::MDPeriodic:
      return false;
    case FamilyKind::CantorRestrict:
      return std::all_of(levels.begin(), levels.end(),
                         [](const auto& level) { return level.size() == 1; });
    default:
      return admissible(1).size() == 1;
  }
}

std::string FamilySpec::to_string() const {
  const std::string ss = "s=" + std::to_string(s);
  switch (kind) {
    case FamilyKind::S: return "S(" + ss + ")";
    case FamilyKind::Su: return "Su(" + ss + ",u=" + std::to_string(u) + ")";
    case FamilyKind::NegaSu: return "NSu(" + ss + ",u=" + std::to_string(u) + ")";
    case FamilyKind::Sminus: return "Sminus(" + ss + ")";
    case FamilyKind::Tilde: return "Tilde(" + ss + ")";
    case FamilyKind::MD: return "MD(" + ss + ")";
    case FamilyKind::MDPeriodic: return "MDper(" + ss + ",m=[" + join(period, ",") + "])";
    case FamilyKind::Blocks: {
      std::string out = "Blocks(" + ss + ",B=[";
      for (std::size_t i = 0; i < blocks.size(); ++i) out += (i ? ";" : "") + join(blocks[i], " ");
      return out + "])";
    }
    case FamilyKind::CantorRestrict: {
      std::string out = "Cantor(d=" + basis.to_string() + ",I=[";
      for (std::size_t i = 0; i < levels.size(); ++i)
        out += std::string(i ? "," : "") + "{" + join(levels[i], ",") + "}";
      return out + "])";
    }
  }
  return "?";
}

// ---------------------------------------------------------------- addresses

CylinderAddress CylinderAddress::child(int symbol, int gap) const {
  CylinderAddress out = *this;
  out.symbols.push_back(symbol);
  if (gap != 0) out.gaps.push_back(gap);
  return out;
}

std::string to_string(const CylinderAddress& addr) {
  std::string out = "(";
  for (std::size_t i = 0; i < addr.rank(); ++i) {
    if (i) out += ",";
    if (i < addr.gaps.size()) out += std::to_string(addr.gaps[i]) + ":";
    out += std::to_string(addr.symbols[i]);
  }
  return out + ")";
}

namespace {

bool symbol_ok(const FamilySpec& fam, std::size_t level, int c) {
  switch (fam.kind) {
    case FamilyKind::S:
    case FamilyKind::Sminus:
    case FamilyKind::MD:
      return c >= 1 && c < fam.s;
    case FamilyKind::Su:
    case FamilyKind::NegaSu:
      return c >= 1 && c < fam.s && c != fam.u;
    case FamilyKind::Tilde:
      return c >= 0 && static_cast<std::uint64_t>(c) < tilde_count(fam.s);
    case FamilyKind::Blocks:
      return c >= 0 && static_cast<std::size_t>(c) < fam.blocks.size();
    case FamilyKind::MDPeriodic:
      return c >= 0 && c < fam.s;
    case FamilyKind::CantorRestrict: {
      const auto& level_set = fam.levels[(level - 1) % fam.levels.size()];
      return std::binary_search(level_set.begin(), level_set.end(), c);
    }
  }
  return false;
}

}  // namespace

void validate(const FamilySpec& fam, const CylinderAddress& addr) {
  if (fam.kind == FamilyKind::MD) {
    if (addr.gaps.size() != addr.symbols.size())
      throw FamilyConstraint("MD addresses need one gap per digit");
    for (int m : addr.gaps) {
      if (m < 3 || m % 2 == 0)
        throw FamilyConstraint("MD gaps must be odd and >= 3, got " + std::to_string(m));
    }
  } else if (!addr.gaps.empty()) {
    throw FamilyConstraint("only MD addresses carry gaps");
  }
  for (std::size_t i = 0; i < addr.rank(); ++i) {
    if (!symbol_ok(fam, i + 1, addr.symbols[i])) {
      throw FamilyConstraint("symbol " + std::to_string(addr.symbols[i]) + " at position " +
                             std::to_string(i + 1) + " is not admissible for " +
                             fam.to_string());
    }
  }
}

// ---------------------------------------------------------------- blocks

std::uint64_t BlockSet::size() const {
  std::uint64_t total = 0;
  for (const auto& [len, n] : histogram) total += n;
  return total;
}

BlockSet make_block_set(int base, std::vector<std::vector<int>> blocks) {
  normalize_blocks(base, blocks);
  BlockSet out;
  out.base = base;
  out.blocks = std::move(blocks);
  for (const auto& b : out.blocks) ++out.histogram[static_cast<int>(b.size())];
  return out;
}

BlockSet blocks_of_family(const FamilySpec& fam) {
  const int s = fam.s;
  switch (fam.kind) {
    case FamilyKind::S:
    case FamilyKind::Su:
    case FamilyKind::NegaSu:
    case FamilyKind::Sminus: {
      std::vector<std::vector<int>> blocks;
      for (int p : fam.admissible(1)) {
        std::vector<int> b(static_cast<std::size_t>(p - 1), fam.u);
        b.push_back(p);
        blocks.push_back(std::move(b));
      }
      return make_block_set(s, std::move(blocks));
    }
    case FamilyKind::Tilde: {
      std::vector<std::vector<int>> blocks;
      for (int c = 1; c < s; ++c) {
        for (int u = 0; u < s; ++u) {
          if (u == c) continue;
          std::vector<int> b(static_cast<std::size_t>(c - 1), u);
          b.push_back(c);
          blocks.push_back(std::move(b));
        }
      }
      return make_block_set(s, std::move(blocks));
    }
    case FamilyKind::MD: {
      BlockSet out;
      out.base = s;
      out.tail = AnalyticTail{3, 2, static_cast<std::uint64_t>(s - 1)};
      return out;
    }
    case FamilyKind::MDPeriodic: {
      const std::size_t t = fam.period.size();
      long double total = 1;
      for (std::size_t i = 0; i < t; ++i) total *= s;
      if (total > static_cast<long double>(kDefaultCap))
        throw Blowup("MDper block set has s^t > " + std::to_string(kDefaultCap) + " blocks");
      std::vector<std::vector<int>> blocks;
      std::vector<int> eps(t, 0);
      while (true) {
        std::vector<int> b;
        for (std::size_t i = 0; i < t; ++i) {
          b.insert(b.end(), static_cast<std::size_t>(fam.period[i] - 1), 0);
          b.push_back(eps[i]);
        }
        blocks.push_back(std::move(b));
        std::size_t i = t;
        while (i > 0 && eps[i - 1] == s - 1) eps[--i] = 0;
        if (i == 0) break;
        ++eps[i - 1];
      }
      return make_block_set(s, std::move(blocks));
    }
    case FamilyKind::Blocks:
      return make_block_set(s, fam.blocks);
    case FamilyKind::CantorRestrict:
      throw Unsupported("Cantor-series families have no block description");
  }
  throw Unsupported("unknown family kind");
}

// ---------------------------------------------------------------- enumeration

std::uint64_t address_count(const FamilySpec& fam, std::size_t depth) {
  if (fam.kind == FamilyKind::MD) throw Unsupported("MD has infinitely many addresses per rank");
  std::uint64_t count = 1;
  for (std::size_t level = 1; level <= depth; ++level) {
    const std::uint64_t b = fam.admissible(level).size();
    if (b != 0 && count > std::numeric_limits<std::uint64_t>::max() / b)
      return std::numeric_limits<std::uint64_t>::max();
    count *= b;
  }
  return count;
}

std::vector<CylinderAddress> enumerate_addresses(const FamilySpec& fam, std::size_t depth,
                                                 std::size_t cap) {
  const std::uint64_t count = address_count(fam, depth);
  if (count > cap) {
    throw Blowup(std::to_string(count) + " addresses of rank " + std::to_string(depth) +
                 " exceed the cap of " + std::to_string(cap));
  }
  std::vector<std::vector<int>> choices;
  for (std::size_t level = 1; level <= depth; ++level) choices.push_back(fam.admissible(level));

  std::vector<CylinderAddress> out;
  out.reserve(count);
  std::vector<std::size_t> index(depth, 0);
  while (true) {
    CylinderAddress addr;
    addr.symbols.resize(depth);
    for (std::size_t i = 0; i < depth; ++i) addr.symbols[i] = choices[i][index[i]];
    out.push_back(std::move(addr));
    std::size_t i = depth;
    while (i > 0 && index[i - 1] + 1 == choices[i - 1].size()) index[--i] = 0;
    if (i == 0) break;
    ++index[i - 1];
  }
  return out;
}

// ---------------------------------------------------------------- membership

namespace {

bool md_prefix(const std::vector<int>& d) {
  std::size_t i = 0;
  while (i < d.size()) {
    std::size_t zeros = 0;
    while (i + zeros < d.size() && d[i + zeros] == 0) ++zeros;
    if (i + zeros == d.size()) return true;  // a zero run extends to some block
    if (zeros < 2 || zeros % 2 != 0) return false;
    i += zeros + 1;
  }
  return true;
}

bool block_prefix(const std::vector<std::vector<int>>& blocks, const std::vector<int>& d) {
  const std::size_t n = d.size();
  std::vector<char> reachable(n + 1, 0);
  reachable[0] = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    if (!reachable[i]) continue;
    if (i == n) return true;
    for (const auto& b : blocks) {
      const std::size_t len = std::min(b.size(), n - i);
      if (!std::equal(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(len),
                      d.begin() + static_cast<std::ptrdiff_t>(i)))
        continue;
      if (len < b.size()) return true;  // the input ends inside this block
      reachable[i + len] = 1;
    }
  }
  return false;
}

}  // namespace

bool membership_prefix(const FamilySpec& fam, const DigitString& digits) {
  if (fam.kind == FamilyKind::CantorRestrict) {
    for (std::size_t n = 1; n <= digits.digits.size(); ++n)
      if (!symbol_ok(fam, n, digits.digits[n - 1])) return false;
    return true;
  }
  for (int d : digits.digits)
    if (d < 0 || d >= fam.s) return false;
  if (fam.kind == FamilyKind::MD) return md_prefix(digits.digits);
  return block_prefix(blocks_of_family(fam).blocks, digits.digits);
}

}  // namespace moran
