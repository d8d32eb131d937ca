#include "moran/ifs.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "moran/error.hpp"

namespace moran {

IntervalR AffineMap::image(const IntervalR& in) const {
  const Rational a = apply(in.lo), b = apply(in.hi);
  return a <= b ? IntervalR{a, b} : IntervalR{b, a};
}

IntervalR attractor_hull(const std::vector<AffineMap>& maps) {
  if (maps.empty()) throw DomainError("attractor of an empty map list");
  std::vector<Rational> fixed;
  fixed.reserve(maps.size());
  for (const auto& f : maps) fixed.push_back(f.fixed_point());

  Rational lo = fixed.front(), hi = fixed.front();
  auto consider = [&](const Rational& x) {
    if (x < lo) lo = x;
    if (x > hi) hi = x;
  };
  for (const auto& x : fixed) consider(x);
  for (const auto& f : maps) {
    if (f.scale > 0) continue;  // increasing maps add nothing beyond fixed points
    for (std::size_t j = 0; j < maps.size(); ++j) {
      consider(f.apply(fixed[j]));
      if (maps[j].scale < 0) consider(f.compose(maps[j]).fixed_point());
    }
  }
  return {lo, hi};
}

namespace {

std::vector<int> block_digits(int c, int fill) {
  std::vector<int> b(static_cast<std::size_t>(c - 1), fill);
  b.push_back(c);
  return b;
}

AffineMap digit_block_map(const std::vector<int>& digits, long base) {
  // x = sum_j d_j base^-j + base^-len * y
  AffineMap m{0, 1};
  const Rational r = make_rational(1, base);
  Rational pw = 1;
  for (int d : digits) {
    pw *= r;
    m.offset += d * pw;
  }
  m.scale = pw;
  return m;
}

// Two-component hull (inf, sup) of each phase for maps sharing one scale per
// phase: v_p = A_p v_{p+1} + b_p with A_p diagonal (scale > 0) or swapping
// (scale < 0). Solved exactly around the cycle.
std::vector<IntervalR> cyclic_hulls(const std::vector<std::vector<Branch>>& branches) {
  const std::size_t P = branches.size();
  struct Step {
    Rational r;
    Rational min_off, max_off;
  };
  std::vector<Step> steps;
  for (const auto& phase : branches) {
    Step st{phase.front().map.scale, phase.front().map.offset, phase.front().map.offset};
    for (const auto& b : phase) {
      if (b.map.scale != st.r) throw Unsupported("phase maps with differing scales");
      if (b.map.offset < st.min_off) st.min_off = b.map.offset;
      if (b.map.offset > st.max_off) st.max_off = b.map.offset;
    }
    steps.push_back(st);
  }
  using Mat = std::array<std::array<Rational, 2>, 2>;
  using Vec = std::array<Rational, 2>;
  auto a_of = [](const Rational& r) -> Mat {
    if (r > 0) return Mat{{{r, 0}, {0, r}}};
    return Mat{{{0, r}, {r, 0}}};
  };
  auto mul = [](const Mat& x, const Mat& y) {
    Mat z;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return z;
  };
  auto apply = [](const Mat& x, const Vec& v) {
    return Vec{x[0][0] * v[0] + x[0][1] * v[1], x[1][0] * v[0] + x[1][1] * v[1]};
  };
  // v_0 = A v_0 + c with A = A_0 ... A_{P-1}, c = sum_k A_0..A_{k-1} b_k.
  Mat prefix{{{1, 0}, {0, 1}}};
  Vec c{0, 0};
  for (std::size_t k = 0; k < P; ++k) {
    const Vec b{steps[k].min_off, steps[k].max_off};
    const Vec pb = apply(prefix, b);
    c[0] += pb[0];
    c[1] += pb[1];
    prefix = mul(prefix, a_of(steps[k].r));
  }
  const Rational m00 = 1 - prefix[0][0], m01 = -prefix[0][1];
  const Rational m10 = -prefix[1][0], m11 = 1 - prefix[1][1];
  const Rational det = m00 * m11 - m01 * m10;
  Vec v{(c[0] * m11 - m01 * c[1]) / det, (m00 * c[1] - m10 * c[0]) / det};

  std::vector<IntervalR> hulls(P);
  hulls[0] = {v[0], v[1]};
  Vec next = v;  // phase P == phase 0
  for (std::size_t k = P; k-- > 1;) {
    const Vec b{steps[k].min_off, steps[k].max_off};
    const Vec av = apply(a_of(steps[k].r), next);
    next = {av[0] + b[0], av[1] + b[1]};
    hulls[k] = {next[0], next[1]};
  }
  return hulls;
}

}  // namespace

FamilyIfs::FamilyIfs(const FamilySpec& fam) : fam_(fam) {
  const int s = fam.s;
  switch (fam.kind) {
    case FamilyKind::S:
    case FamilyKind::Su:
    case FamilyKind::NegaSu: {
      const long base = fam.kind == FamilyKind::NegaSu ? -s : s;
      std::vector<Branch> bs;
      for (int c : fam.admissible(1)) bs.push_back({c, digit_block_map(block_digits(c, fam.u), base)});
      branches_.push_back(std::move(bs));
      break;
    }
    case FamilyKind::Sminus: {
      std::vector<Branch> bs;
      for (int c : fam.admissible(1)) {
        const Rational w = inv_pow(s, static_cast<unsigned long>(c));
        bs.push_back({c, AffineMap{-c * w, -w}});
      }
      branches_.push_back(std::move(bs));
      break;
    }
    case FamilyKind::Tilde:
    case FamilyKind::Blocks: {
      const BlockSet set = blocks_of_family(fam);
      std::vector<Branch> bs;
      for (std::size_t i = 0; i < set.blocks.size(); ++i)
        bs.push_back({static_cast<int>(i), digit_block_map(set.blocks[i], s)});
      branches_.push_back(std::move(bs));
      break;
    }
    case FamilyKind::MD:
      branches_.emplace_back();
      // Every map sends the hull into [-(s-1)/s^3, 0); the supremum 0 is the
      // limit of ever longer zero runs.
      hulls_.push_back({make_rational(-(s - 1), static_cast<long>(s) * s * s), Rational(0)});
      lookup_.emplace_back();
      return;
    case FamilyKind::MDPeriodic: {
      phases_ = fam.period.size();
      for (std::size_t p = 0; p < phases_; ++p) {
        const Rational w = inv_pow(s, static_cast<unsigned long>(fam.period[p]));
        std::vector<Branch> bs;
        for (int e = 0; e < s; ++e) bs.push_back({e, AffineMap{-e * w, -w}});
        branches_.push_back(std::move(bs));
      }
      break;
    }
    case FamilyKind::CantorRestrict: {
      const auto bp = fam.basis.period();
      if (!bp) throw Unsupported("cylinder geometry needs a periodic Cantor basis");
      phases_ = std::lcm(*bp, fam.levels.size());
      for (std::size_t p = 0; p < phases_; ++p) {
        Rational inv(Integer(1), fam.basis.at(p + 1));
        inv.canonicalize();
        std::vector<Branch> bs;
        for (int e : fam.levels[p % fam.levels.size()]) bs.push_back({e, AffineMap{e * inv, inv}});
        branches_.push_back(std::move(bs));
      }
      break;
    }
  }

  for (const auto& phase : branches_) {
    int max_symbol = 0;
    for (const auto& b : phase) max_symbol = std::max(max_symbol, b.symbol);
    std::vector<int> lk(static_cast<std::size_t>(max_symbol) + 1, -1);
    for (std::size_t i = 0; i < phase.size(); ++i) lk[static_cast<std::size_t>(phase[i].symbol)] = static_cast<int>(i);
    lookup_.push_back(std::move(lk));
  }

  if (phases_ == 1) {
    std::vector<AffineMap> maps;
    for (const auto& b : branches_[0]) maps.push_back(b.map);
    hulls_.push_back(attractor_hull(maps));
  } else {
    hulls_ = cyclic_hulls(branches_);
  }
}

AffineMap FamilyIfs::md_map(int gap, int digit) const {
  const Rational w = inv_pow(-fam_.s, static_cast<unsigned long>(gap));
  return {digit * w, w};
}

AffineMap FamilyIfs::step(std::size_t level, int symbol, int gap) const {
  if (infinite()) return md_map(gap, symbol);
  const std::size_t phase = (level - 1) % phases_;
  const auto& lk = lookup_[phase];
  if (symbol < 0 || static_cast<std::size_t>(symbol) >= lk.size() || lk[static_cast<std::size_t>(symbol)] < 0)
    throw FamilyConstraint("symbol " + std::to_string(symbol) + " is not admissible at level " +
                           std::to_string(level));
  return branches_[phase][static_cast<std::size_t>(lk[static_cast<std::size_t>(symbol)])].map;
}

AffineMap FamilyIfs::address_map(const CylinderAddress& addr) const {
  validate(fam_, addr);
  AffineMap m;
  for (std::size_t i = 0; i < addr.rank(); ++i)
    m = m.compose(step(i + 1, addr.symbols[i], infinite() ? addr.gaps[i] : 0));
  return m;
}

IntervalR FamilyIfs::cylinder_hull(const CylinderAddress& addr) const {
  return address_map(addr).image(hull(phase_of(addr.rank())));
}

}  // namespace moran
