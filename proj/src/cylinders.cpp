#include "moran/cylinders.hpp"

#include <algorithm>
#include <functional>
#include <memory>

#include "moran/error.hpp"
#include "moran/ifs.hpp"

namespace moran {

std::string to_string(Orientation o) {
  switch (o) {
    case Orientation::LeftToRight: return "left-to-right";
    case Orientation::RightToLeft: return "right-to-left";
    case Orientation::Mixed: return "mixed";
    case Orientation::Overlap: return "overlap";
  }
  return "?";
}

namespace {

void require_lemma(const FamilySpec& fam) {
  if (!fam.has_cylinder_lemma())
    throw Unsupported("no cylinder lemma for " + fam.to_string());
}

int lemma_u(const FamilySpec& fam) { return fam.kind == FamilyKind::S ? 0 : fam.u; }

Rational spow(int s, long k) { return inv_pow(s, static_cast<unsigned long>(k)); }

struct Lemma {
  Rational inf, sup;
};

Lemma su_constants(int s, int u) {
  const Rational one_over = make_rational(1, s - 1);
  Lemma c;
  if (u <= 1) {
    c.inf = Rational(s - 1 - u) / (pow_int(Rational(s), s - 1) - 1) + u * one_over;
  } else {
    c.inf = one_over;
  }
  if (u == 0) {
    c.sup = one_over;
  } else if (u <= s - 2) {
    c.sup = 1 / (pow_int(Rational(s), u + 1) - 1) + u * one_over;
  } else {
    c.sup = 1 - 1 / (pow_int(Rational(s), s - 2) - 1);
  }
  return c;
}

Lemma nega_constants(int s) {
  const long s2 = static_cast<long>(s) * s;
  return {make_rational(-(s2 + 1), s2 * s - s), make_rational(2, s2 - 1)};
}

Lemma sminus_constants(int s) {
  const Rational ss = pow_int(Rational(s), s);
  const Rational ss1 = pow_int(Rational(s), s - 1);
  const long s2 = static_cast<long>(s) * s;
  return {(-ss1 + s - 1) / (ss - 1), Rational(-s2 + s + 1) / (ss - 1)};
}

Lemma whole_constants(const FamilySpec& fam) {
  switch (fam.kind) {
    case FamilyKind::S:
    case FamilyKind::Su: return su_constants(fam.s, lemma_u(fam));
    case FamilyKind::NegaSu: return nega_constants(fam.s);
    case FamilyKind::Sminus: return sminus_constants(fam.s);
    default: throw Unsupported("no cylinder lemma for " + fam.to_string());
  }
}

long digit_sum(const CylinderAddress& addr) {
  long k = 0;
  for (int c : addr.symbols) k += c;
  return k;
}

}  // namespace

IntervalR lemma_set_hull(const FamilySpec& fam) {
  require_lemma(fam);
  const Lemma c = whole_constants(fam);
  return {c.inf, c.sup};
}

IntervalR cylinder_interval(const FamilySpec& fam, const CylinderAddress& addr) {
  require_lemma(fam);
  validate(fam, addr);
  const int s = fam.s;
  const Lemma c = whole_constants(fam);
  const long K = digit_sum(addr);
  const Rational w = spow(s, K);

  switch (fam.kind) {
    case FamilyKind::S:
    case FamilyKind::Su: {
      const int u = lemma_u(fam);
      Rational tau = 0;
      long k = 0;
      for (int ck : addr.symbols) {
        k += ck;
        tau += Rational(ck - u) * spow(s, k);
      }
      // u * (s^-1 + ... + s^-K)
      tau += make_rational(u, s - 1) * (1 - w);
      return {tau + w * c.inf, tau + w * c.sup};
    }
    case FamilyKind::NegaSu: {
      Rational g = 0;
      long k = 0;
      for (int ck : addr.symbols) {
        k += ck;
        g += (k % 2 == 0 ? 1 : -1) * Rational(ck) * spow(s, k);
      }
      if (K % 2 == 0) return {g + w * c.inf, g + w * c.sup};
      return {g - w * c.sup, g - w * c.inf};
    }
    case FamilyKind::Sminus: {
      Rational sigma = 0;
      long k = 0;
      for (std::size_t i = 0; i < addr.rank(); ++i) {
        k += addr.symbols[i];
        sigma += ((i + 1) % 2 == 0 ? 1 : -1) * Rational(addr.symbols[i]) * spow(s, k);
      }
      if (addr.rank() % 2 == 0) return {sigma + w * c.inf, sigma + w * c.sup};
      return {sigma - w * c.sup, sigma - w * c.inf};
    }
    default: break;
  }
  throw Unsupported("no cylinder lemma for " + fam.to_string());
}

Rational cylinder_diameter(const FamilySpec& fam, const CylinderAddress& addr) {
  require_lemma(fam);
  validate(fam, addr);
  const int s = fam.s;
  const Rational w = spow(s, digit_sum(addr));
  if (fam.kind == FamilyKind::Sminus) {
    const Rational ss = pow_int(Rational(s), s);
    const Rational ss1 = pow_int(Rational(s), s - 1);
    return (ss1 - static_cast<long>(s) * s + 2) / ((ss - 1)) * w;
  }
  const Lemma c = whole_constants(fam);
  return w * (c.sup - c.inf);
}

namespace {

// Depth-first branch and bound for the minimum of sign * x over closure
// points below `addr`.
class ExtremaSearch {
 public:
  ExtremaSearch(const FamilySpec& fam, std::size_t target_rank, std::size_t cap)
      : fam_(fam), ifs_(fam), target_(target_rank), cap_(cap) {
    const std::size_t P = ifs_.phases();
    for (std::size_t r = 0; r < P; ++r) {
      closure_lo_.push_back(make_closure(r, true));
      closure_hi_.push_back(make_closure(r, false));
    }
  }

  Rational run(const CylinderAddress& addr, const Rational& scale, int sign) {
    sign_ = sign;
    have_best_ = false;
    descend(addr, scale);
    return best_;
  }

  std::uint64_t visited = 0;
  std::uint64_t leaves = 0;

 private:
  CylinderAddress make_closure(std::size_t rank_phase, bool low) const {
    CylinderAddress tail;
    for (std::size_t j = 0; j < ifs_.phases(); ++j) {
      const auto adm = fam_.admissible(rank_phase + j + 1);
      tail.symbols.push_back(low ? adm.front() : adm.back());
    }
    return tail;
  }

  Rational point(const CylinderAddress& a, bool low) {
    if (++visited > cap_) throw Blowup("oracle exceeded the cap of " + std::to_string(cap_) + " evaluations");
    const std::size_t ph = ifs_.phase_of(a.rank());
    return eval_family_point(fam_, a, low ? closure_lo_[ph] : closure_hi_[ph]);
  }

  void offer(const Rational& x) {
    const Rational v = sign_ * x;
    if (!have_best_ || v < best_) {
      best_ = v;
      have_best_ = true;
    }
  }

  void descend(const CylinderAddress& a, const Rational& scale) {
    if (a.rank() == target_) {
      ++leaves;
      offer(point(a, true));
      offer(point(a, false));
      return;
    }
    struct Child {
      CylinderAddress addr;
      Rational scale;
      Rational key;
    };
    std::vector<Child> kids;
    for (int sym : fam_.admissible(a.rank() + 1)) {
      Child ch{a.child(sym), scale * abs(ifs_.step(a.rank() + 1, sym).scale), 0};
      ch.key = sign_ * point(ch.addr, true);
      kids.push_back(std::move(ch));
    }
    std::sort(kids.begin(), kids.end(), [](const Child& x, const Child& y) { return x.key < y.key; });
    for (const auto& ch : kids) {
      // Every point below ch lies within scale of its reference point, since
      // tail sets fit in an interval of length 1.
      if (have_best_ && ch.key - 2 * ch.scale >= best_) continue;
      descend(ch.addr, ch.scale);
    }
  }

  const FamilySpec& fam_;
  FamilyIfs ifs_;
  std::size_t target_;
  std::size_t cap_;
  std::vector<CylinderAddress> closure_lo_, closure_hi_;
  int sign_ = 1;
  bool have_best_ = false;
  Rational best_;
};

}  // namespace

OracleResult tail_extrema_oracle(const FamilySpec& fam, const CylinderAddress& addr,
                                 std::size_t depth, std::size_t cap) {
  if (depth < 1) throw DomainError("oracle depth must be at least 1");
  if (fam.kind == FamilyKind::MD) throw Unsupported("oracle needs a finite branch set");
  validate(fam, addr);

  const FamilyIfs ifs(fam);
  const Rational scale = abs(ifs.address_map(addr).scale);
  Rational rho = 0;
  for (std::size_t p = 0; p < ifs.phases(); ++p)
    for (const auto& b : ifs.branches(p)) rho = std::max(rho, Rational(abs(b.map.scale)));

  ExtremaSearch search(fam, addr.rank() + depth, cap);
  OracleResult res;
  res.interval.lo = search.run(addr, scale, 1);
  res.interval.hi = -search.run(addr, scale, -1);
  res.visited = search.visited;
  res.leaves = search.leaves;

  const Rational base = fam.kind == FamilyKind::CantorRestrict ? Rational(2) : make_rational(fam.s, fam.s - 1);
  res.tail_bound = scale * pow_int(rho, static_cast<long>(depth)) * base;
  return res;
}

std::optional<int> next_sibling(const FamilySpec& fam, const CylinderAddress& addr, int p) {
  const auto adm = fam.admissible(addr.rank() + 1);
  auto it = std::find(adm.begin(), adm.end(), p);
  if (it == adm.end())
    throw FamilyConstraint("symbol " + std::to_string(p) + " is not admissible after " + to_string(addr));
  if (++it == adm.end()) return std::nullopt;
  return *it;
}

Orientation expected_orientation(const FamilySpec& fam, const CylinderAddress& addr, int p) {
  require_lemma(fam);
  switch (fam.kind) {
    case FamilyKind::S:
    case FamilyKind::Su:
      return p < lemma_u(fam) ? Orientation::LeftToRight : Orientation::RightToLeft;
    case FamilyKind::NegaSu:
      return (digit_sum(addr) + p) % 2 == 0 ? Orientation::RightToLeft : Orientation::LeftToRight;
    case FamilyKind::Sminus:
      return (addr.rank() + 1) % 2 == 1 ? Orientation::LeftToRight : Orientation::RightToLeft;
    default: break;
  }
  throw Unsupported("no cylinder lemma for " + fam.to_string());
}

std::optional<IntervalR> gap_interval(const FamilySpec& fam, const CylinderAddress& addr, int p) {
  require_lemma(fam);
  validate(fam, addr);
  const auto q = next_sibling(fam, addr, p);
  if (!q) throw DomainError("no admissible sibling after " + std::to_string(p) + " under " + to_string(addr));
  const IntervalR a = cylinder_interval(fam, addr.child(p));
  const IntervalR b = cylinder_interval(fam, addr.child(*q));
  IntervalR gap = expected_orientation(fam, addr, p) == Orientation::LeftToRight ? IntervalR{a.hi, b.lo}
                                                                                  : IntervalR{b.hi, a.lo};
  if (gap.lo < gap.hi) return gap;
  return std::nullopt;
}

Rational covering_sum(const FamilySpec& fam, std::size_t depth, std::size_t cap) {
  Rational total = 0;
  if (fam.has_cylinder_lemma()) {
    for (const auto& a : enumerate_addresses(fam, depth, cap)) total += cylinder_diameter(fam, a);
    return total;
  }
  const FamilyIfs ifs(fam);
  for (const auto& a : enumerate_addresses(fam, depth, cap)) total += ifs.cylinder_hull(a).length();
  return total;
}

namespace {

Orientation compare(const IntervalR& first, const IntervalR& second) {
  if (first.hi < second.lo) return Orientation::LeftToRight;
  if (second.hi < first.lo) return Orientation::RightToLeft;
  return Orientation::Overlap;
}

Orientation combine(const std::vector<Orientation>& parts) {
  if (parts.empty()) return Orientation::Mixed;
  for (auto o : parts)
    if (o == Orientation::Overlap) return Orientation::Overlap;
  if (std::all_of(parts.begin(), parts.end(), [&](Orientation o) { return o == parts.front(); }))
    return parts.front();
  return Orientation::Mixed;
}

}  // namespace

OrderingReport ordering_check(const FamilySpec& fam, const CylinderAddress& addr) {
  require_lemma(fam);
  validate(fam, addr);
  if (fam.degenerate()) throw DomainError(fam.to_string() + " is a single point; no sibling pairs");
  const FamilyIfs ifs(fam);
  OrderingReport rep;
  rep.address = addr;
  std::vector<Orientation> seen;
  const auto adm = fam.admissible(addr.rank() + 1);
  for (std::size_t i = 0; i + 1 < adm.size(); ++i) {
    SiblingCheck chk;
    chk.first = adm[i];
    chk.second = adm[i + 1];
    chk.first_interval = ifs.cylinder_hull(addr.child(chk.first));
    chk.second_interval = ifs.cylinder_hull(addr.child(chk.second));
    chk.expected = expected_orientation(fam, addr, chk.first);
    chk.actual = compare(chk.first_interval, chk.second_interval);
    chk.pass = chk.expected == chk.actual;
    rep.pass = rep.pass && chk.pass;
    seen.push_back(chk.actual);
    rep.pairs.push_back(std::move(chk));
  }
  rep.overall = combine(seen);
  return rep;
}

CylinderReport cylinder_report(const FamilySpec& fam, const CylinderAddress& addr, std::optional<int> child) {
  CylinderReport rep;
  rep.address = addr;
  rep.child = child;
  std::function<IntervalR(const CylinderAddress&)> interval_of;
  if (fam.has_cylinder_lemma()) {
    rep.from_lemma = true;
    interval_of = [&](const CylinderAddress& a) { return cylinder_interval(fam, a); };
  } else {
    auto ifs = std::make_shared<FamilyIfs>(fam);
    interval_of = [ifs](const CylinderAddress& a) { return ifs->cylinder_hull(a); };
  }
  rep.interval = interval_of(addr);
  rep.diameter = rep.interval.length();
  if (child && rep.diameter != 0) rep.child_ratio = interval_of(addr.child(*child)).length() / rep.diameter;

  if (fam.kind != FamilyKind::MD && !fam.degenerate()) {
    const auto adm = fam.admissible(addr.rank() + 1);
    std::vector<Orientation> seen;
    for (std::size_t i = 0; i + 1 < adm.size(); ++i)
      seen.push_back(compare(interval_of(addr.child(adm[i])), interval_of(addr.child(adm[i + 1]))));
    rep.orientation = combine(seen);
  }
  return rep;
}

}  // namespace moran
