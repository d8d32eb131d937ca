#include "moran/verify.hpp"

#include <functional>

#include "moran/cylinders.hpp"
#include "moran/error.hpp"
#include "moran/ifs.hpp"

namespace moran {

namespace {

struct Tracker {
  PropertyResult res;

  explicit Tracker(std::string name) { res.name = std::move(name); }

  // Records one check; keeps the first failure.
  void check(bool ok, const CylinderAddress& addr, const std::string& what, const Rational& left,
             const Rational& right) {
    ++res.checked;
    if (ok || !res.pass) {
      if (!ok) res.pass = false;
      return;
    }
    res.pass = false;
    res.counterexample = Counterexample{addr, what, left, right};
  }

  PropertyResult skip(const std::string& why) {
    res.skipped = true;
    res.note = why;
    return res;
  }
};

}  // namespace

VerifyReport verify_family(const FamilySpec& fam, std::size_t depth, std::size_t oracle_depth, std::size_t cap) {
  if (fam.kind == FamilyKind::MD) throw Unsupported("verify needs a finite branch set; MD has infinitely many");
  if (oracle_depth < 1) throw DomainError("oracle depth must be at least 1");

  VerifyReport rep;
  rep.family = fam;
  rep.depth = depth;
  rep.oracle_depth = oracle_depth;

  const FamilyIfs ifs(fam);
  const bool lemma = fam.has_cylinder_lemma();
  std::function<IntervalR(const CylinderAddress&)> interval_of = [&](const CylinderAddress& a) {
    return lemma ? cylinder_interval(fam, a) : ifs.cylinder_hull(a);
  };
  std::function<Rational(const CylinderAddress&)> diameter_of = [&](const CylinderAddress& a) {
    return lemma ? cylinder_diameter(fam, a) : ifs.cylinder_hull(a).length();
  };

  std::vector<std::vector<CylinderAddress>> by_rank;
  for (std::size_t n = 0; n <= depth; ++n) by_rank.push_back(enumerate_addresses(fam, n, cap));

  if (lemma) {
    Tracker t("set-hull");
    const IntervalR a = lemma_set_hull(fam), b = ifs.hull(0);
    t.check(a.lo == b.lo, {}, "lemma inf vs attractor inf", a.lo, b.lo);
    t.check(a.hi == b.hi, {}, "lemma sup vs attractor sup", a.hi, b.hi);
    rep.properties.push_back(t.res);
  }

  {
    Tracker t("interval-vs-oracle");
    for (const auto& level : by_rank)
      for (const auto& a : level) {
        const IntervalR iv = interval_of(a);
        const OracleResult o = tail_extrema_oracle(fam, a, oracle_depth, cap);
        t.check(iv.lo <= o.interval.lo, a, "oracle min below interval inf", o.interval.lo, iv.lo);
        t.check(o.interval.hi <= iv.hi, a, "oracle max above interval sup", o.interval.hi, iv.hi);
        const Rational d = hausdorff_distance(iv, o.interval);
        if (d > rep.max_oracle_distance) rep.max_oracle_distance = d;
        t.check(d <= o.tail_bound, a, "distance to oracle exceeds tail bound", d, o.tail_bound);
      }
    rep.properties.push_back(t.res);
  }

  {
    Tracker t("diameter");
    for (const auto& level : by_rank)
      for (const auto& a : level) {
        const IntervalR iv = interval_of(a);
        const Rational d = diameter_of(a);
        t.check(d == iv.length(), a, "diameter vs hi - lo", d, iv.length());
      }
    rep.properties.push_back(t.res);
  }

  {
    Tracker t("nesting");
    for (std::size_t n = 0; n < depth; ++n)
      for (const auto& a : by_rank[n]) {
        const IntervalR parent = interval_of(a);
        for (int c : fam.admissible(n + 1)) {
          const IntervalR child = interval_of(a.child(c));
          t.check(parent.lo <= child.lo, a.child(c), "child inf below parent inf", child.lo, parent.lo);
          t.check(child.hi <= parent.hi, a.child(c), "child sup above parent sup", child.hi, parent.hi);
        }
      }
    rep.properties.push_back(t.res);
  }

  if (fam.run_length()) {
    Tracker t("ratio");
    for (std::size_t n = 0; n < depth; ++n)
      for (const auto& a : by_rank[n]) {
        const Rational parent = diameter_of(a);
        for (int c : fam.admissible(n + 1)) {
          const Rational child = diameter_of(a.child(c));
          const Rational want = inv_pow(fam.s, static_cast<unsigned long>(c));
          t.check(child == want * parent, a.child(c), "child diameter vs s^-c times parent", child, want * parent);
        }
      }
    rep.properties.push_back(t.res);
  } else {
    rep.properties.push_back(Tracker("ratio").skip("ratio law is stated for the run-length families"));
  }

  if (!lemma) {
    rep.properties.push_back(Tracker("gaps").skip("no cylinder lemma"));
    rep.properties.push_back(Tracker("ordering").skip("no cylinder lemma"));
  } else if (fam.degenerate()) {
    rep.properties.push_back(Tracker("gaps").skip("single point; no sibling pairs"));
    rep.properties.push_back(Tracker("ordering").skip("single point; no sibling pairs"));
  } else {
    Tracker g("gaps"), o("ordering");
    for (std::size_t n = 0; n < depth; ++n)
      for (const auto& a : by_rank[n]) {
        const auto adm = fam.admissible(n + 1);
        for (std::size_t i = 0; i + 1 < adm.size(); ++i) {
          const auto gap = gap_interval(fam, a, adm[i]);
          const IntervalR p = interval_of(a.child(adm[i])), q = interval_of(a.child(adm[i + 1]));
          if (gap) {
            g.check(true, a.child(adm[i]), "", 0, 0);
          } else if (expected_orientation(fam, a, adm[i]) == Orientation::LeftToRight) {
            g.check(false, a.child(adm[i]), "sibling sup not below next sibling inf", p.hi, q.lo);
          } else {
            g.check(false, a.child(adm[i]), "next sibling sup not below sibling inf", q.hi, p.lo);
          }
        }
        const OrderingReport rep_o = ordering_check(fam, a);
        for (const auto& pair : rep_o.pairs) {
          if (pair.pass) {
            o.check(true, a, "", 0, 0);
          } else if (pair.expected == Orientation::LeftToRight) {
            o.check(false, a.child(pair.first), "expected left-to-right: sup of first vs inf of second",
                    pair.first_interval.hi, pair.second_interval.lo);
          } else {
            o.check(false, a.child(pair.first), "expected right-to-left: sup of second vs inf of first",
                    pair.second_interval.hi, pair.first_interval.lo);
          }
        }
      }
    rep.properties.push_back(g.res);
    rep.properties.push_back(o.res);
  }

  {
    // Each rank-n cylinder is the hull of its tail phase scaled by the product
    // of branch scales, so the sum factors level by level.
    Tracker t("covering");
    Rational factor = 1;
    Rational prev = -1;
    for (std::size_t n = 0; n <= depth; ++n) {
      const Rational got = covering_sum(fam, n, cap);
      const Rational want =
          factor * (n == 0 ? diameter_of({}) : (lemma ? diameter_of({}) : ifs.hull(ifs.phase_of(n)).length()));
      const CylinderAddress tag;
      t.check(got == want, tag, "covering sum at depth " + std::to_string(n) + " vs product formula", got, want);
      if (n > 0) t.check(got < prev || got == 0, tag, "covering sum not decreasing", got, prev);
      prev = got;
      Rational rho = 0;
      for (const auto& b : ifs.branches(ifs.phase_of(n))) rho += abs(b.map.scale);
      factor *= rho;
    }
    rep.properties.push_back(t.res);
  }

  if (fam.kind == FamilyKind::Sminus) {
    Tracker t("sminus-constants");
    const IntervalR h = lemma_set_hull(fam);
    const int s = fam.s;
    const Rational want = (pow_int(Rational(s), s - 1) - static_cast<long>(s) * s + 2) / (pow_int(Rational(s), s) - 1);
    t.check(h.length() == want, {}, "sup - inf vs diameter formula", h.length(), want);
    rep.properties.push_back(t.res);
  }

  for (const auto& p : rep.properties) rep.pass = rep.pass && p.pass;
  return rep;
}

}  // namespace moran
