// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "moran/boxcount.hpp"
#include "moran/cylinders.hpp"
#include "moran/dimension.hpp"
#include "moran/families.hpp"
#include "moran/ifs.hpp"
#include "moran/verify.hpp"

using namespace moran;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;  // 0 means no runtime bound
  std::function<void(Outcome&)> body;
};

std::string fmt(double x, int digits = 13) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void cantor_dimension(Outcome& o) {
  const DimensionResult r = family_dimension(parse_family("Blocks(s=3,B=[0;2])"));
  const double want = std::log(2.0) / std::log(3.0);
  o.require(std::fabs(r.alpha - want) <= 1e-10, "alpha " + fmt(r.alpha));
  o.detail << "alpha=" << fmt(r.alpha) << " |err|=" << fmt(std::fabs(r.alpha - want), 3);
}

void md_closed_form_check(Outcome& o) {
  double worst = 0;
  for (int s = 2; s <= 16; ++s) {
    const DimensionResult r = md_closed_form(s);
    // Bisection on (s-1) t^3 + t^2 - 1, kept separate from the library solver.
    double lo = 0, hi = 1;
    for (int i = 0; i < 200; ++i) {
      const double mid = (lo + hi) / 2;
      ((s - 1) * mid * mid * mid + mid * mid - 1 < 0 ? lo : hi) = mid;
    }
    const double oracle = -std::log((lo + hi) / 2) / std::log(double(s));
    worst = std::max(worst, std::fabs(r.alpha - oracle));
    o.require(std::fabs(r.alpha - oracle) <= 1e-10, "s=" + std::to_string(s));
  }
  // Plastic number: the real root of x^3 = x + 1, via Cardano.
  const double plastic = std::cbrt(0.5 + std::sqrt(69.0) / 18) + std::cbrt(0.5 - std::sqrt(69.0) / 18);
  const double want = std::log2(plastic);
  const double got = md_closed_form(2).alpha;
  o.require(std::fabs(got - want) <= 1e-6, "s=2 vs log2(plastic)");
  o.detail << "max|closed-bisect|=" << fmt(worst, 3) << " s=2 alpha=" << fmt(got) << " log2(plastic)=" << fmt(want)
           << " (0.405722 differs from log2(plastic) by " << fmt(std::fabs(0.405722 - want), 3) << ")";
}

void cross_theorem(Outcome& o) {
  double worst_diff = 0, worst_res = 0;
  for (int s = 3; s <= 8; ++s)
    for (int u = 0; u < s; ++u) {
      const FamilySpec a = u == 0 ? FamilySpec::s_family(s) : FamilySpec::su(s, u);
      const FamilySpec b = FamilySpec::nega_su(s, u);
      const DimensionResult ra = family_dimension(a), rb = family_dimension(b);
      const std::string tag = "s=" + std::to_string(s) + " u=" + std::to_string(u);
      worst_diff = std::max(worst_diff, std::fabs(ra.alpha - rb.alpha));
      o.require(std::fabs(ra.alpha - rb.alpha) <= 1e-12, tag + " equality");
      if (ra.degenerate || rb.degenerate) {
        o.require(ra.degenerate && rb.degenerate && ra.alpha == 0 && rb.alpha == 0, tag + " degenerate");
        continue;
      }
      const double res = std::max(theorem_residual(a, ra.alpha), theorem_residual(b, rb.alpha));
      worst_res = std::max(worst_res, res);
      o.require(res <= 1e-10, tag + " residual");
    }
  const DimensionResult d = family_dimension(FamilySpec::su(3, 1));
  o.require(d.degenerate && d.alpha == 0, "Su(3,1) not flagged");
  o.detail << "max|diff|=" << fmt(worst_diff, 3) << " max residual=" << fmt(worst_res, 3)
           << " Su(3,1) degenerate alpha=" << d.alpha;
}

void tilde_count(Outcome& o) {
  for (int s = 4; s <= 12; ++s) {
    const std::uint64_t n = blocks_of_family(FamilySpec::tilde(s)).size();
    o.require(n == std::uint64_t(s * s - 3 * s + 3), "s=" + std::to_string(s) + " count " + std::to_string(n));
  }
  o.detail << "s=4..12 counts 7.." << blocks_of_family(FamilySpec::tilde(12)).size();
}

void lemma_suite(Outcome& o) {
  std::vector<FamilySpec> fams;
  for (int s = 3; s <= 5; ++s) fams.push_back(FamilySpec::s_family(s));
  for (int s = 4; s <= 5; ++s)
    for (int u = 1; u < s; ++u) fams.push_back(FamilySpec::su(s, u));
  for (int s = 3; s <= 4; ++s) fams.push_back(FamilySpec::nega_su(s, 0));
  for (int s = 3; s <= 4; ++s) fams.push_back(FamilySpec::sminus(s));
  std::size_t checks = 0;
  for (const auto& fam : fams) {
    const VerifyReport rep = verify_family(fam, 4, 10);
    for (const auto& p : rep.properties) {
      checks += p.checked;
      const bool needed = p.name == "interval-vs-oracle" || p.name == "ratio" || p.name == "gaps" ||
                          p.name == "ordering" || p.name == "nesting";
      o.require(p.pass && !(needed && p.skipped), fam.to_string() + " " + p.name);
    }
  }
  o.detail << fams.size() << " families, " << checks << " checks";
}

void sminus_consistency(Outcome& o) {
  for (int s = 3; s <= 6; ++s) {
    const FamilySpec fam = FamilySpec::sminus(s);
    const IntervalR hull = lemma_set_hull(fam);
    const Rational want = (pow_int(s, s - 1) - s * s + 2) / (pow_int(s, s) - 1);
    o.require(hull.length() == want, "s=" + std::to_string(s));
    o.require(cylinder_diameter(fam, CylinderAddress{}) == want, "diameter s=" + std::to_string(s));
    o.detail << "s=" << s << ":" << to_string(want) << " ";
  }
}

void covering(Outcome& o) {
  const FamilySpec fam = FamilySpec::s_family(3);
  const Rational d = cylinder_diameter(fam, CylinderAddress{});
  for (int n = 0; n <= 10; ++n) {
    const Rational got = covering_sum(fam, n);
    o.require(got == d * pow_int(make_rational(4, 9), n), "n=" + std::to_string(n));
  }
  o.detail << "d(S)=" << to_string(d) << " depth 10 sum=" << to_string(covering_sum(fam, 10));
}

void periodic(Outcome& o) {
  o.require(*periodic_dimension({3}).exact == make_rational(1, 3), "(3)");
  o.require(*periodic_dimension({3, 5}).exact == make_rational(1, 4), "(3,5)");
  double worst = 0;
  for (int s : {2, 3, 5})
    for (const std::vector<int>& m : {std::vector<int>{3}, {3, 5}, {1, 3}, {5, 7, 3}}) {
      long total = 0;
      for (int v : m) total += v;
      const double t = double(m.size());
      // One period: s^t pieces, each scaled by s^-(m_1 + ... + m_t).
      const double graph = std::log(std::pow(double(s), t)) / std::log(std::pow(double(s), double(total)));
      const RatioList ratios(std::size_t(std::pow(s, t)), std::pow(double(s), -double(total)));
      const double moran = moran_dimension(ratios).alpha;
      const double want = periodic_dimension(m).alpha;
      worst = std::max({worst, std::fabs(graph - want), std::fabs(moran - want)});
      o.require(std::fabs(graph - want) <= 1e-12 && std::fabs(moran - want) <= 1e-12, "s=" + std::to_string(s));
    }
  o.detail << "1/3 and 1/4 exact; max|moran-t/sum m|=" << fmt(worst, 3);
}

void cantor_series(Outcome& o) {
  const std::size_t n_max = 100000;
  const auto t0 = std::chrono::steady_clock::now();
  const CantorEstimate c = cantor_series_dim_estimate(CantorBasis::constant(3), {{0, 2}}, n_max);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double want = std::log(2.0) / std::log(3.0);
  o.require(std::fabs(c.proxy - want) <= 1e-12, "constant basis proxy " + fmt(c.proxy));
  o.require(secs < 1.0, "constant basis took " + fmt(secs, 3) + " s");
  const CantorEstimate g = cantor_series_dim_estimate(CantorBasis::geometric(2), {{0, 1}}, n_max);
  const double bound = 2.0 / (n_max * 0.9 + 1) + 1e-9;
  o.require(g.proxy <= bound, "geometric proxy " + fmt(g.proxy));
  o.detail << "constant proxy=" << fmt(c.proxy) << " (" << fmt(secs, 3) << " s), geometric proxy=" << fmt(g.proxy, 6)
           << " <= " << fmt(bound, 6);
}

void boxcount(Outcome& o) {
  for (const char* text : {"Blocks(s=3,B=[0;2])", "S(s=3)", "Sminus(s=3)"}) {
    const FamilySpec fam = parse_family(text);
    const FitResult f = fit_dimension(count_scales(fam, 4, 10));
    const double alpha = family_dimension(fam).alpha;
    o.require(std::fabs(f.slope - alpha) <= 0.02, std::string(text));
    o.detail << text << " slope=" << fmt(f.slope, 6) << " alpha=" << fmt(alpha, 6) << "; ";
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Cantor set dimension", 0.1, cantor_dimension},
      {2, "MD closed form vs cubic bisection", 0.1, md_closed_form_check},
      {3, "cross-theorem equality", 0, cross_theorem},
      {4, "tilde block count", 0, tilde_count},
      {5, "cylinder lemma suite", 60, lemma_suite},
      {6, "Sminus constants vs diameter", 0, sminus_consistency},
      {7, "covering sums", 0, covering},
      {8, "periodic gap formula", 0, periodic},
      {9, "Cantor-series estimate", 0, cantor_series},
      {10, "box-count cross-check", 30, boxcount},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0) o.require(secs < c.budget_s, "runtime " + fmt(secs, 3) + " s over " + fmt(c.budget_s, 3) + " s");
    if (!o.pass) ++failed;
    std::printf("%s %2d %s [%.3f s] %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs, o.detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
