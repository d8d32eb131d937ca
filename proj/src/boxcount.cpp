#include "moran/boxcount.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "moran/error.hpp"
#include "moran/ifs.hpp"

namespace moran {

namespace {

class Cover {
 public:
  Cover(const FamilySpec& fam, const Rational& eps, std::size_t cap)
      : ifs_(fam), eps_(eps), cap_(cap), inf_(ifs_.hull(0).lo) {}

  ScaleCount run() {
    walk(AffineMap{}, 0);
    std::sort(cells_.begin(), cells_.end());
    std::uint64_t count = 0;
    Integer end = 0;  // one past the last counted cell
    bool started = false;
    for (const auto& [a, b] : cells_) {
      const Integer from = started ? Integer(a > end ? a : end) : a;
      if (b + 1 > from) {
        const Integer add = b + 1 - from;
        count += add.get_ui();
      }
      if (!started || b + 1 > end) end = b + 1;
      started = true;
    }
    return {eps_.get_d(), count, max_rank_};
  }

 private:
  void tick() {
    if (++visited_ > cap_) throw Blowup("box cover exceeded the cap of " + std::to_string(cap_) + " cylinders");
  }

  void emit(const IntervalR& iv) {
    const Integer first = floor((iv.lo - inf_) / eps_);
    Integer last = ceil((iv.hi - inf_) / eps_) - 1;
    if (last < first) last = first;
    cells_.emplace_back(first, last);
  }

  void walk(const AffineMap& g, std::size_t rank) {
    tick();
    max_rank_ = std::max(max_rank_, rank);
    const IntervalR iv = g.image(ifs_.hull(ifs_.phase_of(rank)));
    if (iv.length() <= eps_) {
      emit(iv);
      return;
    }
    if (!ifs_.infinite()) {
      for (const auto& b : ifs_.branches(ifs_.phase_of(rank))) walk(g.compose(b.map), rank + 1);
      return;
    }
    // MD: branches (m, a) for odd m >= 3 and a != 0. All branches with m >= M
    // map into g([-(s-1) s^-M, 0]).
    const int s = ifs_.family().s;
    const Rational r = abs(g.scale);
    for (int m = 3;; m += 2) {
      const Rational lump = Rational(s - 1) * inv_pow(s, static_cast<unsigned long>(m));
      if (r * lump <= eps_) {
        tick();
        emit(g.image(IntervalR{-lump, 0}));
        return;
      }
      for (int a = 1; a < s; ++a) walk(g.compose(ifs_.md_map(m, a)), rank + 1);
    }
  }

  FamilyIfs ifs_;
  Rational eps_;
  std::size_t cap_;
  Rational inf_;
  std::size_t visited_ = 0;
  std::size_t max_rank_ = 0;
  std::vector<std::pair<Integer, Integer>> cells_;
};

}  // namespace

ScaleCount boxes_at_scale(const FamilySpec& fam, const Rational& eps, std::size_t cap) {
  if (eps <= 0) throw DomainError("box width must be positive");
  return Cover(fam, eps, cap).run();
}

ScaleCount boxes_at_scale(const FamilySpec& fam, double eps, std::size_t cap) {
  if (!(eps > 0) || !std::isfinite(eps)) throw DomainError("box width must be positive");
  return boxes_at_scale(fam, Rational(eps), cap);
}

int mesh_base(const FamilySpec& fam) {
  if (fam.kind == FamilyKind::CantorRestrict) return static_cast<int>(fam.basis.at(1).get_si());
  return fam.s;
}

std::vector<ScaleCount> count_scales(const FamilySpec& fam, int n_lo, int n_hi, std::size_t cap) {
  if (n_lo < 0 || n_hi < n_lo) throw DomainError("bad scale range");
  const int base = mesh_base(fam);
  std::vector<ScaleCount> out;
  for (int n = n_lo; n <= n_hi; ++n)
    out.push_back(boxes_at_scale(fam, inv_pow(base, static_cast<unsigned long>(n)), cap));
  return out;
}

FitResult fit_dimension(const std::vector<ScaleCount>& points) {
  if (points.size() < 3) throw DomainError("need at least three scales");
  double emin = points.front().epsilon, emax = emin;
  for (const auto& p : points) {
    if (!(p.epsilon > 0) || p.count < 1) throw DomainError("scale with nonpositive width or empty count");
    emin = std::min(emin, p.epsilon);
    emax = std::max(emax, p.epsilon);
  }
  if (emax / emin < 100) throw DomainError("scales must span at least two decades");

  const double n = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& p : points) {
    sx += -std::log(p.epsilon);
    sy += std::log(static_cast<double>(p.count));
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : points) {
    const double dx = -std::log(p.epsilon) - mx, dy = std::log(static_cast<double>(p.count)) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  fit.scales = points;
  return fit;
}

}  // namespace moran
