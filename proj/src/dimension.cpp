#include "moran/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "moran/error.hpp"

namespace moran {

std::string to_string(Method m) {
  switch (m) {
    case Method::MoranRoot: return "moran-root";
    case Method::BlockRoot: return "block-root";
    case Method::ClosedLog: return "closed-log";
    case Method::ClosedCubic: return "closed-cubic";
    case Method::Periodic: return "periodic";
    case Method::LiminfEstimate: return "liminf-estimate";
    case Method::Boxcount: return "boxcount";
  }
  return "?";
}

namespace {

// Neumaier summation.
struct CompensatedSum {
  double sum = 0;
  double carry = 0;

  void add(double x) {
    const double t = sum + x;
    carry += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

constexpr double kTolT = 1e-13;
constexpr int kMaxIter = 200;

struct Root {
  double x = 0;
  double lo = 0;
  double hi = 0;
  int iterations = 0;
};

// Bisection for an increasing f with f(lo) < 0 <= f(hi), then a few Newton
// steps kept only while they stay in the bracket and shrink |f|.
Root bisect_increasing(const std::function<double(double)>& f, const std::function<double(double)>& df,
                       double lo, double hi, double tol) {
  Root r{0, lo, hi, 0};
  while (r.hi - r.lo > tol && r.iterations < kMaxIter) {
    const double mid = 0.5 * (r.lo + r.hi);
    if (f(mid) < 0) r.lo = mid;
    else r.hi = mid;
    ++r.iterations;
  }
  r.x = 0.5 * (r.lo + r.hi);
  for (int i = 0; i < 3 && df; ++i) {
    const double d = df(r.x);
    if (d == 0) break;
    const double next = r.x - f(r.x) / d;
    if (!(next >= r.lo && next <= r.hi) || std::fabs(f(next)) >= std::fabs(f(r.x))) break;
    r.x = next;
  }
  return r;
}

struct Poly {
  std::map<int, double> coef;  // k -> N_k
  std::optional<AnalyticTail> tail;

  double value(double t) const {
    double v = -1;
    for (const auto& [k, n] : coef) v += n * std::pow(t, k);
    if (tail) v += static_cast<double>(tail->count) * std::pow(t, tail->first) / (1 - std::pow(t, tail->step));
    return v;
  }
  double deriv(double t) const {
    double v = 0;
    for (const auto& [k, n] : coef) v += n * k * std::pow(t, k - 1);
    if (tail) {
      const double c = static_cast<double>(tail->count);
      const double a = tail->first, b = tail->step;
      const double den = 1 - std::pow(t, b);
      v += c * (a * std::pow(t, a - 1) * den + std::pow(t, a) * b * std::pow(t, b - 1)) / (den * den);
    }
    return v;
  }
};

DimensionResult solve_poly(int s, const Poly& p, Method method) {
  DimensionResult res;
  res.method = method;
  const double log_s = std::log(static_cast<double>(s));
  const double hi = p.tail ? 1 - 1e-15 : 1.0;
  const Root r = bisect_increasing([&](double t) { return p.value(t); },
                                   [&](double t) { return p.deriv(t); }, 0.0, hi, kTolT);
  res.alpha = -std::log(r.x) / log_s;
  res.bracket_lo = -std::log(r.hi) / log_s;
  res.bracket_hi = r.lo > 0 ? -std::log(r.lo) / log_s : INFINITY;
  res.iterations = r.iterations;
  res.residual = std::fabs(p.value(std::pow(static_cast<double>(s), -res.alpha)));
  return res;
}

Poly poly_of(const std::map<int, std::uint64_t>& hist) {
  Poly p;
  for (const auto& [k, n] : hist) p.coef[k] = static_cast<double>(n);
  return p;
}

DimensionResult degenerate_result(const std::string& why) {
  DimensionResult res;
  res.alpha = 0;
  res.method = Method::BlockRoot;
  res.degenerate = true;
  res.exact = Rational(0);
  res.note = why;
  return res;
}

}  // namespace

DimensionResult moran_dimension(const RatioList& ratios) {
  if (ratios.empty()) throw DomainError("empty ratio list");
  for (double r : ratios)
    if (!(r > 0 && r < 1)) throw DomainError("similarity ratio outside (0, 1)");
  auto f = [&](double a) {
    double v = -1;
    for (double r : ratios) v += std::pow(r, a);
    return v;
  };
  DimensionResult res;
  res.method = Method::MoranRoot;
  if (ratios.size() == 1) {
    res.exact = Rational(0);
    res.note = "single ratio";
    return res;
  }
  double hi = 1;
  while (f(hi) > 0) hi *= 2;
  // -f is increasing in alpha.
  const Root r = bisect_increasing(
      [&](double a) { return -f(a); },
      [&](double a) {
        double d = 0;
        for (double x : ratios) d -= std::pow(x, a) * std::log(x);
        return d;
      },
      0.0, hi, 1e-15);
  res.alpha = r.x;
  res.bracket_lo = r.lo;
  res.bracket_hi = r.hi;
  res.iterations = r.iterations;
  res.residual = std::fabs(f(r.x));
  return res;
}

DimensionResult block_dimension(int s, const BlockSet& blocks) {
  if (s < 2) throw DomainError("base must be at least 2");
  if (blocks.size() == 0 && !blocks.tail) throw DomainError("empty block set");
  if (blocks.degenerate()) return degenerate_result("single block; the set is one point");
  Poly p = poly_of(blocks.histogram);
  p.tail = blocks.tail;
  return solve_poly(s, p, Method::BlockRoot);
}

std::optional<std::map<int, std::uint64_t>> theorem_histogram(const FamilySpec& fam) {
  std::map<int, std::uint64_t> h;
  const int s = fam.s;
  switch (fam.kind) {
    case FamilyKind::S:
    case FamilyKind::Sminus:
      for (int p = 1; p < s; ++p) h[p] = 1;
      return h;
    case FamilyKind::Su:
    case FamilyKind::NegaSu:
      for (int p = 1; p < s; ++p)
        if (p != fam.u) h[p] = 1;
      return h;
    case FamilyKind::Tilde:
      // u..uc has length c; c = 1 gives the same block for every u.
      h[1] = 1;
      for (int c = 2; c < s; ++c) h[c] = static_cast<std::uint64_t>(s - 1);
      return h;
    case FamilyKind::Blocks: {
      for (const auto& b : fam.blocks) ++h[static_cast<int>(b.size())];
      return h;
    }
    default: return std::nullopt;
  }
}

double theorem_residual(const FamilySpec& fam, double alpha) {
  const auto h = theorem_histogram(fam);
  if (!h) throw Unsupported("no block equation for " + fam.to_string());
  return std::fabs(poly_of(*h).value(std::pow(static_cast<double>(fam.s), -alpha)));
}

DimensionResult family_dimension(const FamilySpec& fam) {
  switch (fam.kind) {
    case FamilyKind::MD: {
      auto res = md_closed_form(fam.s);
      res.note = "(s-1)t^3/(1-t^2) = 1";
      return res;
    }
    case FamilyKind::MDPeriodic: return periodic_dimension(fam.period);
    case FamilyKind::CantorRestrict: {
      const std::size_t n_max = 100000;
      const auto est = cantor_series_dim_estimate(fam.basis, fam.levels, n_max);
      DimensionResult res;
      res.method = Method::LiminfEstimate;
      res.alpha = est.proxy;
      res.iterations = static_cast<int>(n_max);
      res.bracket_lo = *std::min_element(est.running.end() - static_cast<long>(est.window), est.running.end());
      res.bracket_hi = *std::max_element(est.running.end() - static_cast<long>(est.window), est.running.end());
      res.note = "liminf proxy over the last " + std::to_string(est.window) + " of " + std::to_string(n_max) + " terms";
      if (!est.warning.empty()) res.note += "; " + est.warning;
      return res;
    }
    default: break;
  }
  if (fam.degenerate()) return degenerate_result(fam.to_string() + " has a single block; the set is one point");
  DimensionResult res = block_dimension(fam.s, blocks_of_family(fam));
  switch (fam.kind) {
    case FamilyKind::S:
    case FamilyKind::Sminus: res.note = "sum_{p=1}^{s-1} t^p = 1"; break;
    case FamilyKind::Su:
    case FamilyKind::NegaSu: res.note = "sum_{p in A_0, p != u} t^p = 1"; break;
    case FamilyKind::Tilde: res.note = "t + (s-1) sum_{c=2}^{s-1} t^c = 1"; break;
    default: res.note = "sum_k N_k t^k = 1"; break;
  }
  return res;
}

DimensionResult md_closed_form(int s) {
  if (s < 2) throw DomainError("MD needs s >= 2");
  const double a = (s - 1) / 2.0;
  const double b = std::sqrt((27.0 * (s - 1) * (s - 1) - 4) / 3.0) / 6.0;
  const double x = std::cbrt(a + b) + std::cbrt(a - b);
  const double log_s = std::log(static_cast<double>(s));

  DimensionResult res;
  res.method = Method::ClosedCubic;
  res.alpha = std::log(x) / log_s;

  Poly cubic;
  cubic.coef = {{2, 1.0}, {3, static_cast<double>(s - 1)}};
  const DimensionResult check = solve_poly(s, cubic, Method::BlockRoot);
  res.cross_check = check.alpha;
  // The closed form can land a rounding error outside the bisection bracket.
  res.bracket_lo = std::min(check.bracket_lo, res.alpha);
  res.bracket_hi = std::max(check.bracket_hi, res.alpha);
  res.iterations = check.iterations;
  res.residual = std::fabs(cubic.value(std::pow(static_cast<double>(s), -res.alpha)));
  return res;
}

DimensionResult periodic_dimension(const std::vector<int>& m) {
  if (m.empty()) throw DomainError("empty period");
  long total = 0;
  for (int v : m) {
    if (v < 1 || v % 2 == 0) throw DomainError("period entries must be odd and positive");
    total += v;
  }
  DimensionResult res;
  res.method = Method::Periodic;
  res.exact = make_rational(static_cast<long>(m.size()), total);
  res.alpha = to_double(*res.exact);
  res.bracket_lo = res.bracket_hi = res.alpha;
  res.note = "t / (m_1 + ... + m_t)";
  return res;
}

DimensionResult lambda_dimension(double lam, long l, std::optional<int> s) {
  if (!(lam > 0 && lam < 1)) throw DomainError("lambda must lie in (0, 1)");
  if (l < 1) throw DomainError("l must be at least 1");
  DimensionResult res;
  res.method = Method::ClosedLog;
  res.alpha = std::log(static_cast<double>(l)) / -std::log(lam);
  res.bracket_lo = res.bracket_hi = res.alpha;
  std::ostringstream note;
  note << "log l / -log lambda";
  if (s) {
    if (std::fabs(lam - 1.0 / *s) <= 1e-15) note << "; lambda = 1/s gives alpha = log_s l";
    const bool hyp = (*s - 1) < (l - 1) * (l - 1);
    note << "; hypothesis s-1 < (l-1)^2 " << (hyp ? "holds" : "fails");
  }
  res.note = note.str();
  return res;
}

CantorEstimate cantor_series_dim_estimate(const CantorBasis& basis, const std::vector<std::vector<int>>& levels,
                                          std::size_t n_max) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  if (levels.empty()) throw DomainError("no digit sets given");
  for (const auto& lv : levels)
    if (lv.empty()) throw DomainError("empty digit set");

  CantorEstimate est;
  est.running.reserve(n_max);
  // Compensated sums: plain accumulation of 10^5 logs drifts by ~1e-12.
  CompensatedSum num, den;
  double last_log_d = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto& lv = levels[(n - 1) % levels.size()];
    const double log_d = basis.log_at(n);
    if (log_d < std::log(2.0) - 1e-12) throw DomainError("basis term below 2");
    const int top = *std::max_element(lv.begin(), lv.end());
    const int bottom = *std::min_element(lv.begin(), lv.end());
    if (bottom < 0 || (log_d < 60 && Integer(top) >= basis.at(n)))
      throw DomainError("digit outside {0, ..., d_" + std::to_string(n) + " - 1}");
    num.add(std::log(static_cast<double>(lv.size())));
    den.add(log_d);
    last_log_d = log_d;
    est.running.push_back(num.value() / den.value());
  }
  est.window = std::min(n_max, std::max<std::size_t>(100, n_max / 10));
  est.proxy = *std::min_element(est.running.end() - static_cast<long>(est.window), est.running.end());
  est.side_ratio = last_log_d / den.value();
  if (est.side_ratio > 0.05) {
    std::ostringstream w;
    w << "log d_n / log(d_1...d_n) = " << est.side_ratio << " at n = " << n_max << " is not yet small";
    est.warning = w.str();
  }
  return est;
}

}  // namespace moran
