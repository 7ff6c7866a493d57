#pragma once

// Minimum-SOP coupling lengths.
//
// Work in radiated fractions r = sin^2(kappa l1) and t = sin^2(kappa l2).
// P1 depends on r only and P2 grows with t, so away from the zero-outage
// region t = 1 (l2 = pi / (2 kappa)) is always weakly optimal. The closed-form
// candidates are:
//
//   Case 1  both factors reach 1: an interval of r (and of t given r) with
//           SOP = 0.
//   Case 2  only P1 reaches 1: smallest r with P1 = 1, since P2 shrinks as r
//           grows and leaves less power for PA-2.
//   Case 3  only P2 reaches 1: r at the top of the annulus window, t in an
//           interval.
//   Case 4  neither reaches 1: maximize g(r) = (P1 P2)^2 on the annulus
//           window by bisection on dg/dr, seeded at the approximate
//           stationary point (B F rho - d^2) / (2 B F^2 rho).
//
// solve_p1 evaluates every applicable candidate through the closed form and
// also runs a coarse grid over the (l1, l2) box, so a poor approximation in
// one case cannot silently return a bad point.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "pinchsec/config.hpp"
#include "pinchsec/coupling.hpp"
#include "pinchsec/secrecy.hpp"

namespace pinchsec {

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  double midpoint() const { return 0.5 * (lower + upper); }
  bool contains(double x) const { return x > lower && x < upper; }
};

// A coupling length that is either a single optimum or an open interval of
// equally good values; `value` is the representative (midpoint for
// intervals).
struct LengthChoice {
  double value = 0.0;
  std::optional<Interval> interval;
};

enum class CaseTag { kCase1, kCase2, kCase3, kCase4, kGridFallback, kInfeasible };

inline std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::kCase1: return "Case1";
    case CaseTag::kCase2: return "Case2";
    case CaseTag::kCase3: return "Case3";
    case CaseTag::kCase4: return "Case4";
    case CaseTag::kGridFallback: return "GridFallback";
    case CaseTag::kInfeasible: return "Infeasible";
  }
  return "?";
}

struct P1Constraints {
  bool alpha_ratio_ok = false;      // alpha1 / alpha2 > gamma1
  bool omega_min_positive = false;  // min(omega3, omega4) > 0
  bool b_exceeds_a = false;         // B > A
  bool lengths_in_range = false;    // 0 < l1, l2 <= pi / (2 kappa)

  bool all() const {
    return alpha_ratio_ok && omega_min_positive && b_exceeds_a &&
           lengths_in_range;
  }
};

struct OptimizerResult {
  CaseTag case_tag = CaseTag::kInfeasible;
  LengthChoice l1;
  LengthChoice l2;
  double min_sop = 1.0;
  SopBreakdown certificate;  // closed form at (l1.value, l2.value)
  P1Constraints constraints;

  CouplingLengths lengths() const { return {l1.value, l2.value}; }
};

namespace detail {

// Scalars shared by every case formula.
struct P1Terms {
  double a = 0.0;        // eta alpha2 / gamma2
  double b = 0.0;        // eta (alpha1 / gamma1 - alpha2)
  double m = 0.0;        // min(a, b)
  double F = 1.0;
  double kappa = 1.0;
  double rho = 0.0;      // linear rho_t
  double d2 = 0.0;       // waveguide height squared
  double quarter1 = 0.0; // side1^2 / 4
  double quarter2 = 0.0; // side2^2 / 4

  explicit P1Terms(const SystemConfig& config) {
    const auto k = threshold_slopes(config);
    a = k.a;
    b = k.b;
    m = std::min(a, b);
    F = config.constants.coupling_efficiency;
    kappa = config.constants.coupling_coefficient_per_m;
    rho = config.link.rho_t_linear();
    const double d = config.geometry.waveguide_height_m;
    d2 = d * d;
    const double s1 = config.geometry.side1();
    const double s2 = config.geometry.side2();
    quarter1 = s1 * s1 / 4.0;
    quarter2 = s2 * s2 / 4.0;
  }

  double max_length() const { return std::numbers::pi / (2.0 * kappa); }

  // Smallest r with omega2 >= D^2/4, i.e. P1 can be 1.
  double r_full_u1() const { return (d2 + quarter1) / (b * F * rho); }
  // Largest r with omega1 <= 0 (eavesdropper shut out everywhere).
  double r_no_eavesdrop() const { return d2 / (a * F * rho); }
  // Smallest t with min(omega3, omega4) >= D^2/4 given r.
  double t_full_u2(double r) const {
    return (d2 + quarter2) / (m * F * rho * (1.0 - F * r));
  }
  // r at which min(omega3, omega4) hits 0 with t = 1.
  double r_u2_cutoff() const { return (m * F * rho - d2) / (m * F * F * rho); }
};

inline double length_of(double fraction, double kappa) {
  return length_for_fraction(std::clamp(fraction, 0.0, 1.0), kappa);
}

}  // namespace detail

// ----------------------------------------------------------------------------
// Constraints
// ----------------------------------------------------------------------------

// Length-free check; omega_min_positive asks whether any admissible lengths
// make min(omega3, omega4) > 0 (best case: l1 -> 0, l2 = pi / (2 kappa)).
inline P1Constraints check_constraints(const SystemConfig& config) {
  const detail::P1Terms t(config);
  P1Constraints c;
  const auto& al = config.allocation;
  c.alpha_ratio_ok = al.alpha1 / al.alpha2 > config.link.gamma1_linear();
  c.b_exceeds_a = t.b > t.a;
  c.omega_min_positive = t.m > 0.0 && t.m * t.F * t.rho - t.d2 > 0.0;
  c.lengths_in_range = true;
  return c;
}

inline P1Constraints check_constraints(const SystemConfig& config,
                                       const CouplingLengths& lengths) {
  P1Constraints c = check_constraints(config);
  c.lengths_in_range =
      lengths_admissible(lengths, config.constants.coupling_coefficient_per_m);
  const auto w = omegas(config, coefficients(lengths, config.constants));
  c.omega_min_positive = w.u2_limit() > 0.0;
  return c;
}

// ----------------------------------------------------------------------------
// Case 1
// ----------------------------------------------------------------------------

struct Case1Region {
  Interval fraction;  // r = sin^2(kappa l1)
  Interval l1;
};

inline std::optional<Case1Region> case1_region(const SystemConfig& config) {
  const detail::P1Terms t(config);
  if (!(t.b > 0.0) || !(t.m > 0.0)) return std::nullopt;
  const double lower = t.r_full_u1();
  const double upper =
      std::min({(1.0 - (t.d2 + t.quarter2) / (t.m * t.F * t.rho)) / t.F, 1.0,
                t.r_no_eavesdrop()});
  if (lower >= upper || lower > 1.0) return std::nullopt;
  return Case1Region{{lower, upper},
                     {detail::length_of(lower, t.kappa),
                      detail::length_of(upper, t.kappa)}};
}

// l2 interval making P2 = 1 once l1 is fixed; empty if unreachable.
inline std::optional<Interval> case1_l2_interval(const SystemConfig& config,
                                                 double l1) {
  const detail::P1Terms t(config);
  if (!(t.m > 0.0)) return std::nullopt;
  const double r = radiated_fraction(l1, t.kappa);
  if (!(1.0 - t.F * r > 0.0)) return std::nullopt;
  const double lower = t.t_full_u2(r);
  if (lower >= 1.0) return std::nullopt;
  return Interval{detail::length_of(lower, t.kappa), t.max_length()};
}

// ----------------------------------------------------------------------------
// Case 2
// ----------------------------------------------------------------------------

// Returns nullopt when P1 cannot reach 1 (the required fraction exceeds 1 or
// the eavesdropper is already inside its cell at that fraction).
inline std::optional<CouplingLengths> case2_optimum(const SystemConfig& config) {
  const detail::P1Terms t(config);
  if (!(t.b > 0.0)) return std::nullopt;
  const double r = t.r_full_u1();
  if (r > 1.0 || r > t.r_no_eavesdrop()) return std::nullopt;
  CouplingLengths out{detail::length_of(r, t.kappa), t.max_length()};

  // Round-off in sin(asin(.)) can leave omega2 a hair below D^2/4; step up
  // to the first representable length with P1 = 1.
  const double side = config.geometry.side1();
  for (int i = 0; i < 64; ++i) {
    const auto w = omegas(config, coefficients(out, config.constants));
    if (prob_omega1(w.omega1, w.omega2, side).value == 1.0) break;
    out.l1 = std::nextafter(out.l1, std::numeric_limits<double>::infinity());
  }
  return out;
}

// ----------------------------------------------------------------------------
// Case 3
// ----------------------------------------------------------------------------

struct Case3Result {
  double l1 = 0.0;
  Interval l2;
};

// Applicable only when P1 cannot reach 1 but P2 can.
inline std::optional<Case3Result> case3_optimum(const SystemConfig& config) {
  const detail::P1Terms t(config);
  if (!(t.b > 0.0) || !(t.m > 0.0)) return std::nullopt;
  const double r = t.r_full_u1();
  if (r > 1.0) return std::nullopt;
  if (r <= t.r_no_eavesdrop()) return std::nullopt;  // P1 reaches 1: Case 1/2
  if (!(1.0 - t.F * r > 0.0)) return std::nullopt;
  const double t_lower = t.t_full_u2(r);
  if (t_lower > 1.0) return std::nullopt;
  return Case3Result{detail::length_of(r, t.kappa),
                     {detail::length_of(t_lower, t.kappa), t.max_length()}};
}

// ----------------------------------------------------------------------------
// Case 4
// ----------------------------------------------------------------------------

struct Case4Result {
  CouplingLengths lengths;
  double r_seed = 0.0;  // approximate stationary point
  double r_opt = 0.0;
  Interval r_window;
};

namespace detail {

// g(r) = (P1 P2)^2 up to a positive constant on the annulus window, with
// l2 = pi / (2 kappa). The P2 factor saturates at D^2/4.
struct Case4Objective {
  const P1Terms& t;

  double u(double r) const {
    const double sb = std::sqrt(std::max(t.b * t.F * t.rho * r - t.d2, 0.0));
    const double sa = std::sqrt(std::max(t.a * t.F * t.rho * r - t.d2, 0.0));
    return (sb - sa) * (sb - sa);
  }
  double v(double r) const {
    return std::min(t.m * t.F * t.rho * (1.0 - t.F * r) - t.d2, t.quarter2);
  }
  double g(double r) const { return u(r) * std::max(v(r), 0.0); }

  double dg(double r) const {
    const double bf = t.b * t.F * t.rho;
    const double af = t.a * t.F * t.rho;
    const double sb = std::sqrt(bf * r - t.d2);
    const double sa = std::sqrt(af * r - t.d2);
    const double du = (sb - sa) * (bf / sb - af / sa);
    const double raw_v = t.m * t.F * t.rho * (1.0 - t.F * r) - t.d2;
    const double dv = raw_v < t.quarter2 ? -t.m * t.F * t.F * t.rho : 0.0;
    return du * v(r) + u(r) * dv;
  }
};

}  // namespace detail

// Approximate stationary point of g, valid when omega1 and omega2 are both
// well above zero: (B F rho - d^2) / (2 B F^2 rho).
inline double case4_seed_fraction(const SystemConfig& config) {
  const detail::P1Terms t(config);
  return (t.b * t.F * t.rho - t.d2) / (2.0 * t.b * t.F * t.F * t.rho);
}

inline constexpr double kBisectionTolerance = 1e-9;
inline constexpr int kBisectionMaxIterations = 200;

inline std::optional<Case4Result> case4_optimum(const SystemConfig& config) {
  const detail::P1Terms t(config);
  if (!(t.b > t.a) || !(t.a > 0.0)) return std::nullopt;
  const double lo = t.r_no_eavesdrop();
  const double hi = std::min({t.r_full_u1(), t.r_u2_cutoff(), 1.0});
  if (!(lo < hi)) return std::nullopt;

  const detail::Case4Objective obj{t};
  const double seed = case4_seed_fraction(config);

  // dg/dr is -inf at the left end (omega1 = 0), so g is not unimodal in
  // general. Scan for +/- sign changes, bisect each, and keep the best
  // local maximum or endpoint.
  constexpr int kScan = 256;
  std::vector<double> nodes;
  nodes.reserve(kScan + 2);
  for (int i = 1; i < kScan; ++i) {
    nodes.push_back(lo + (hi - lo) * static_cast<double>(i) / kScan);
  }
  if (seed > lo && seed < hi) nodes.push_back(seed);
  std::sort(nodes.begin(), nodes.end());

  double best_r = hi;
  double best_g = obj.g(hi);
  auto consider = [&](double r) {
    const double g = obj.g(r);
    if (g > best_g) {
      best_g = g;
      best_r = r;
    }
  };
  // Just inside the left end; g(lo) itself may sit on the omega1 = 0 kink.
  consider(lo + (hi - lo) * 1e-12);
  for (const double r : nodes) consider(r);

  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    double left = nodes[i];
    double right = nodes[i + 1];
    if (!(obj.dg(left) > 0.0 && obj.dg(right) < 0.0)) continue;
    for (int it = 0;
         it < kBisectionMaxIterations && right - left > kBisectionTolerance;
         ++it) {
      const double mid = 0.5 * (left + right);
      (obj.dg(mid) > 0.0 ? left : right) = mid;
    }
    consider(0.5 * (left + right));
  }

  Case4Result out;
  out.r_seed = seed;
  out.r_opt = best_r;
  out.r_window = {lo, hi};
  out.lengths = {detail::length_of(best_r, t.kappa), t.max_length()};
  return out;
}

// ----------------------------------------------------------------------------
// Grid search and dispatch
// ----------------------------------------------------------------------------

struct GridMinimum {
  CouplingLengths lengths;
  double sop = 1.0;
};

// Exhaustive search over l_k = k L / n, k = 1..n, on both axes.
inline GridMinimum grid_search(const SystemConfig& config, int n1 = 400,
                               int n2 = 400) {
  const double max_len = config.constants.max_coupling_length_m();
  GridMinimum best{{max_len, max_len}, 2.0};
  for (int i = 1; i <= n1; ++i) {
    const double l1 = max_len * i / n1;
    for (int j = 1; j <= n2; ++j) {
      const double l2 = max_len * j / n2;
      const double sop = sop_closed_form(config, {l1, l2}).sop;
      if (sop < best.sop) best = {{l1, l2}, sop};
    }
  }
  return best;
}

inline constexpr double kGridImprovement = 1e-6;

inline OptimizerResult solve_p1(const SystemConfig& config) {
  const double max_len = config.constants.max_coupling_length_m();
  auto finish = [&](CaseTag tag, LengthChoice l1, LengthChoice l2) {
    OptimizerResult r;
    r.case_tag = tag;
    r.l1 = l1;
    r.l2 = l2;
    r.certificate = sop_closed_form(config, r.lengths());
    r.min_sop = r.certificate.sop;
    r.constraints = check_constraints(config, r.lengths());
    return r;
  };

  if (!check_constraints(config).alpha_ratio_ok) {
    auto r = finish(CaseTag::kInfeasible, {max_len / 2.0, {}}, {max_len, {}});
    r.min_sop = 1.0;
    return r;
  }

  if (const auto region = case1_region(config)) {
    const double l1 = region->l1.midpoint();
    if (const auto l2 = case1_l2_interval(config, l1)) {
      return finish(CaseTag::kCase1, {l1, region->l1},
                    {l2->midpoint(), *l2});
    }
  }

  struct Candidate {
    CaseTag tag;
    LengthChoice l1;
    LengthChoice l2;
    double sop;
  };
  std::vector<Candidate> candidates;
  auto add = [&](CaseTag tag, LengthChoice l1, LengthChoice l2) {
    candidates.push_back(
        {tag, l1, l2, sop_closed_form(config, {l1.value, l2.value}).sop});
  };
  if (const auto c2 = case2_optimum(config)) {
    add(CaseTag::kCase2, {c2->l1, {}}, {c2->l2, {}});
  }
  if (const auto c3 = case3_optimum(config)) {
    add(CaseTag::kCase3, {c3->l1, {}}, {c3->l2.midpoint(), c3->l2});
  }
  if (const auto c4 = case4_optimum(config)) {
    add(CaseTag::kCase4, {c4->lengths.l1, {}}, {c4->lengths.l2, {}});
  }

  const auto grid = grid_search(config);
  const Candidate* best = nullptr;
  for (const auto& c : candidates) {
    if (best == nullptr || c.sop < best->sop) best = &c;
  }
  if (best == nullptr || grid.sop < best->sop - kGridImprovement) {
    const CaseTag tag =
        grid.sop < 1.0 ? CaseTag::kGridFallback : CaseTag::kInfeasible;
    return finish(tag, {grid.lengths.l1, {}}, {grid.lengths.l2, {}});
  }
  return finish(best->tag, best->l1, best->l2);
}

}  // namespace pinchsec
