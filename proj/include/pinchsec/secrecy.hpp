#pragma once

// Closed-form secrecy outage probability.
//
// With the serving-antenna-only gain eta / (y^2 + d^2), each SINR threshold
// test becomes a bound on a user's squared lateral offset y^2. The no-outage
// event is the rectangle
//
//   omega1 < y1^2 <= omega2  and  y2^2 <= min(omega3, omega4)
//
// and with y_i uniform on [-D/2, D/2] the two factors are independent, so
// SOP = 1 - P1 * P2 where P1 and P2 are simple piecewise functions of the
// omegas.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>

#include "pinchsec/config.hpp"
#include "pinchsec/coupling.hpp"

namespace pinchsec {

// Slopes of the squared-distance thresholds in the per-antenna SNR:
//   a = eta alpha2 / gamma2               (eavesdrop / U2-own threshold)
//   b = eta (alpha1 / gamma1 - alpha2)    (s1 decoding threshold)
// b <= 0 means s1 is never decodable.
struct ThresholdSlopes {
  double a = 0.0;
  double b = 0.0;
};

inline ThresholdSlopes threshold_slopes(const SystemConfig& config) {
  const double eta = free_space_factor(config.constants);
  const auto& al = config.allocation;
  const double g1 = config.link.gamma1_linear();
  const double g2 = config.link.gamma2_linear();
  return {eta * al.alpha2 / g2, eta * (al.alpha1 / g1 - al.alpha2)};
}

// Squared-distance thresholds (m^2). Signed: branch selection depends on the
// sign, so they are never clamped here.
struct OmegaSet {
  double omega1 = 0.0;  // U1 eavesdrops s2 iff y1^2 <= omega1
  double omega2 = 0.0;  // U1 decodes s1 iff y1^2 <= omega2
  double omega3 = 0.0;  // U2 decodes s1 iff y2^2 <= omega3
  double omega4 = 0.0;  // U2 decodes s2 iff y2^2 <= omega4

  double u2_limit() const { return std::min(omega3, omega4); }
};

inline OmegaSet omegas(const SystemConfig& config,
                       const PowerCoefficients& eps) {
  const auto k = threshold_slopes(config);
  const double rho = config.link.rho_t_linear();
  const double rho1 = rho * eps.eps1;
  const double rho2 = rho * eps.eps2;
  const double d2 =
      config.geometry.waveguide_height_m * config.geometry.waveguide_height_m;
  return {k.a * rho1 - d2, k.b * rho1 - d2, k.b * rho2 - d2, k.a * rho2 - d2};
}

// ----------------------------------------------------------------------------
// Piecewise factors
// ----------------------------------------------------------------------------

enum class Omega1Branch {
  kFull,     // omega1 <= 0, omega2 >= D^2/4
  kInner,    // omega1 <= 0, 0 < omega2 < D^2/4
  kAnnulus,  // 0 < omega1 < omega2 < D^2/4
  kOuter,    // 0 < omega1 < D^2/4 <= omega2
  kNone,     // otherwise
};

enum class Omega2Branch {
  kFull,     // min(omega3, omega4) >= D^2/4
  kPartial,  // 0 < min(omega3, omega4) < D^2/4
  kNone,     // min(omega3, omega4) <= 0
};

inline std::string_view to_string(Omega1Branch b) {
  switch (b) {
    case Omega1Branch::kFull: return "full";
    case Omega1Branch::kInner: return "inner";
    case Omega1Branch::kAnnulus: return "annulus";
    case Omega1Branch::kOuter: return "outer";
    case Omega1Branch::kNone: return "none";
  }
  return "?";
}

inline std::string_view to_string(Omega2Branch b) {
  switch (b) {
    case Omega2Branch::kFull: return "full";
    case Omega2Branch::kPartial: return "partial";
    case Omega2Branch::kNone: return "none";
  }
  return "?";
}

template <typename Branch>
struct BranchProbability {
  double value = 0.0;
  Branch branch{};
};

// P[omega1 < y^2 <= omega2] for y uniform on [-side/2, side/2]. Boundaries
// are closed toward the higher-probability branch.
inline BranchProbability<Omega1Branch> prob_omega1(double omega1,
                                                   double omega2,
                                                   double side) {
  const double quarter = side * side / 4.0;
  if (omega1 <= 0.0) {
    if (omega2 >= quarter) return {1.0, Omega1Branch::kFull};
    if (omega2 > 0.0) {
      return {2.0 * std::sqrt(omega2) / side, Omega1Branch::kInner};
    }
    return {0.0, Omega1Branch::kNone};
  }
  if (omega1 < quarter && omega1 < omega2) {
    if (omega2 >= quarter) {
      return {2.0 * (side / 2.0 - std::sqrt(omega1)) / side,
              Omega1Branch::kOuter};
    }
    return {2.0 * (std::sqrt(omega2) - std::sqrt(omega1)) / side,
            Omega1Branch::kAnnulus};
  }
  return {0.0, Omega1Branch::kNone};
}

// P[y^2 <= min(omega3, omega4)] for y uniform on [-side/2, side/2].
inline BranchProbability<Omega2Branch> prob_omega2(double omega3,
                                                   double omega4,
                                                   double side) {
  const double limit = std::min(omega3, omega4);
  const double quarter = side * side / 4.0;
  if (limit >= quarter) return {1.0, Omega2Branch::kFull};
  if (limit > 0.0) {
    return {2.0 * std::sqrt(limit) / side, Omega2Branch::kPartial};
  }
  return {0.0, Omega2Branch::kNone};
}

// ----------------------------------------------------------------------------
// Secrecy outage probability
// ----------------------------------------------------------------------------

struct SopBreakdown {
  PowerCoefficients eps;
  OmegaSet omega_set;
  double prob_omega1 = 0.0;
  double prob_omega2 = 0.0;
  double sop = 1.0;
  Omega1Branch branch1 = Omega1Branch::kNone;
  Omega2Branch branch2 = Omega2Branch::kNone;
};

inline SopBreakdown sop_from_coefficients(const SystemConfig& config,
                                          const PowerCoefficients& eps) {
  SopBreakdown out;
  out.eps = eps;
  out.omega_set = omegas(config, eps);
  const auto p1 = prob_omega1(out.omega_set.omega1, out.omega_set.omega2,
                              config.geometry.side1());
  const auto p2 = prob_omega2(out.omega_set.omega3, out.omega_set.omega4,
                              config.geometry.side2());
  out.prob_omega1 = p1.value;
  out.prob_omega2 = p2.value;
  out.branch1 = p1.branch;
  out.branch2 = p2.branch;
  out.sop = 1.0 - p1.value * p2.value;
  return out;
}

inline SopBreakdown sop_closed_form(const SystemConfig& config,
                                    const CouplingLengths& lengths) {
  return sop_from_coefficients(config,
                               coefficients(lengths, config.constants));
}

// ----------------------------------------------------------------------------
// High-SNR behaviour
// ----------------------------------------------------------------------------

// The SOP tends to 1 as rho_t grows. It actually reaches 1 at a finite
// rho_t: once omega1 >= D^2/4 the eavesdropper decodes s2 anywhere in its
// cell. `onset_*` is that threshold, absent when PA-1 radiates nothing (the
// SOP is then 1 at every rho_t).
struct AsymptoticSop {
  double limit = 1.0;
  std::optional<double> onset_rho_t_linear;
  std::optional<double> onset_rho_t_db;  // on the rho_t_db axis (offset removed)
};

inline AsymptoticSop sop_asymptotic(const SystemConfig& config,
                                    const PowerCoefficients& eps) {
  AsymptoticSop out;
  const auto k = threshold_slopes(config);
  if (!(k.a > 0.0) || !(eps.eps1 > 0.0)) return out;
  const double d = config.geometry.waveguide_height_m;
  const double side = config.geometry.side1();
  const double rho = (d * d + side * side / 4.0) / (k.a * eps.eps1);
  out.onset_rho_t_linear = rho;
  out.onset_rho_t_db = linear_to_db(rho) - config.link.noise_floor_offset_db;
  return out;
}

inline AsymptoticSop sop_asymptotic(const SystemConfig& config,
                                    const CouplingLengths& lengths) {
  return sop_asymptotic(config, coefficients(lengths, config.constants));
}

// ----------------------------------------------------------------------------
// Security distances
// ----------------------------------------------------------------------------

struct SecurityDistances {
  double max_eavesdrop_m = 0.0;     // sqrt(omega1)
  double max_reliable_u1_m = 0.0;   // sqrt(omega2)
  double max_reliable_u2_m = 0.0;   // sqrt(min(omega3, omega4))
};

inline SecurityDistances security_distances(const OmegaSet& w) {
  auto root = [](double v) { return std::sqrt(std::max(v, 0.0)); };
  return {root(w.omega1), root(w.omega2), root(w.u2_limit())};
}

}  // namespace pinchsec
