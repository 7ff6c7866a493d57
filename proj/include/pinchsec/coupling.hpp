#pragma once

// Coupled-mode power splitting between two pinched antennas on one waveguide.
// PA-1 (nearest the feed) radiates eps1 = F sin^2(kappa l1); PA-2 radiates
// what is left times its own coupling, eps2 = (1 - eps1) F sin^2(kappa l2).

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>

#include "pinchsec/config.hpp"

namespace pinchsec {

struct CouplingLengths {
  double l1 = 0.0;  // m
  double l2 = 0.0;  // m
};

struct PowerCoefficients {
  double eps1 = 0.0;
  double eps2 = 0.0;
};

// Lengths must lie in (0, pi / (2 kappa)]; the closed upper end is admitted.
inline bool lengths_admissible(const CouplingLengths& lengths, double kappa) {
  const double upper = std::numbers::pi / (2.0 * kappa);
  auto in_range = [&](double l) { return l > 0.0 && l <= upper; };
  return in_range(lengths.l1) && in_range(lengths.l2);
}

inline void require_admissible(const CouplingLengths& lengths, double kappa) {
  if (!lengths_admissible(lengths, kappa)) {
    throw std::invalid_argument(
        "coupling lengths must lie in (0, pi / (2 kappa)]");
  }
}

inline double radiated_fraction(double length, double kappa) {
  const double s = std::sin(kappa * length);
  return s * s;
}

inline PowerCoefficients coefficients(const CouplingLengths& lengths,
                                      double coupling_efficiency,
                                      double kappa) {
  const double eps1 = coupling_efficiency * radiated_fraction(lengths.l1, kappa);
  const double eps2 =
      (1.0 - eps1) * coupling_efficiency * radiated_fraction(lengths.l2, kappa);
  return {eps1, eps2};
}

inline PowerCoefficients coefficients(const CouplingLengths& lengths,
                                      const PhysicalConstants& constants) {
  return coefficients(lengths, constants.coupling_efficiency,
                      constants.coupling_coefficient_per_m);
}

// Length whose radiated fraction sin^2(kappa l) equals r, r in [0, 1].
inline double length_for_fraction(double r, double kappa) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw std::domain_error("length_for_fraction: fraction outside [0, 1]");
  }
  return std::asin(std::sqrt(r)) / kappa;
}

// ----------------------------------------------------------------------------
// Power models
// ----------------------------------------------------------------------------

// Both antennas radiate the same fraction eps <= 0.5 of the fed power.
struct EqualPower {
  double eps = 0.5;
};

// Both antennas share one coupling length, so PA-2 radiates geometrically
// less.
struct ProportionalPower {
  double shared_length = 0.0;
};

struct FlexiblePower {
  CouplingLengths lengths;
};

using PowerModel = std::variant<EqualPower, ProportionalPower, FlexiblePower>;

inline CouplingLengths lengths_for_model(const PowerModel& model,
                                         double coupling_efficiency,
                                         double kappa) {
  struct Visitor {
    double F;
    double kappa;

    CouplingLengths operator()(const EqualPower& m) const {
      if (!(m.eps > 0.0 && m.eps <= 0.5)) {
        throw std::invalid_argument("equal power model needs eps in (0, 0.5]");
      }
      const double r1 = m.eps / F;
      const double r2 = m.eps / (F * (1.0 - m.eps));
      if (r1 > 1.0 || r2 > 1.0) {
        throw std::invalid_argument(
            "equal power split unreachable with this coupling efficiency");
      }
      return {length_for_fraction(r1, kappa), length_for_fraction(r2, kappa)};
    }
    CouplingLengths operator()(const ProportionalPower& m) const {
      CouplingLengths lengths{m.shared_length, m.shared_length};
      require_admissible(lengths, kappa);
      return lengths;
    }
    CouplingLengths operator()(const FlexiblePower& m) const {
      return m.lengths;
    }
  };
  return std::visit(Visitor{coupling_efficiency, kappa}, model);
}

inline CouplingLengths lengths_for_model(const PowerModel& model,
                                         const PhysicalConstants& constants) {
  return lengths_for_model(model, constants.coupling_efficiency,
                           constants.coupling_coefficient_per_m);
}

}  // namespace pinchsec
