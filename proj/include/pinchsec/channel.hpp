#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "pinchsec/config.hpp"

namespace pinchsec {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline double squared_distance(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

inline double distance(const Point3& a, const Point3& b) {
  return std::sqrt(squared_distance(a, b));
}

// Feed point and the two pinched antennas, all on the waveguide (y = 0,
// z = d).
struct PaLayout {
  Point3 pa1;
  Point3 pa2;
  Point3 bs;
};

// A pinched antenna sits on the waveguide directly above its user's x.
inline Point3 place_pa_for_user(const Point3& user, double height) {
  return {user.x, 0.0, height};
}

inline PaLayout make_layout(const Point3& user1, const Point3& user2,
                            double height, double bs_x = 0.0) {
  return {place_pa_for_user(user1, height), place_pa_for_user(user2, height),
          {bs_x, 0.0, height}};
}

// Large-scale gain eta / |u - pa|^2 of the serving antenna only.
inline double gain_simplified(const Point3& user, const Point3& pa,
                              double eta) {
  const double d2 = squared_distance(user, pa);
  if (!(d2 > 0.0)) {
    throw std::domain_error("gain_simplified: user and antenna coincide");
  }
  return eta / d2;
}

namespace detail {

inline double wrap_phase(double phase) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(phase, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  return wrapped;
}

}  // namespace detail

// In-guide phase 2 pi / lambda_g * |bs - pa|, reduced to [0, 2 pi).
inline double guide_phase(const Point3& bs, const Point3& pa,
                          const PhysicalConstants& constants) {
  return detail::wrap_phase(2.0 * std::numbers::pi /
                            constants.guided_wavelength_m() * distance(bs, pa));
}

// Full two-antenna channel vector seen by `user`. Entry n has magnitude
// sqrt(eta) / |u - pa_n| and phase -(2 pi / lambda) |u - pa_n| - theta_n.
// Only used to measure how far the serving-antenna-only gain is from the full
// model; the secrecy pipeline consumes gain_simplified.
inline std::array<std::complex<double>, 2> channel_vector(
    const Point3& user, const PaLayout& layout,
    const PhysicalConstants& constants) {
  const double eta = free_space_factor(constants);
  const double lambda = constants.wavelength_m();
  std::array<std::complex<double>, 2> h;
  const Point3* pas[2] = {&layout.pa1, &layout.pa2};
  for (int n = 0; n < 2; ++n) {
    const double dist = distance(user, *pas[n]);
    if (!(dist > 0.0)) {
      throw std::domain_error("channel_vector: user and antenna coincide");
    }
    const double free_space =
        detail::wrap_phase(2.0 * std::numbers::pi / lambda * dist);
    const double phase =
        -detail::wrap_phase(free_space + guide_phase(layout.bs, *pas[n],
                                                     constants));
    h[n] = std::polar(std::sqrt(eta) / dist, phase);
  }
  return h;
}

}  // namespace pinchsec
