#pragma once

#include <stdexcept>

#include "pinchsec/config.hpp"

namespace pinchsec {

// Decoding SINRs along the SIC chain. U1 decodes s1 treating s2 as
// interference, then may try s2 interference-free; U2 does the same in order
// to reach its own s2.
struct SinrSet {
  double u1_decodes_s1 = 0.0;
  double u1_decodes_s2 = 0.0;
  double u2_decodes_s1 = 0.0;
  double u2_decodes_s2 = 0.0;
};

// rho_i is the per-antenna transmit SNR rho_t * eps_i; g_i the user's gain.
inline SinrSet compute_sinrs(const NomaAllocation& allocation, double rho1,
                             double rho2, double g1, double g2) {
  if (rho1 < 0.0 || rho2 < 0.0 || g1 < 0.0 || g2 < 0.0) {
    throw std::invalid_argument("compute_sinrs: negative SNR or gain");
  }
  const double a1 = allocation.alpha1;
  const double a2 = allocation.alpha2;
  const double p1 = rho1 * g1;
  const double p2 = rho2 * g2;
  return {a1 * p1 / (a2 * p1 + 1.0), a2 * p1, a1 * p2 / (a2 * p2 + 1.0),
          a2 * p2};
}

}  // namespace pinchsec
