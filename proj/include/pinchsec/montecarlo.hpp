#pragma once

// Monte Carlo estimator of the secrecy outage probability. Users are drawn
// uniformly in their square cells and the no-outage event is evaluated
// through the gain -> SINR -> threshold pipeline, independently of the
// closed-form omega algebra.
//
// Reproducibility: the sample index space is cut into fixed blocks of
// kBlockSize samples and block b draws from its own generator seeded by
// (seed, b). Chunks are contiguous runs of blocks handed to worker threads,
// so the estimate depends only on (seed, samples), never on the chunk count
// or on thread scheduling.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pinchsec/channel.hpp"
#include "pinchsec/config.hpp"
#include "pinchsec/coupling.hpp"
#include "pinchsec/sinr.hpp"

namespace pinchsec {

struct McSettings {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  std::uint32_t chunks = 64;
};

struct McEstimate {
  double sop_hat = 1.0;
  double std_err = 0.0;
  std::uint64_t samples_used = 0;
};

inline constexpr std::uint64_t kBlockSize = std::uint64_t{1} << 16;

// Independent substream for block `block` of a run seeded with `seed`.
class SubstreamRng {
 public:
  SubstreamRng(std::uint64_t seed, std::uint64_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block),
                      static_cast<std::uint32_t>(block >> 32)};
    engine_.seed(seq);
  }

  // Uniform on [0, 1) from the top 53 bits; avoids the unspecified
  // algorithm of std::uniform_real_distribution so streams are portable.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

// U1 uniform on the square centred at (-D1, 0, 0), U2 on the one at
// (D2, 0, 0). Draw order: x1, y1, x2, y2.
inline std::pair<Point3, Point3> sample_positions(SubstreamRng& rng,
                                                  const Geometry& geometry) {
  const double s1 = geometry.side1();
  const double s2 = geometry.side2();
  const double x1 = -geometry.cell1_center_offset_m + (rng.uniform() - 0.5) * s1;
  const double y1 = (rng.uniform() - 0.5) * s1;
  const double x2 = geometry.cell2_center_offset_m + (rng.uniform() - 0.5) * s2;
  const double y2 = (rng.uniform() - 0.5) * s2;
  return {{x1, y1, 0.0}, {x2, y2, 0.0}};
}

namespace detail {

inline bool no_outage(const SinrSet& s, double gamma1, double gamma2) {
  return s.u1_decodes_s1 >= gamma1 && s.u1_decodes_s2 < gamma2 &&
         s.u2_decodes_s1 >= gamma1 && s.u2_decodes_s2 >= gamma2;
}

}  // namespace detail

// No-outage test for the pinching-antenna system with fixed coupling
// lengths. Each user gets a PA pinched directly above it.
class PaEventModel {
 public:
  PaEventModel(const SystemConfig& config, const CouplingLengths& lengths)
      : allocation_(config.allocation),
        eta_(free_space_factor(config.constants)),
        height_(config.geometry.waveguide_height_m),
        gamma1_(config.link.gamma1_linear()),
        gamma2_(config.link.gamma2_linear()) {
    const auto eps = coefficients(lengths, config.constants);
    const double rho = config.link.rho_t_linear();
    rho1_ = rho * eps.eps1;
    rho2_ = rho * eps.eps2;
  }

  SinrSet sinrs(const Point3& u1, const Point3& u2) const {
    const double g1 = gain_simplified(u1, place_pa_for_user(u1, height_), eta_);
    const double g2 = gain_simplified(u2, place_pa_for_user(u2, height_), eta_);
    return compute_sinrs(allocation_, rho1_, rho2_, g1, g2);
  }

  bool operator()(const Point3& u1, const Point3& u2) const {
    return detail::no_outage(sinrs(u1, u2), gamma1_, gamma2_);
  }

 private:
  NomaAllocation allocation_;
  double eta_;
  double height_;
  double gamma1_;
  double gamma2_;
  double rho1_ = 0.0;
  double rho2_ = 0.0;
};

// Benchmark: one conventional antenna at (0, 0, d) radiating the full
// rho_t to both users.
class FixedAntennaEventModel {
 public:
  explicit FixedAntennaEventModel(const SystemConfig& config)
      : allocation_(config.allocation),
        eta_(free_space_factor(config.constants)),
        rho_(config.link.rho_t_linear()),
        antenna_{0.0, 0.0, config.geometry.waveguide_height_m},
        gamma1_(config.link.gamma1_linear()),
        gamma2_(config.link.gamma2_linear()) {}

  bool operator()(const Point3& u1, const Point3& u2) const {
    const double g1 = gain_simplified(u1, antenna_, eta_);
    const double g2 = gain_simplified(u2, antenna_, eta_);
    return detail::no_outage(compute_sinrs(allocation_, rho_, rho_, g1, g2),
                             gamma1_, gamma2_);
  }

 private:
  NomaAllocation allocation_;
  double eta_;
  double rho_;
  Point3 antenna_;
  double gamma1_;
  double gamma2_;
};

// true = no secrecy outage.
inline bool secrecy_event(const Point3& u1, const Point3& u2,
                          const SystemConfig& config,
                          const CouplingLengths& lengths) {
  return PaEventModel(config, lengths)(u1, u2);
}

// Worker cap: PINCHSEC_THREADS if set to a positive integer, otherwise the
// hardware concurrency.
inline unsigned worker_limit() {
  if (const char* env = std::getenv("PINCHSEC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

template <typename Event>
McEstimate estimate_event_probability(const Event& event,
                                      const Geometry& geometry,
                                      const McSettings& settings) {
  const std::uint64_t n = std::max<std::uint64_t>(settings.samples, 1);
  const std::uint64_t blocks = (n + kBlockSize - 1) / kBlockSize;
  const std::uint64_t chunks = std::clamp<std::uint64_t>(
      std::max<std::uint32_t>(settings.chunks, 1), 1, blocks);

  std::vector<std::uint64_t> successes(chunks, 0);
  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t first = c * blocks / chunks;
    const std::uint64_t last = (c + 1) * blocks / chunks;
    std::uint64_t hits = 0;
    for (std::uint64_t b = first; b < last; ++b) {
      SubstreamRng rng(settings.seed, b);
      const std::uint64_t begin = b * kBlockSize;
      const std::uint64_t end = std::min(n, begin + kBlockSize);
      for (std::uint64_t i = begin; i < end; ++i) {
        const auto [u1, u2] = sample_positions(rng, geometry);
        hits += event(u1, u2) ? 1 : 0;
      }
    }
    successes[c] = hits;
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(worker_limit(), chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    }
  }

  std::uint64_t total = 0;
  for (const auto s : successes) total += s;

  McEstimate out;
  out.samples_used = n;
  out.sop_hat = 1.0 - static_cast<double>(total) / static_cast<double>(n);
  out.std_err =
      std::sqrt(out.sop_hat * (1.0 - out.sop_hat) / static_cast<double>(n));
  return out;
}

inline McEstimate estimate_sop(const SystemConfig& config,
                               const CouplingLengths& lengths,
                               const McSettings& settings) {
  return estimate_event_probability(PaEventModel(config, lengths),
                                    config.geometry, settings);
}

inline McEstimate estimate_sop_fixed_antenna(const SystemConfig& config,
                                             const McSettings& settings) {
  return estimate_event_probability(FixedAntennaEventModel(config),
                                    config.geometry, settings);
}

}  // namespace pinchsec
