#pragma once

// Synthetic data used by the solver configs, the suites and the tests.

#include <cstdint>
#include <numbers>
#include <string>

#include "dsqg/domain.hpp"

namespace dsqg {

/// Anisotropic Gaussian amplitude * exp(-(x-cx)^2/(2 sx^2) - (y-cy)^2/(2 sy^2)).
struct BumpSpec {
  double amplitude = 1.0;
  double cx = std::numbers::pi / 2, cy = std::numbers::pi / 2;
  double sx = 0.25, sy = 0.15;
};

/// The standard bump: centred in (0, pi)^2, widths 0.25 and 0.15. On other
/// rectangles the centre moves to the middle.
GridField bump(const DomainSpec& dom, double amplitude = 1.0);
GridField bump(const DomainSpec& dom, const BumpSpec& spec);

/// amplitude * w_jk sampled on the grid.
GridField mode_field(const DomainSpec& dom, int j, int k, double amplitude = 1.0);

/// Sine series with Gaussian coefficients of variance (j k)^{-2 decay} for
/// j, k <= band, drawn from a seeded mt19937_64.
GridField random_smooth(const DomainSpec& dom, std::uint64_t seed, double decay = 3.0,
                        int band = 12);

/// Named data: "zero", "bump", "mode:<j>,<k>", "random". Throws DomainError
/// on anything else.
GridField named_field(const std::string& name, const DomainSpec& dom, double amplitude = 1.0,
                      std::uint64_t seed = 0);

}  // namespace dsqg
