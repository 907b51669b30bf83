#include "dsqg/fields.hpp"

#include <cmath>
#include <random>

#include "dsqg/error.hpp"
#include "dsqg/spectral.hpp"

namespace dsqg {

GridField bump(const DomainSpec& dom, double amplitude) {
  BumpSpec b;
  b.amplitude = amplitude;
  b.cx = dom.L1 / 2;
  b.cy = dom.L2 / 2;
  return bump(dom, b);
}

GridField bump(const DomainSpec& dom, const BumpSpec& b) {
  if (!(b.sx > 0 && b.sy > 0)) throw DomainError("bump widths must be positive");
  return sample(dom, [&](double x, double y) {
    const double u = (x - b.cx) / b.sx, v = (y - b.cy) / b.sy;
    return b.amplitude * std::exp(-0.5 * (u * u + v * v));
  });
}

GridField mode_field(const DomainSpec& dom, int j, int k, double amplitude) {
  if (j < 1 || k < 1) throw DomainError("mode indices start at 1");
  const double a = amplitude * dom.mode_amplitude();
  return sample(dom, [&](double x, double y) {
    return a * std::sin(j * M_PI * x / dom.L1) * std::sin(k * M_PI * y / dom.L2);
  });
}

GridField random_smooth(const DomainSpec& dom, std::uint64_t seed, double decay, int band) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  SpectralField a(dom);
  for (int j = 1; j <= std::min(band, dom.N1); ++j)
    for (int k = 1; k <= std::min(band, dom.N2); ++k)
      a(j, k) = normal(rng) * std::pow(double(j) * k, -decay);
  return from_spectral(a);
}

GridField named_field(const std::string& name, const DomainSpec& dom, double amplitude,
                      std::uint64_t seed) {
  if (name == "zero") return GridField(dom);
  if (name == "bump") return bump(dom, amplitude);
  if (name == "random") return amplitude * random_smooth(dom, seed);
  if (name.rfind("mode:", 0) == 0) {
    int j = 0, k = 0;
    char comma = 0;
    std::size_t used = 0;
    const std::string rest = name.substr(5);
    try {
      j = std::stoi(rest, &used);
      comma = used < rest.size() ? rest[used] : 0;
      const std::string tail = rest.substr(used + 1);
      k = std::stoi(tail, &used);
      if (comma != ',' || used != tail.size()) throw DomainError("");
    } catch (const std::exception&) {
      throw DomainError("field '" + name + "': expected mode:<j>,<k>");
    }
    return mode_field(dom, j, k, amplitude);
  }
  throw DomainError("unknown field '" + name + "' (zero, bump, mode:<j>,<k>, random)");
}

}  // namespace dsqg
