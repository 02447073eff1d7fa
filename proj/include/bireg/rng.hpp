#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace bireg {

/// Deterministic pseudo-random stream (splitmix64).
///
/// Every randomized routine in this library derives its own stream from
/// (seed, salt ...) so trials are reproducible bit for bit and independent
/// of evaluation order or thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Stream for sub-task `a` (and optional sub-sub-tasks) of `seed`.
  static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                    std::uint64_t c = 0) {
    Rng r(seed);
    r.state_ = mix(r.state_ ^ mix(a + 0x6a09e667f3bcc909ull));
    r.state_ = mix(r.state_ ^ mix(b + 0xbb67ae8584caa73bull));
    r.state_ = mix(r.state_ ^ mix(c + 0x3c6ef372fe94f82bull));
    return r;
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925 * u2);
  }

  std::complex<double> normal_complex() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  /// Uniform on the closed complex unit disk.
  std::complex<double> unit_disk() {
    const double r = std::sqrt(uniform());
    const double t = 6.283185307179586476925 * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace bireg
