#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string_view>

namespace fh {

// Counter-based generator: output k is a fixed mix of (key, k), so streams
// can be split per experiment stage / trial index and results do not depend
// on thread scheduling. The mixer is SplitMix64.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}
  CounterRng(std::uint64_t seed, std::string_view stream) : CounterRng(seed) {
    for (char ch : stream) key_ = mix(key_ ^ static_cast<std::uint64_t>(static_cast<unsigned char>(ch)));
  }

  // independent child stream; does not disturb this stream's counter
  CounterRng substream(std::uint64_t index) const {
    CounterRng r(0);
    r.key_ = mix(key_ ^ (0xa0761d6478bd642full + index));
    r.counter_ = 0;
    r.have_cached_ = false;
    return r;
  }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull); }

  // uniform on (0, 1]
  double next_double() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // standard normal, Box-Muller (pairwise, deterministic consumption)
  double next_normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.28318530717958647692 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  // complex normal with E(v^2) = 0, E|v|^2 = 1
  std::complex<double> next_complex_normal() {
    const double s = 0.70710678118654752440;
    const double re = next_normal();
    const double im = next_normal();
    return {s * re, s * im};
  }

  // uniform integer in [0, n)
  std::uint64_t next_below(std::uint64_t n) {
    // multiply-shift; bias is negligible for the n used here (n <= 2^32)
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace fh
