#include "ldp/random.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ldp {

namespace {

// splitmix64 finalizer: a fast 64-bit permutation with good avalanche.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RandomStream::next_word() {
  ++position_;
  return engine_();
}

double RandomStream::uniform() {
  // 53 high bits scaled by 2^-53: exactly representable, uniform on [0, 1).
  return static_cast<double>(next_word() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  if (!(lo < hi)) {
    throw std::invalid_argument("uniform(lo, hi) requires lo < hi");
  }
  return lo + (hi - lo) * uniform();
}

std::uint64_t RandomStream::uniform_index(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("uniform_index requires n > 0");
  }
  // Reject words in the tail [limit, 2^64) where limit is the largest
  // multiple of n; the survivors are exactly uniform modulo n.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t word;
  do {
    word = next_word();
  } while (word >= limit);
  return word % n;
}

bool RandomStream::bernoulli(double p) {
  if (p <= 0.0) {
    next_word();  // consume a word regardless, so call counts stay aligned
    return false;
  }
  if (p >= 1.0) {
    next_word();
    return true;
  }
  return uniform() < p;
}

double RandomStream::laplace(double scale) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("laplace requires scale > 0");
  }
  double u = uniform();
  while (u == 0.0) {
    u = uniform();  // u == 0 maps to ln(0); redraw (probability 2^-53)
  }
  const double v = u - 0.5;
  const double magnitude = std::log(1.0 - 2.0 * std::abs(v));
  return v < 0.0 ? scale * magnitude : -scale * magnitude;
}

double RandomStream::gaussian(double mean, double stddev) {
  if (!(stddev > 0.0)) {
    throw std::invalid_argument("gaussian requires stddev > 0");
  }
  // 1 - uniform() lies in (0, 1], keeping the logarithm finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  return mean + stddev * radius * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view tag,
                          std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(base);
  for (const unsigned char c : tag) {
    h = mix64(h ^ static_cast<std::uint64_t>(c));
  }
  for (const std::uint64_t p : parts) {
    h = mix64(h ^ p);
  }
  return h;
}

std::uint64_t seed_component(double value) {
  return std::bit_cast<std::uint64_t>(value);
}

}  // namespace ldp
