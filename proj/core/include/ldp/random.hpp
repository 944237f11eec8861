#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace ldp {

/// Deterministic random stream used by every sampling routine in the library.
///
/// The engine is pinned to std::mt19937_64 because its output sequence is fully
/// specified by the standard: the same seed yields bitwise-identical draws on
/// every platform and standard library.  All floating-point conversions are done
/// with explicit bit manipulation (never std::uniform_real_distribution, whose
/// algorithm is implementation-defined) so that results are reproducible.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).  Uses the top 53 bits of one engine word:
  /// (word >> 11) * 2^-53, which hits every representable multiple of 2^-53.
  double uniform();

  /// Uniform double in [lo, hi).  Requires lo < hi.
  double uniform(double lo, double hi);

  /// Uniform integer in {0, ..., n-1} with no modulo bias: raw words are
  /// rejected until they fall below the largest multiple of n.  Requires n > 0.
  std::uint64_t uniform_index(std::uint64_t n);

  /// True with probability p (p clamped to [0, 1]).  Consumes one word.
  bool bernoulli(double p);

  /// Laplace(0, scale) via inverse CDF: x = -scale * sgn(v) * ln(1 - 2|v|)
  /// with v = u - 1/2.  A draw of u == 0 would hit ln(0) and is redrawn.
  double laplace(double scale);

  /// Normal(mean, stddev) via Box-Muller.  Consumes exactly two words per
  /// call; the second variate of the pair is discarded to keep word
  /// accounting independent of call history.
  double gaussian(double mean, double stddev);

  /// Number of raw 64-bit engine words consumed so far.
  std::uint64_t position() const { return position_; }

  /// Next raw engine word (advances position).  Exposed for tests.
  std::uint64_t next_word();

 private:
  std::mt19937_64 engine_;
  std::uint64_t position_ = 0;
};

/// Derives a decorrelated child seed from a base seed, a textual tag, and an
/// optional list of integer components (repetition index, mechanism index,
/// bit-cast parameters, ...).  Uses a splitmix64-style mixing chain; this is a
/// deterministic decorrelator, not a cryptographic function.  Distinct
/// (tag, parts) pairs give independent-looking streams, which lets experiment
/// runners assign each unit of work its own stream so that reordering or
/// parallelising work never changes the draws any unit sees.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag,
                          std::initializer_list<std::uint64_t> parts = {});

/// Reinterprets a double's bits as an integer seed component, so real-valued
/// parameters (e.g. a privacy budget) can participate in seed derivation
/// without rounding collisions.
std::uint64_t seed_component(double value);

}  // namespace ldp
