#pragma once

#include <cstdint>
#include <span>

namespace splitconf {

/// Standard normal CDF. Throws std::domain_error on non-finite input.
double normal_cdf(double x);

/// Standard normal quantile for p in (0, 1). Rational approximation polished
/// by one Newton step on normal_cdf, so the round trip holds to ~1e-15.
double normal_quantile(double p);

struct SampleStats {
  double mean = 0.0;
  double variance = 0.0;  // n-1 divisor; meaningful when count >= 2
  std::size_t count = 0;
};

/// Mean and n-1 sample variance via a two-pass scheme.
/// Requires at least one value; the variance field needs count >= 2.
SampleStats sample_mean_var(std::span<const double> values);

/// Counter-based random stream keyed on (seed, replication_id).
///
/// Each output is a SplitMix64-style hash of an affine counter, so the k-th
/// draw is a pure function of (seed, replication_id, k): the same key gives a
/// byte-identical sequence on every platform and run, and distinct
/// replication ids give streams that can be consumed in any order across
/// workers. Normal draws use the inverse CDF (one uniform per normal;
/// Marsaglia polar was rejected because its rejection loop makes the draw
/// count data-dependent). Laplace(0,1) also uses its inverse CDF.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t replication_id);

  std::uint64_t next_u64();

  /// Uniform draw strictly inside (0, 1): ((u >> 12) + 0.5) * 2^-52.
  double uniform();

  /// Standard normal via normal_quantile(uniform()).
  double normal();

  /// Laplace(0,1) via -sign(u - 1/2) * ln(1 - 2|u - 1/2|).
  double laplace();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t replication_id() const { return replication_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t replication_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

RngStream make_stream(std::uint64_t seed, std::uint64_t replication_id);

}  // namespace splitconf
