#pragma once

#include <cstdint>
#include <vector>

#include "graphtron/types.hpp"

namespace graphtron {

// Keyword-style binary features: the first 10 d' bits hold per-class
// keywords, the remaining 30 d' bits are unrelated words.
struct SynthConfig {
  std::size_t n_classes = 6;
  std::size_t d_prime = 2;
  double noise = 0.0;

  std::size_t keyword_bits() const { return 10 * d_prime; }
  std::size_t unrelated_bits() const { return 30 * d_prime; }
  std::size_t dim() const { return 40 * d_prime; }
  // Largest possible ||x||^2: 5 d' keywords plus 5 d' unrelated words.
  double max_sq_norm() const { return static_cast<double>(10 * d_prime); }

  void check() const;
};

// Per class, a random subset of [0, 10 d') of size uniform in {d', ..., 5 d'}.
struct KeywordTable {
  std::vector<std::vector<std::uint32_t>> sets;
};

KeywordTable gen_keywords(const SynthConfig& config, Rng& rng);

struct Example {
  Vector x;
  std::size_t label = 0;             // class index in [0, n_classes)
  std::size_t generating_class = 0;  // before label noise
};

// Picks a class uniformly, switches on its keywords and 5 d' distinct
// unrelated bits, then with probability `noise` replaces the label with a
// uniform class.
Example sample_example(const SynthConfig& config, const KeywordTable& keywords, Rng& rng);

// A synthetic stream that owns its keyword table and data RNG.
class SyntheticEnvironment {
 public:
  SyntheticEnvironment(const SynthConfig& config, std::uint64_t seed);

  const SynthConfig& config() const { return config_; }
  const KeywordTable& keywords() const { return keywords_; }
  std::size_t dim() const { return config_.dim(); }
  std::size_t n_classes() const { return config_.n_classes; }

  Example next() { return sample_example(config_, keywords_, rng_); }

 private:
  SynthConfig config_;
  Rng rng_;
  KeywordTable keywords_;
};

}  // namespace graphtron
