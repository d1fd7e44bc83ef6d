#include "graphtron/synthetic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace graphtron {

namespace {

// First `count` entries of a partial Fisher-Yates shuffle of [0, n).
std::vector<std::uint32_t> distinct_positions(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace

void SynthConfig::check() const {
  if (n_classes < 2) throw std::invalid_argument("synthetic data needs at least two classes");
  if (d_prime < 1) throw std::invalid_argument("d' must be at least 1");
  if (!(noise >= 0.0 && noise <= 1.0)) throw std::invalid_argument("noise must lie in [0, 1]");
}

KeywordTable gen_keywords(const SynthConfig& config, Rng& rng) {
  config.check();
  std::uniform_int_distribution<std::size_t> size(config.d_prime, 5 * config.d_prime);
  KeywordTable table;
  table.sets.reserve(config.n_classes);
  for (std::size_t c = 0; c < config.n_classes; ++c) {
    auto bits = distinct_positions(config.keyword_bits(), size(rng), rng);
    std::sort(bits.begin(), bits.end());
    table.sets.push_back(std::move(bits));
  }
  return table;
}

Example sample_example(const SynthConfig& config, const KeywordTable& keywords, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick_class(0, config.n_classes - 1);
  Example ex;
  ex.generating_class = pick_class(rng);
  ex.label = ex.generating_class;
  ex.x = Vector::Zero(static_cast<Eigen::Index>(config.dim()));
  for (std::uint32_t bit : keywords.sets[ex.generating_class]) ex.x[bit] = 1.0;
  for (std::uint32_t bit : distinct_positions(config.unrelated_bits(), 5 * config.d_prime, rng))
    ex.x[static_cast<Eigen::Index>(config.keyword_bits() + bit)] = 1.0;
  std::bernoulli_distribution flip(config.noise);
  if (flip(rng)) ex.label = pick_class(rng);
  return ex;
}

SyntheticEnvironment::SyntheticEnvironment(const SynthConfig& config, std::uint64_t seed)
    : config_(config), rng_(seed), keywords_(gen_keywords(config_, rng_)) {}

}  // namespace graphtron
