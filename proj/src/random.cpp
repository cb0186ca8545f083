#include "fequiv/random.hpp"

namespace fequiv {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x9E3779B97F4A7C15ULL));
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{derive_seed(seed, stream)};
  return Rng(seq);
}

Vector resample_counts(std::size_t count, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, count - 1);
  Vector w = Vector::Zero(static_cast<Eigen::Index>(count));
  for (std::size_t k = 0; k < count; ++k) w[static_cast<Eigen::Index>(pick(rng))] += 1.0;
  return w;
}

}  // namespace fequiv
