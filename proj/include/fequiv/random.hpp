#pragma once

#include "fequiv/grid.hpp"

#include <cstddef>
#include <cstdint>
#include <random>

namespace fequiv {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Counter-based stream split: the seed of substream `stream` under `seed` is
/// splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x9E3779B97F4A7C15)).
/// Substream r depends only on (seed, r), never on which worker draws it.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Engine for substream `stream` of `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Multiplicities of `count` uniform draws with replacement from [0, count).
Vector resample_counts(std::size_t count, Rng& rng);

}  // namespace fequiv
