#pragma once

#include <cstdint>
#include <random>

#include "blockrecon/common/bytes.hpp"

namespace blockrecon {

using Rng = std::mt19937_64;

/// Seed for an independent stream `stream` derived from `base`. Trials of a Monte Carlo run use
/// derive_seed(run_seed, trial) so results do not depend on execution order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

Rng make_rng(std::uint64_t base, std::uint64_t stream = 0);

void fill_random(Rng& rng, std::span<std::uint8_t> out);
Bytes random_bytes(Rng& rng, std::size_t n);

/// Uniform integer in [lo, hi].
std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi);

} // namespace blockrecon
