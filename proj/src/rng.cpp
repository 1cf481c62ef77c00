// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmtq/rng.hpp"

#include <cmath>

namespace rmtq {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::mt19937_64 make_engine(const RngStream& stream)
{
    const std::uint64_t key =
        splitmix64(splitmix64(stream.master_seed) ^
                   splitmix64(stream.stream_index * 0x9E3779B97F4A7C15ULL + 1));
    return std::mt19937_64(key);
}

double GaussianSource::operator()()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double u, v, s;
    do {
        u = unit(engine_);
        v = unit(engine_);
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

}  // namespace rmtq
