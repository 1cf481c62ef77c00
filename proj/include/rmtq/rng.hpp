// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace rmtq {

// Value handle for a reproducible random stream.  Every consumer derives a
// fresh engine from the pair (master_seed, stream_index), so the draws that
// belong to stream i never depend on scheduling or on how many workers ran.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t index)
{
    return RngStream{master_seed, index};
}

// SplitMix64 output function; used to whiten the (seed, index) pair.
std::uint64_t splitmix64(std::uint64_t x);

// Engine keyed by the stream.  Two streams with distinct (seed, index) get
// unrelated mt19937-64 seeds through a double SplitMix64 mix.
std::mt19937_64 make_engine(const RngStream& stream);

// Standard normal deviates via the Marsaglia polar method.  Hand-rolled so
// the byte stream does not depend on the C++ library's normal_distribution
// implementation.
class GaussianSource {
public:
    explicit GaussianSource(const RngStream& stream) : engine_(make_engine(stream)) {}

    double operator()();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rmtq
