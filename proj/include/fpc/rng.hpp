#pragma once

#include <cstdint>

#include "fpc/special.hpp"

namespace fpc {

// Philox4x32-10 counter-based generator. A draw is addressed by
// (seed, stream, counter); identical addresses give identical output on every
// platform, so parallel path simulation is reproducible regardless of
// scheduling.
struct Philox4x32 {
    static void round10(std::uint32_t c[4], std::uint32_t k0, std::uint32_t k1) {
        constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
        constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
        for (int r = 0; r < 10; ++r) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * c[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * c[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t n0 = hi1 ^ c[1] ^ k0;
            const std::uint32_t n2 = hi0 ^ c[3] ^ k1;
            c[0] = n0;
            c[1] = lo1;
            c[2] = n2;
            c[3] = lo0;
            k0 += W0;
            k1 += W1;
        }
    }

    static std::uint64_t bits64(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
        std::uint32_t c[4] = {static_cast<std::uint32_t>(counter),
                              static_cast<std::uint32_t>(counter >> 32),
                              static_cast<std::uint32_t>(stream),
                              static_cast<std::uint32_t>(stream >> 32)};
        round10(c, static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32));
        return (static_cast<std::uint64_t>(c[1]) << 32) | c[0];
    }

    // Uniform on the open interval (0,1); never returns an endpoint.
    static double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
        const std::uint64_t b = bits64(seed, stream, counter) >> 11;
        return (static_cast<double>(b) + 0.5) * 0x1.0p-53;
    }

    static double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
        return inv_norm_cdf(uniform(seed, stream, counter));
    }
};

} // namespace fpc
