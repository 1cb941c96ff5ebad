#ifndef MM1PS_PHILOX_HPP
#define MM1PS_PHILOX_HPP

#include <cstdint>

namespace mm1ps::rng {

// Philox-4x32-10 counter-based generator.  Each (seed, stream) pair yields
// an independent substream, so parallel replications never share state.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          ctr2_(static_cast<std::uint32_t>(stream)),
          ctr3_(static_cast<std::uint32_t>(stream >> 32)) {}

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        if (have_ == 0) refill();
        const std::uint64_t hi = buf_[--have_];
        if (have_ == 0) refill();
        const std::uint64_t lo = buf_[--have_];
        const std::uint64_t bits = ((hi << 32) | lo) >> 11;
        return static_cast<double>(bits) * 0x1.0p-53;
    }

private:
    void refill() {
        std::uint32_t c0 = static_cast<std::uint32_t>(block_);
        std::uint32_t c1 = static_cast<std::uint32_t>(block_ >> 32);
        std::uint32_t c2 = ctr2_, c3 = ctr3_;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = 0xD2511F53ull * c0;
            const std::uint64_t p1 = 0xCD9E8D57ull * c2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            const std::uint32_t n3 = lo0;
            c0 = n0;
            c1 = n1;
            c2 = n2;
            c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        buf_[0] = c0;
        buf_[1] = c1;
        buf_[2] = c2;
        buf_[3] = c3;
        have_ = 4;
        ++block_;
    }

    std::uint32_t key0_, key1_;
    std::uint32_t ctr2_, ctr3_;
    std::uint64_t block_ = 0;
    std::uint32_t buf_[4] = {};
    int have_ = 0;
};

} // namespace mm1ps::rng

#endif
