#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace relaylab {

// Philox4x32-10 (Salmon et al., SC'11). Stateless block function.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

// Random stream owned by one trial: key = seed, counter = (block, tag, trial lo, trial hi).
// Two streams with different (seed, trial, tag) never share a counter block.
class TrialStream {
public:
    TrialStream(std::uint64_t seed, std::uint64_t trial, std::uint32_t tag = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          tag_(tag),
          trial_lo_(static_cast<std::uint32_t>(trial)),
          trial_hi_(static_cast<std::uint32_t>(trial >> 32)) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            buf_ = philox4x32({block_++, tag_, trial_lo_, trial_hi_}, key_);
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    // uniform on (0, 1), never 0 or 1
    double uniform() { return (static_cast<double>(next_u32()) + 0.5) * 0x1p-32; }

    // circularly symmetric complex Gaussian with E|z|^2 = 1
    std::complex<double> complex_normal() {
        const double r = std::sqrt(-std::log(uniform()));
        const double th = 6.283185307179586 * uniform();
        return {r * std::cos(th), r * std::sin(th)};
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t tag_, trial_lo_, trial_hi_;
    std::uint32_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

}  // namespace relaylab
