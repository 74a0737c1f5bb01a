#pragma once

#include <cstdint>

namespace repcat {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// xoshiro256** seeded via splitmix64. One independent stream per trajectory,
/// keyed by (master seed, trajectory index), so results do not depend on how
/// trajectories are distributed over workers.
class Rng {
  public:
    Rng() : Rng(0, 0) {}
    Rng(uint64_t master_seed, uint64_t stream_index) { reseed(master_seed, stream_index); }

    void reseed(uint64_t master_seed, uint64_t stream_index) {
        uint64_t s = master_seed ^ (stream_index * 0xd1342543de82ef95ull + 0x632be59bd9b4e019ull);
        for (auto& w : state_) w = splitmix64(s);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    uint64_t next_u64() {
        uint64_t result = rotl(state_[1] * 5, 7) * 9;
        uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform bit, used for random measurement outcomes.
    bool bit() { return next_u64() >> 63; }

  private:
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    uint64_t state_[4];
};

inline Rng seed_stream(uint64_t master_seed, uint64_t trajectory_index) {
    return Rng(master_seed, trajectory_index);
}

}  // namespace repcat
