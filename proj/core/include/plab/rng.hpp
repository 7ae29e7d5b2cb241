#ifndef PLAB_RNG_HPP
#define PLAB_RNG_HPP

#include <cmath>
#include <cstdint>

namespace plab {

// Counter-based random stream. Each (seed, replica_id) pair names an
// independent stream; draw n of a stream is a pure function of
// (seed, replica_id, n), so replicas can be sharded across workers in any
// order and still reproduce bit-exactly.
//
// The generator hashes a 128-bit key into a per-stream state and walks it
// with the SplitMix64 sequence (Weyl increment + avalanche finalizer).
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t replica_id)
        : state_(derive_state(seed, replica_id)), counter_(0) {}

    std::uint64_t seed_state() const { return state_; }
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64() {
        std::uint64_t z = state_ + (++counter_) * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    // Inversion for small means, normal-ish rejection not needed here: the
    // callers with large means sum exponential gaps instead.
    std::uint64_t poisson(double mean) {
        double limit = std::exp(-mean);
        double prod = uniform();
        std::uint64_t n = 0;
        while (prod > limit) {
            prod *= uniform();
            ++n;
        }
        return n;
    }

    double normal() {
        // Marsaglia polar, second value discarded to keep the draw count
        // a simple function of acceptance only.
        for (;;) {
            double u = 2.0 * uniform() - 1.0;
            double v = 2.0 * uniform() - 1.0;
            double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

private:
    static std::uint64_t derive_state(std::uint64_t seed, std::uint64_t replica_id) {
        std::uint64_t z = seed ^ (replica_id * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL);
        z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
        z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
        return z ^ (z >> 33);
    }

    std::uint64_t state_;
    std::uint64_t counter_;
};

} // namespace plab

#endif
