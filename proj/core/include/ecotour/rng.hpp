#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ecotour {

// Seeded RNG with hand-rolled draw helpers. std::uniform_int_distribution et
// al. are implementation-defined, which would break byte-identical reruns, so
// every draw is derived from raw mt19937_64 output in a fixed way.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // Lemire rejection; unbiased and portable
        if (n == 0) return 0;
        std::uint64_t x = eng_();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            std::uint64_t t = (0 - n) % n;
            while (lo < t) {
                x = eng_();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    int index(std::size_t n) { return static_cast<int>(below(n)); }

    // uniform integer in [lo, hi] inclusive
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // uniform in [0, 1)
    double uniform01() { return (eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    template <typename It>
    void shuffle(It first, It last) {
        for (auto n = last - first; n > 1; --n) {
            auto j = static_cast<decltype(n)>(below(static_cast<std::uint64_t>(n)));
            std::swap(*(first + n - 1), *(first + j));
        }
    }

    // child generator with decorrelated seed, for fan-out
    Rng fork() { return Rng(eng_() ^ 0x9e3779b97f4a7c15ull); }

  private:
    std::mt19937_64 eng_;
};

} // namespace ecotour
