#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace sp2spec {

inline constexpr const char* kVersion = "1.0.0";

// Precondition failure on caller-supplied values (bad arguments, out-of-range
// inputs). Messages are short stable phrases that callers and tests match on.
#define SP2_DOMAIN_CHECK(cond, msg)        \
    do {                                   \
        if (!(cond)) {                     \
            throw std::domain_error(msg);  \
        }                                  \
    } while (0)

// Internal invariant failure (a bug, not a bad input).
#define SP2_LOGIC_CHECK(cond, msg)         \
    do {                                   \
        if (!(cond)) {                     \
            throw std::logic_error(msg);   \
        }                                  \
    } while (0)

// ---------------------------------------------------------------------------
// Half-integer labels. Spin labels and weights live in (1/2)Z; storing twice
// the value keeps indexing and parity checks exact. twice = 3 means 3/2.
// ---------------------------------------------------------------------------
struct Half {
    int twice = 0;

    static constexpr Half from_twice(int t) { return Half{t}; }
    static constexpr Half from_int(int n) { return Half{2 * n}; }

    constexpr double value() const { return twice / 2.0; }
    constexpr bool is_integer() const { return twice % 2 == 0; }

    friend constexpr bool operator==(Half a, Half b) { return a.twice == b.twice; }
    friend constexpr auto operator<=>(Half a, Half b) { return a.twice <=> b.twice; }
};

// "3" for whole values, "1.5" otherwise (used in CSV label columns).
inline std::string half_to_string(Half h) {
    if (h.twice % 2 == 0) return std::to_string(h.twice / 2);
    std::string s = std::to_string(h.twice / 2.0);
    // std::to_string gives "1.500000"; trim trailing zeros past the first decimal.
    auto dot = s.find('.');
    auto last = s.find_last_not_of('0');
    return s.substr(0, std::max(dot + 2, last + 1));
}

// ---------------------------------------------------------------------------
// Deterministic random source. std::mt19937_64 raw output is specified
// bit-for-bit by the standard; the distribution transforms are written out by
// hand because std::uniform_real_distribution and std::normal_distribution
// are not, and reports must be byte-identical across platforms.
// ---------------------------------------------------------------------------
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_raw() { return engine_(); }

    // Uniform in [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(next_raw() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via explicit Box-Muller (deterministic across platforms).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next_raw() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// ---------------------------------------------------------------------------
// Compensated summation.
// ---------------------------------------------------------------------------
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// Integer power by repeated squaring (exact operation count, much faster than
// std::pow for the small integer exponents used in the spectral sums).
inline double pow_int(double x, unsigned n) {
    double result = 1.0;
    double base = x;
    while (n != 0) {
        if (n & 1u) result *= base;
        base *= base;
        n >>= 1u;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Thread configuration. Priority: explicit set_thread_override (from --threads)
// > SP2SPEC_THREADS environment variable > hardware concurrency.
// ---------------------------------------------------------------------------
inline std::atomic<int>& thread_override_slot() {
    static std::atomic<int> slot{0};
    return slot;
}

inline void set_thread_override(int n) { thread_override_slot().store(n); }

inline int configured_thread_count() {
    int forced = thread_override_slot().load();
    if (forced > 0) return forced;
    if (const char* env = std::getenv("SP2SPEC_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Evaluates fn(0..nblocks-1) on the configured number of worker threads and
// returns the per-block results in block order. Each block's value depends
// only on its index, and any caller-side combine walks the vector
// sequentially, so results are bit-for-bit independent of the worker count.
template <typename F>
auto parallel_blocks(int nblocks, F&& fn) -> std::vector<decltype(fn(0))> {
    using R = decltype(fn(0));
    std::vector<R> results(static_cast<std::size_t>(nblocks));
    int nthreads = std::min(configured_thread_count(), nblocks > 0 ? nblocks : 1);
    if (nthreads <= 1) {
        for (int i = 0; i < nblocks; ++i) results[static_cast<std::size_t>(i)] = fn(i);
        return results;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= nblocks) break;
                results[static_cast<std::size_t>(i)] = fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
    return results;
}

// ---------------------------------------------------------------------------
// Float formatting. Data rows use 15 significant digits; config echoes use the
// shortest round-trip form.
// ---------------------------------------------------------------------------
inline std::string format_g15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline std::string format_shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace sp2spec
