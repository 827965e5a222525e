#include <lowss/ff.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>

namespace lowss {

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (u64 d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

PrimeStream::PrimeStream(u64 lo, u64 hi) : cur_(std::max<u64>(lo, 2)), hi_(hi) {
    if (lo < 2 || lo > hi) {
        if (lo > hi) throw std::invalid_argument("PrimeStream: lo > hi");
    }
}

std::optional<u64> PrimeStream::next() {
    while (cur_ <= hi_) {
        const u64 c = cur_++;
        if (is_prime_u64(c)) return c;
    }
    return std::nullopt;
}

std::vector<u64> primes_in_interval(u64 lo, u64 hi) {
    PrimeStream ps(lo, hi);
    std::vector<u64> out;
    while (auto p = ps.next()) out.push_back(*p);
    return out;
}

FieldCtx make_field(u64 p, int k) {
    if (!is_prime_u64(p)) throw std::invalid_argument("make_field: composite characteristic");
    if (k != 1 && k != 2) throw std::invalid_argument("make_field: unsupported extension degree");
    FieldCtx ctx;
    ctx.p_ = p;
    ctx.k_ = k;
    ctx.q_ = k == 1 ? p : p * p;
    if (p < (u64(1) << 32))
        ctx.im_ = static_cast<u64>((static_cast<u128>(1) << 64) / p);
    if (k == 2) {
        if (p == 2) {
            // No quadratic non-residue exists mod 2; x^2 + x + 1 is the
            // unique irreducible quadratic over F_2.
            ctx.alpha_ = 1;
            ctx.beta_ = 1;
        } else {
            u64 a = 2;
            while (ctx.pow_p(a % p, (p - 1) / 2) == 1) ++a;
            ctx.alpha_ = a % p;
            ctx.beta_ = 0;
        }
    }
    return ctx;
}

std::vector<u64> factor_distinct_primes(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace {

bool has_order_q_minus_1(const FieldCtx& ctx, const Fe& g,
                         const std::vector<u64>& primeFactors) {
    if (ctx.is_zero(g)) return false;
    const u64 m = ctx.q() - 1;
    for (u64 r : primeFactors) {
        if (ctx.pow(g, m / r) == ctx.one()) return false;
    }
    return true;
}

} // namespace

Fe find_generator(const FieldCtx& ctx) {
    if (ctx.cached_generator()) return *ctx.cached_generator();
    const u64 m = ctx.q() - 1;
    if (m == 1) {
        ctx.cache_generator(ctx.one());
        return ctx.one();
    }
    const auto factors = factor_distinct_primes(m);
    for (u64 i = 1; i < ctx.q(); ++i) {
        const Fe g = ctx.element_from_index(i);
        if (has_order_q_minus_1(ctx, g, factors)) {
            ctx.cache_generator(g);
            return g;
        }
    }
    throw std::logic_error("find_generator: no generator found");  // unreachable
}

Fe find_generator_random(const FieldCtx& ctx, SplitMix& rng) {
    const u64 m = ctx.q() - 1;
    if (m == 1) return ctx.one();
    const auto factors = factor_distinct_primes(m);
    for (;;) {
        const u64 i = 1 + rng.below(m);  // skip index 0 (zero element)
        const Fe g = ctx.element_from_index(i);
        if (has_order_q_minus_1(ctx, g, factors)) {
            ctx.cache_generator(g);
            return g;
        }
    }
}

Fe power_sum_all_units(const FieldCtx& ctx, u64 a) {
    if (a == 0) throw std::invalid_argument("power_sum_all_units: a must be positive");
    Fe sum = ctx.zero();
    for (u64 i = 1; i < ctx.q(); ++i)
        sum = ctx.add(sum, ctx.pow(ctx.element_from_index(i), a));
    return sum;
}

namespace {

u64 ceil_div(u64 a, u64 b) { return (a + b - 1) / b; }

u64 isqrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace

u64 deterministic_field_count(u64 d, u64 w) {
    // Threshold is the scan floor of the relevant case; a nonzero c with
    // |c| <= 2^w has at most w/log2(threshold) prime factors above it.
    long double lo;
    if (d > w * w) {
        lo = static_cast<long double>(isqrt_u64(d + 2));
        if (lo * lo < static_cast<long double>(d + 2)) lo += 1;
    } else {
        lo = static_cast<long double>(std::max<u64>(d + 2, w));
    }
    const long double lg = std::log2(std::max<long double>(lo, 2.0L));
    return static_cast<u64>(std::floor(static_cast<long double>(w) / lg)) + 1;
}

std::vector<FieldSpec> coefficient_test_primes(u64 d, u64 w, u64 mult,
                                               u64 countOverride) {
    if (d < 1 || w < 1)
        throw std::invalid_argument("coefficient_test_primes: d, w must be >= 1");
    std::vector<FieldSpec> out;
    if (d > w * w) {
        // Prime-squared fields with p >= ceil(sqrt(d+2)), so q = p^2 >= d+2.
        u64 lo = isqrt_u64(d + 2);
        if (lo * lo < d + 2) ++lo;
        const long double lg = std::log2(std::max<long double>(static_cast<long double>(lo), 2.0L));
        u64 m = countOverride
                    ? countOverride
                    : static_cast<u64>(std::ceil(static_cast<long double>(mult) * w / lg));
        m = std::max<u64>(m, 1);
        u64 c = std::max<u64>(lo, 2);
        while (out.size() < m) {
            if (is_prime_u64(c)) out.push_back({c * c, c, 2});
            ++c;
        }
    } else {
        const u64 lo = std::max<u64>(d + 2, std::max<u64>(w, 2));
        const long double lg = std::log2(std::max<long double>(static_cast<long double>(std::max<u64>(w, 2)), 2.0L));
        u64 m = countOverride
                    ? countOverride
                    : static_cast<u64>(std::ceil(static_cast<long double>(mult) * w / lg));
        m = std::max<u64>(m, 1);
        u64 c = lo;
        while (out.size() < m) {
            if (is_prime_u64(c)) out.push_back({c, c, 1});
            ++c;
        }
    }
    return out;
}

namespace {

// Prime power of the form p or p^2; returns extension degree or 0.
int prime_power_degree(u64 q) {
    if (is_prime_u64(q)) return 1;
    const u64 r = isqrt_u64(q);
    if (r * r == q && is_prime_u64(r)) return 2;
    return 0;
}

u64 pow_capped(u64 base, unsigned e, u64 cap) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > cap / std::max<u64>(base, 1)) return cap;
        r *= base;
    }
    return std::min(r, cap);
}

// Largest divisor of n in [lo, hi] not exceeding K, else smallest above K.
std::optional<u64> pick_divisor(u64 n, u64 lo, u64 hi, u64 K) {
    std::optional<u64> bestBelow, bestAbove;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        for (u64 v : {d, n / d}) {
            if (v < lo || v > hi) continue;
            if (v <= K) {
                if (!bestBelow || v > *bestBelow) bestBelow = v;
            } else {
                if (!bestAbove || v < *bestAbove) bestAbove = v;
            }
        }
    }
    return bestBelow ? bestBelow : bestAbove;
}

} // namespace

FieldWithDivisor find_q_with_divisor(u64 wBound, u64 K, SplitMix& rng) {
    if (K < 1) throw std::invalid_argument("find_q_with_divisor: K must be >= 1");
    if (wBound < 2) throw std::invalid_argument("find_q_with_divisor: wBound must be >= 2");
    const u64 lo = ceil_div(K, 2);
    // ceil(log2 K), clamped to >= 1 so K=1 keeps a nonempty interval
    u64 lg = 0;
    while ((u64(1) << lg) < K) ++lg;
    lg = std::max<u64>(lg, 1);
    const u64 capBase = pow_capped(lg, 15, UINT64_MAX / (2 * K));
    const u64 capHi = 2 * K * capBase;

    const u64 scanLo = wBound + 2;
    u64 R = std::max<u64>(2 * scanLo, scanLo + 16);
    for (;;) {
        const u64 span = R - scanLo + 1;
        const u64 start = scanLo + rng.below(span);
        for (u64 step = 0; step < span; ++step) {
            u64 q = start + step;
            if (q > R) q = scanLo + (q - R - 1);
            const int deg = prime_power_degree(q);
            if (deg == 0) continue;
            const u64 hi = std::min<u64>(q - 1, capHi);
            if (lo > hi) continue;
            if (auto S = pick_divisor(q - 1, lo, hi, K)) {
                const u64 p = deg == 1 ? q : isqrt_u64(q);
                FieldWithDivisor out{make_field(p, deg), *S};
                assert((out.ctx.q() - 1) % out.S == 0);
                return out;
            }
        }
        R *= 2;
    }
}

} // namespace lowss
