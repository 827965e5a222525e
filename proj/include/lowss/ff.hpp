#ifndef LOWSS_FF_HPP
#define LOWSS_FF_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <lowss/rng.hpp>

namespace lowss {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using u128 = unsigned __int128;

bool is_prime_u64(u64 n);  // trial division

// Ascending primes in [lo, hi], O(1) state beyond the cursor.
class PrimeStream {
public:
    PrimeStream(u64 lo, u64 hi);
    std::optional<u64> next();

private:
    u64 cur_, hi_;
};

std::vector<u64> primes_in_interval(u64 lo, u64 hi);

// Element of F_p (b unused, zero) or F_{p^2} represented as a + b*x.
struct Fe {
    u64 a = 0;
    u64 b = 0;
    friend bool operator==(const Fe&, const Fe&) = default;
};

// Arithmetic context for F_q, q = p^k with k in {1,2}. For k=2 and odd p the
// reduction is x^2 = alpha with alpha the least quadratic non-residue; for
// p=2 the only irreducible quadratic forces x^2 = x + 1.
class FieldCtx {
public:
    FieldCtx() = default;

    u64 p() const { return p_; }
    u64 q() const { return q_; }
    int k() const { return k_; }
    u64 nonresidue() const { return alpha_; }
    unsigned words_per_element() const { return k_ == 2 ? 2 : 1; }

    Fe zero() const { return {0, 0}; }
    Fe one() const { return {1, 0}; }
    Fe from_uint(u64 v) const { return {v % p_, 0}; }
    bool is_zero(const Fe& e) const { return e.a == 0 && e.b == 0; }

    u64 reduce(u64 v) const { return v % p_; }

    u64 add_p(u64 a, u64 b) const {
        u64 s = a + b;
        if (s >= p_) s -= p_;
        return s;
    }
    u64 sub_p(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 mul_p(u64 a, u64 b) const {
        if (im_) {
            const u64 x = a * b;  // p < 2^32 so the product fits
            const u64 qq = static_cast<u64>((static_cast<u128>(x) * im_) >> 64);
            u64 r = x - qq * p_;
            if (r >= p_) r -= p_;
            if (r >= p_) r -= p_;
            return r;
        }
        return static_cast<u64>(static_cast<u128>(a) * b % p_);
    }
    u64 pow_p(u64 a, u64 e) const {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mul_p(r, a);
            a = mul_p(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv_p(u64 a) const {
        if (a == 0) throw std::domain_error("FieldCtx: inverse of zero");
        return pow_p(a, p_ - 2);
    }

    Fe add(const Fe& x, const Fe& y) const { return {add_p(x.a, y.a), add_p(x.b, y.b)}; }
    Fe sub(const Fe& x, const Fe& y) const { return {sub_p(x.a, y.a), sub_p(x.b, y.b)}; }
    Fe neg(const Fe& x) const { return {x.a ? p_ - x.a : 0, x.b ? p_ - x.b : 0}; }

    Fe mul(const Fe& x, const Fe& y) const {
        if (k_ == 1) return {mul_p(x.a, y.a), 0};
        // (a0 + a1 x)(b0 + b1 x) with x^2 = beta*x + alpha
        const u64 t00 = mul_p(x.a, y.a);
        const u64 t11 = mul_p(x.b, y.b);
        const u64 cross = add_p(mul_p(x.a, y.b), mul_p(x.b, y.a));
        u64 c0 = add_p(t00, mul_p(alpha_, t11));
        u64 c1 = cross;
        if (beta_) c1 = add_p(c1, mul_p(beta_, t11));
        return {c0, c1};
    }

    Fe mul_scalar(const Fe& x, u64 s) const { return {mul_p(x.a, s), mul_p(x.b, s)}; }

    Fe pow(Fe base, u64 e) const {
        Fe r = one();
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    Fe inv(const Fe& x) const {
        if (is_zero(x)) throw std::domain_error("FieldCtx: inverse of zero");
        return pow(x, q_ - 2);
    }

    // Canonical scan order: element i = (i mod p) + (i div p)*x, i in [0, q).
    Fe element_from_index(u64 i) const { return {i % p_, i / p_}; }
    u64 index_of(const Fe& e) const { return e.a + e.b * p_; }

    const std::optional<Fe>& cached_generator() const { return gen_; }
    void cache_generator(const Fe& g) const { gen_ = g; }

private:
    friend FieldCtx make_field(u64 p, int k);

    u64 p_ = 0;
    u64 q_ = 0;
    int k_ = 0;
    u64 alpha_ = 0;  // x^2 = beta*x + alpha (k=2 only)
    u64 beta_ = 0;
    u64 im_ = 0;  // floor(2^64 / p) when p < 2^32
    mutable std::optional<Fe> gen_;
};

FieldCtx make_field(u64 p, int k);

// Smallest element in canonical scan order with multiplicative order q-1;
// cached into ctx.
Fe find_generator(const FieldCtx& ctx);

// Draws candidates from rng instead of scanning; order still verified.
Fe find_generator_random(const FieldCtx& ctx, SplitMix& rng);

// Sum of x^a over all units, by direct summation. Equals 0 when (q-1)
// does not divide a and -1 when it does; mostly a test oracle.
Fe power_sum_all_units(const FieldCtx& ctx, u64 a);

std::vector<u64> factor_distinct_primes(u64 n);

// One entry of the coefficient-test field list: F_q of order q = p^k.
struct FieldSpec {
    u64 q;
    u64 p;
    int k;
};

// Case d > w^2: pairs (p^2, p) with p prime scanning up from ceil(sqrt(d+2)).
// Case d <= w^2: pairs (p, p) with p prime scanning up from max(d+2, w).
// count defaults to the ceil(mult*w / log2(threshold)) rule with mult = 100;
// pass countOverride to truncate/extend (deterministic mode needs far fewer).
std::vector<FieldSpec> coefficient_test_primes(u64 d, u64 w, u64 mult = 100,
                                               u64 countOverride = 0);

// Number of fields that already guarantees a correct deterministic sweep:
// a nonzero coefficient below 2^w cannot be divisible by all of them.
u64 deterministic_field_count(u64 d, u64 w);

struct FieldWithDivisor {
    FieldCtx ctx;
    u64 S;  // divisor of q-1 in [ceil(K/2), 2K*ceil(log2 K)^15]
};

// Scans prime powers q in (wBound+1, R] from a random starting offset,
// doubling R until some q-1 has an admissible divisor. Prefers the largest
// divisor <= K, otherwise the smallest one above K.
FieldWithDivisor find_q_with_divisor(u64 wBound, u64 K, SplitMix& rng);

} // namespace lowss

#endif
