#ifndef LOWSS_COEFTEST_HPP
#define LOWSS_COEFTEST_HPP

#include <functional>

#include <lowss/ff.hpp>
#include <lowss/instance.hpp>
#include <lowss/meter.hpp>
#include <lowss/rng.hpp>

namespace lowss {

// Black-box evaluator for a polynomial f over any field from the test list.
// Contract: deterministic for fixed (ctx, x); integer coefficients are
// nonnegative (range queries rely on it) with |c_i| <= 2^w, degree <= d.
struct Evaluator {
    std::function<Fe(const FieldCtx&, Fe, SpaceMeter&)> eval;
    u64 d = 1;
    u64 w = 1;
};

struct CoeffQuery {
    enum class Mode { Point, Range };
    Mode mode = Mode::Point;
    u64 lo = 0;
    u64 hi = 0;

    static CoeffQuery point(u64 t) { return {Mode::Point, t, t}; }
    static CoeffQuery range(u64 lo, u64 hi) { return {Mode::Range, lo, hi}; }
};

// r = sum over units of sel(x) * f(x), streamed with O(1) live elements.
// For a point query at t this equals -c_t in F_q whenever q >= d+2.
Fe accumulate_r(const Evaluator& ev, const FieldCtx& ctx, const CoeffQuery& query,
                SpaceMeter& meter);

// One-sided: draws one field from the coefficient_test_primes list and
// answers YES iff the accumulated sum is nonzero. Never YES when every
// queried coefficient is zero. bitsUsed reports the ceil(log2 m) draw.
Answer coeff_test_randomized(const Evaluator& ev, const CoeffQuery& query,
                             BitReader& draw, SpaceMeter& meter,
                             u64* bitsUsed = nullptr);

// Sweeps enough fields that a nonzero coefficient below 2^w cannot divide
// out everywhere; unconditionally correct.
Answer coeff_test_deterministic(const Evaluator& ev, const CoeffQuery& query,
                                SpaceMeter& meter);

} // namespace lowss

#endif
