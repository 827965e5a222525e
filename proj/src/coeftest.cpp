#include <lowss/coeftest.hpp>

#include <cassert>

#include <lowss/poly.hpp>

namespace lowss {

namespace {

void check_query(const Evaluator& ev, const CoeffQuery& query) {
    if (query.lo > query.hi || query.hi > ev.d)
        throw std::invalid_argument("coefficient query out of [0, d]");
}

Fe accumulate_point(const Evaluator& ev, const FieldCtx& ctx, u64 t, SpaceMeter& meter) {
    // Enumerate units as powers of a generator so the selector x^(q-1-t)
    // advances by one multiplication per step.
    const Fe g = find_generator(ctx);
    const Fe selStep = ctx.pow(g, ctx.q() - 1 - t);
    ScopedWords live(&meter, 4 * ctx.words_per_element());
    Fe x = ctx.one();
    Fe sel = ctx.one();
    Fe r = ctx.zero();
    for (u64 i = 0; i + 1 < ctx.q(); ++i) {
        r = ctx.add(r, ctx.mul(sel, ev.eval(ctx, x, meter)));
        x = ctx.mul(x, g);
        sel = ctx.mul(sel, selStep);
    }
    return r;
}

Fe accumulate_range(const Evaluator& ev, const FieldCtx& ctx, u64 lo, u64 hi,
                    SpaceMeter& meter) {
    ScopedWords live(&meter, 3 * ctx.words_per_element());
    Fe r = ctx.zero();
    for (u64 i = 1; i < ctx.q(); ++i) {
        const Fe x = ctx.element_from_index(i);
        r = ctx.add(r, ctx.mul(range_selector(ctx, lo, hi, x), ev.eval(ctx, x, meter)));
    }
    return r;
}

} // namespace

Fe accumulate_r(const Evaluator& ev, const FieldCtx& ctx, const CoeffQuery& query,
                SpaceMeter& meter) {
    if (query.mode == CoeffQuery::Mode::Point)
        return accumulate_point(ev, ctx, query.lo, meter);
    return accumulate_range(ev, ctx, query.lo, query.hi, meter);
}

Answer coeff_test_randomized(const Evaluator& ev, const CoeffQuery& query,
                             BitReader& draw, SpaceMeter& meter, u64* bitsUsed) {
    check_query(ev, query);
    const auto list = coefficient_test_primes(ev.d, ev.w);
    unsigned bits = 1;
    while ((u64(1) << bits) < list.size()) ++bits;
    const u64 idx = draw.take(bits) % list.size();
    if (bitsUsed) *bitsUsed = bits;
    const FieldSpec spec = list[idx];
    const FieldCtx ctx = make_field(spec.p, spec.k);
    const Fe r = accumulate_r(ev, ctx, query, meter);
    return ctx.is_zero(r) ? Answer::No : Answer::Yes;
}

Answer coeff_test_deterministic(const Evaluator& ev, const CoeffQuery& query,
                                SpaceMeter& meter) {
    check_query(ev, query);
    const u64 count = deterministic_field_count(ev.d, ev.w);
    const auto list = coefficient_test_primes(ev.d, ev.w, 100, count);
    Answer ans = Answer::No;
    for (const FieldSpec& spec : list) {  // full sweep, no early exit
        const FieldCtx ctx = make_field(spec.p, spec.k);
        const Fe r = accumulate_r(ev, ctx, query, meter);
        if (!ctx.is_zero(r)) ans = Answer::Yes;
    }
    return ans;
}

} // namespace lowss
