#include <lowss/solver_tradeoff.hpp>

#include <algorithm>
#include <cassert>
#include <chrono>

namespace lowss {

BinomialModulus BatchPlan::modulus(u64 j) const {
    const Fe g = *ctx.cached_generator();
    return {e, ctx.pow(g, j * e)};
}

std::vector<Fe> BatchPlan::points(u64 j) const {
    const Fe g = *ctx.cached_generator();
    std::vector<Fe> out;
    out.reserve(static_cast<std::size_t>(e));
    const Fe step = ctx.pow(g, S);
    Fe cur = ctx.pow(g, j);
    for (u64 a = 0; a < e; ++a) {
        out.push_back(cur);
        cur = ctx.mul(cur, step);
    }
    return out;
}

BatchPlan plan_batches(const FieldCtx& ctx, u64 S) {
    if (S == 0 || (ctx.q() - 1) % S != 0)
        throw std::invalid_argument("plan_batches: S must divide q-1");
    BatchPlan plan;
    plan.ctx = ctx;
    find_generator(plan.ctx);  // verified order q-1, cached
    plan.S = S;
    plan.e = (ctx.q() - 1) / S;
    return plan;
}

namespace {

// Dense polynomial of one bin: sum over rounds of the product of the
// mini-group factors (1 + sum x^a). Used when the bin's degree bound fits
// below the residue length.
DensePoly bin_poly_dense(const FieldCtx& ctx, const GfPlan& plan,
                         const GfPlan::Bin& bin, SpaceMeter& meter) {
    DensePoly acc(ctx);
    ScopedWords accW(&meter, (bin.degreeBound + 1) * ctx.words_per_element());
    std::vector<std::vector<u64>> groups(static_cast<std::size_t>(plan.miniGroups));
    for (const auto& rf : plan.roundFuncs) {
        for (auto& g : groups) g.clear();
        for (u32 idx : bin.memberIdx)
            groups[static_cast<std::size_t>(pairwise_eval(rf, idx))].push_back(
                plan.items[idx]);
        std::vector<DensePoly> factors;
        for (const auto& g : groups) {
            if (g.empty()) continue;
            DensePoly f = DensePoly::constant(ctx, ctx.one());
            for (u64 a : g) f.add_coeff(static_cast<std::size_t>(a), ctx.one());
            factors.push_back(std::move(f));
        }
        u64 factorWords = 0;
        for (const auto& f : factors) factorWords += f.size() * ctx.words_per_element();
        ScopedWords fw(&meter, factorWords);
        // Binary product tree keeps the multiplies balanced.
        while (factors.size() > 1) {
            std::vector<DensePoly> nxt;
            for (std::size_t i = 0; i < factors.size(); i += 2) {
                if (i + 1 < factors.size())
                    nxt.push_back(poly_mul(factors[i], factors[i + 1]));
                else
                    nxt.push_back(std::move(factors[i]));
            }
            factors = std::move(nxt);
        }
        acc = factors.empty() ? poly_add(acc, DensePoly::constant(ctx, ctx.one()))
                              : poly_add(acc, factors[0]);
    }
    return acc;
}

// Residue-form bin polynomial for bins whose degree bound reaches the
// residue length: factors enter as monomials via mono_mod_binomial.
ResiduePoly bin_poly_residue(const FieldCtx& ctx, const GfPlan& plan,
                             const GfPlan::Bin& bin, const BinomialModulus& mod,
                             SpaceMeter& meter) {
    ResiduePoly acc(ctx, mod);
    ScopedWords accW(&meter, 2 * mod.e * ctx.words_per_element());
    std::vector<std::vector<u64>> groups(static_cast<std::size_t>(plan.miniGroups));
    for (const auto& rf : plan.roundFuncs) {
        for (auto& g : groups) g.clear();
        for (u32 idx : bin.memberIdx)
            groups[static_cast<std::size_t>(pairwise_eval(rf, idx))].push_back(
                plan.items[idx]);
        ResiduePoly round = ResiduePoly::one(ctx, mod);
        for (const auto& g : groups) {
            if (g.empty()) continue;
            std::vector<std::pair<u64, Fe>> terms;
            terms.reserve(g.size() + 1);
            terms.emplace_back(0, ctx.one());
            for (u64 a : g) terms.emplace_back(a, ctx.one());
            round.mul_sparse(terms);
        }
        for (u64 s = 0; s < mod.e; ++s) acc.add_coeff(s, round.coeff(s));
    }
    return acc;
}

} // namespace

std::vector<Fe> evaluate_batch(const GfPlan& gfPlan, const BatchPlan& plan, u64 j,
                               SpaceMeter& meter) {
    const FieldCtx& ctx = plan.ctx;
    const BinomialModulus mod = plan.modulus(j);
    ResiduePoly acc = ResiduePoly::one(ctx, mod);
    ScopedWords accW(&meter, mod.e * ctx.words_per_element());

    for (const auto& layer : gfPlan.layers) {
        // Bins whose polynomials stay below the residue length feed the
        // grouped product; larger bins are folded eagerly in residue form.
        u64 degreeCap = 0;
        for (const auto& bin : layer.bins)
            if (bin.degreeBound < mod.e) degreeCap = std::max(degreeCap, bin.degreeBound);
        std::size_t cursor = 0;
        auto nextSmall = [&]() -> std::optional<DensePoly> {
            while (cursor < layer.bins.size()) {
                const auto& bin = layer.bins[cursor++];
                if (bin.degreeBound < mod.e) return bin_poly_dense(ctx, gfPlan, bin, meter);
            }
            return std::nullopt;
        };
        ResiduePoly layerRes = grouped_product(nextSmall, ctx, mod, degreeCap, &meter);
        for (const auto& bin : layer.bins) {
            if (bin.degreeBound < mod.e) continue;
            ResiduePoly br = bin_poly_residue(ctx, gfPlan, bin, mod, meter);
            layerRes = residue_mul(layerRes, br);
        }
        acc = residue_mul(acc, layerRes);
    }
    return multipoint_eval(acc, plan.points(j), &meter);
}

SolveOutcome solve_tradeoff(const SubsetSumInstance& inst, u64 k, u64 masterSeed,
                            const TradeoffOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    const SubsetSumInstance norm = normalized(inst);
    if (k < 1 || k > std::max<u64>(std::min<u64>(norm.items.size(), norm.target), 1))
        throw std::invalid_argument("solve_tradeoff: k out of [1, min(n,t)]");
    SolveOutcome out;
    SeedPack seeds = SeedPack::from_master(masterSeed);
    RandConfig cfg;  // LogLog family defaults
    GfPlan plan = build_gf_plan(norm, cfg, seeds, out.meter);
    if (norm.items.empty() || plan.degreeBound < norm.target) {
        release_gf_plan(plan, out.meter);
        out.randomBitsUsed = seeds.bits_used();
        out.answer = Answer::No;
        out.wallTime = std::chrono::duration_cast<std::chrono::microseconds>(
            std::chrono::steady_clock::now() - start);
        return out;
    }

    // The q draw doubles as the coefficient-test randomness.
    const u64 wBound = std::max(plan.degreeBound, plan.coeffBitBound);
    FieldCtx ctx;
    u64 S = 1;
    if (opts.forceQ) {
        const u64 p = is_prime_u64(opts.forceQ) ? opts.forceQ : [&] {
            u64 r = 2;
            while (r * r < opts.forceQ) ++r;
            return r;
        }();
        ctx = make_field(p, opts.forceQ == p ? 1 : 2);
        S = opts.forceS ? opts.forceS : 1;
    } else {
        BitReader draw(seeds.draw);
        SplitMix qrng(draw.take(64));
        FieldWithDivisor fd = find_q_with_divisor(wBound, k, qrng);
        ctx = fd.ctx;
        S = fd.S;
    }
    if (ctx.q() < plan.degreeBound + 2)
        throw std::invalid_argument("solve_tradeoff: field too small for the degree bound");
    BatchPlan batches = plan_batches(ctx, S);

    // r_t = sum over batches and points of b^(q-1-t) * R_j(b).
    const u64 t = norm.target;
    Fe r = ctx.zero();
    for (u64 j = 0; j < S; ++j) {
        const std::vector<Fe> values = evaluate_batch(plan, batches, j, out.meter);
        const std::vector<Fe> pts = batches.points(j);
        for (std::size_t i = 0; i < pts.size(); ++i)
            r = ctx.add(r, ctx.mul(ctx.pow(pts[i], ctx.q() - 1 - t), values[i]));
    }
    out.answer = ctx.is_zero(r) ? Answer::No : Answer::Yes;
    release_gf_plan(plan, out.meter);
    out.randomBitsUsed = seeds.bits_used();
    out.wallTime = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start);
    return out;
}

} // namespace lowss
