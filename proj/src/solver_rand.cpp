#include <lowss/solver_rand.hpp>

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>

namespace lowss {

unsigned layer_count(std::size_t n) {
    unsigned L = 0;
    while ((std::size_t(1) << L) < n) ++L;
    return std::max(L, 1u);
}

bool layer_of(u64 a, u64 t, unsigned i, unsigned layerCount) {
    if (i < 1 || i > layerCount) throw std::invalid_argument("layer_of: bad layer index");
    // a in (t/2^i, t/2^(i-1)] iff a*2^i > t and a*2^(i-1) <= t, exactly.
    auto above = [&](unsigned sh) {
        return (static_cast<u128>(a) << sh) > t;
    };
    if (i == layerCount) {
        // Complement of layers 1..L-1, i.e. a <= t/2^(L-1).
        return !above(layerCount - 1);
    }
    return above(i) && !above(i - 1);
}

namespace {

u64 smallest_prime_at_least(u64 v) {
    u64 c = std::max<u64>(v, 2);
    while (!is_prime_u64(c)) ++c;
    return c;
}

u64 floor_pow2(u64 v) {
    u64 r = 1;
    while (r * 2 <= v) r *= 2;
    return r;
}

u64 derive_load_param(const RandConfig& cfg, std::size_t n) {
    if (cfg.loadParamOverride) return cfg.loadParamOverride;
    const unsigned L = layer_count(n);
    if (cfg.family == RandConfig::Family::LogLog) return std::max<u64>(2, L);
    // ConstDepth: k ~ n^(epsNumer/epsDenom)
    const double e = static_cast<double>(cfg.epsNumer) / cfg.epsDenom;
    return std::max<u64>(2, static_cast<u64>(std::ceil(std::pow(static_cast<double>(std::max<std::size_t>(n, 2)), e))));
}

} // namespace

GfPlan build_gf_plan(const SubsetSumInstance& inst, const RandConfig& cfg,
                     const SeedPack& seeds, SpaceMeter& meter) {
    GfPlan plan;
    plan.items = inst.items;
    plan.target = inst.target;
    plan.strictLogspace = cfg.strictLogspace;
    const std::size_t n = plan.items.size();
    plan.layerCount = layer_count(n);
    plan.loadParam = derive_load_param(cfg, n);
    plan.miniGroups = plan.loadParam * plan.loadParam;
    plan.rounds = std::max<u64>(1, cfg.walkC * plan.layerCount);

    // Mini-group seeds: one expander walk shared by every bin and layer.
    plan.pairwiseP = smallest_prime_at_least(std::max<u64>(n + 1, plan.miniGroups + 1));
    BitReader r2(seeds.r2);
    const auto payloads = walk_seeds(r2, plan.rounds, 64);
    plan.roundFuncs.reserve(payloads.size());
    for (u64 pl : payloads)
        plan.roundFuncs.push_back(PairwiseFunc::from_payload(pl, plan.pairwiseP, plan.miniGroups));

    // Bin membership per layer via the invertible hash, same r1 every layer.
    const u64 nPow2 = n == 0 ? 1 : floor_pow2(n);
    plan.layers.resize(plan.layerCount);
    for (unsigned i = 1; i <= plan.layerCount && n > 0; ++i) {
        const u64 bins = std::min<u64>(u64(1) << i, nPow2);
        BitReader r1(seeds.r1);
        const InvertibleHash h = make_invertible_hash(
            nPow2, bins, cfg.family == RandConfig::Family::LogLog ? DepthMode::LogLog : DepthMode::Const,
            cfg.constDepth, r1);
        auto& layer = plan.layers[i - 1];
        layer.bins.assign(bins, {});
        for (u64 b = 0; b < bins; ++b) {
            auto& bin = layer.bins[b];
            h.enumerate_bin(b, [&](u64 x) {
                if (x < n && layer_of(plan.items[x], plan.target, i, plan.layerCount))
                    bin.memberIdx.push_back(static_cast<u32>(x));
            });
            // Indices past the power-of-two prefix round-robin into bins.
            for (u64 x = nPow2; x < n; ++x) {
                if (x % bins == b &&
                    layer_of(plan.items[x], plan.target, i, plan.layerCount))
                    bin.memberIdx.push_back(static_cast<u32>(x));
            }
        }
        // Drop empty bins; they contribute factor 1.
        std::erase_if(layer.bins, [](const GfPlan::Bin& b) { return b.memberIdx.empty(); });
        for (auto& bin : layer.bins) {
            for (u32 idx : bin.memberIdx) {
                bin.maxValue = std::max(bin.maxValue, plan.items[idx]);
                bin.sumValue += plan.items[idx];
            }
            bin.degreeBound =
                std::min(std::min<u64>(plan.miniGroups, bin.memberIdx.size()) * bin.maxValue,
                         bin.sumValue);
        }
    }

    // Exact degree and coefficient-bit bounds for the whole product.
    u64 d = 0;
    long double wBits = 0.0L;
    for (const auto& layer : plan.layers) {
        for (const auto& bin : layer.bins) {
            d += bin.degreeBound;
            // Coefficient mass of one bin: sum over rounds of
            // prod(1 + |T_i|); bounded by rounds * max_round prod.
            long double maxRound = 0.0L;
            std::vector<u32> cnt(static_cast<std::size_t>(plan.miniGroups), 0);
            for (const auto& rf : plan.roundFuncs) {
                std::fill(cnt.begin(), cnt.end(), 0);
                for (u32 idx : bin.memberIdx)
                    ++cnt[static_cast<std::size_t>(pairwise_eval(rf, idx))];
                long double lg = 0.0L;
                for (u32 c : cnt)
                    if (c) lg += std::log2(1.0L + c);
                maxRound = std::max(maxRound, lg);
            }
            wBits += std::log2(static_cast<long double>(plan.rounds)) + maxRound;
        }
    }
    plan.degreeBound = std::max<u64>(d, 1);
    plan.coeffBitBound = static_cast<u64>(std::ceil(wBits)) + 2;

    u64 words = plan.roundFuncs.size() * 4;
    for (const auto& layer : plan.layers)
        for (const auto& bin : layer.bins) words += bin.memberIdx.size() / 2 + 4;
    plan.planWords = words;
    meter.alloc(words);
    return plan;
}

void release_gf_plan(const GfPlan& plan, SpaceMeter& meter) {
    meter.release(plan.planWords);
}

Fe partition_level2_plan(const FieldCtx& ctx, const GfPlan& plan,
                         const GfPlan::Bin& bin, std::span<const Fe> powers,
                         SpaceMeter& meter) {
    const u64 k2 = plan.miniGroups;
    Fe u = ctx.zero();
    if (plan.strictLogspace) {
        // One accumulator, k^2 passes of the bin per round.
        ScopedWords live(&meter, 3 * ctx.words_per_element());
        for (const auto& rf : plan.roundFuncs) {
            Fe w = ctx.one();
            for (u64 g = 0; g < k2; ++g) {
                Fe s = ctx.zero();
                for (u32 idx : bin.memberIdx)
                    if (pairwise_eval(rf, idx) == g) s = ctx.add(s, powers[idx]);
                w = ctx.mul(w, ctx.add(ctx.one(), s));
            }
            u = ctx.add(u, w);
        }
        return u;
    }

    // k^2 accumulators, one pass of the bin per round. Epoch tags avoid
    // clearing all slots between rounds.
    ScopedWords live(&meter, k2 * ctx.words_per_element() + k2 / 2 + bin.memberIdx.size() / 2);
    std::vector<Fe> acc(static_cast<std::size_t>(k2));
    std::vector<u32> epoch(static_cast<std::size_t>(k2), 0);
    std::vector<u32> touched;
    touched.reserve(bin.memberIdx.size());
    u32 round = 0;
    for (const auto& rf : plan.roundFuncs) {
        ++round;
        touched.clear();
        for (u32 idx : bin.memberIdx) {
            const auto g = static_cast<std::size_t>(pairwise_eval(rf, idx));
            if (epoch[g] != round) {
                epoch[g] = round;
                acc[g] = ctx.zero();
                touched.push_back(static_cast<u32>(g));
            }
            acc[g] = ctx.add(acc[g], powers[idx]);
        }
        Fe w = ctx.one();
        for (u32 g : touched) w = ctx.mul(w, ctx.add(ctx.one(), acc[g]));
        u = ctx.add(u, w);
    }
    return u;
}

Fe partition_level1_plan(const FieldCtx& ctx, const GfPlan& plan, unsigned layer,
                         std::span<const Fe> powers, SpaceMeter& meter) {
    Fe u = ctx.one();
    for (const auto& bin : plan.layers[layer - 1].bins)
        u = ctx.mul(u, partition_level2_plan(ctx, plan, bin, powers, meter));
    return u;
}

Fe evaluate_gf_plan(const FieldCtx& ctx, Fe x, const GfPlan& plan, SpaceMeter& meter) {
    ScopedWords powersW(&meter, plan.items.size() * ctx.words_per_element());
    std::vector<Fe> powers(plan.items.size());
    for (std::size_t i = 0; i < plan.items.size(); ++i)
        powers[i] = ctx.pow(x, plan.items[i]);
    Fe u = ctx.one();
    for (unsigned i = 1; i <= plan.layerCount && !plan.items.empty(); ++i)
        u = ctx.mul(u, partition_level1_plan(ctx, plan, i, powers, meter));
    return u;
}

Fe evaluate_gf(const FieldCtx& ctx, Fe x, const SubsetSumInstance& inst,
               const SeedPack& seeds, const RandConfig& cfg, SpaceMeter& meter) {
    GfPlan plan = build_gf_plan(inst, cfg, seeds, meter);
    const Fe v = evaluate_gf_plan(ctx, x, plan, meter);
    release_gf_plan(plan, meter);
    return v;
}

Fe partition_level2(const FieldCtx& ctx, Fe x, std::span<const u64> values, u64 k,
                    const SeedPack& seeds, const RandConfig& cfg, SpaceMeter& meter) {
    SubsetSumInstance pseudo;
    pseudo.items.assign(values.begin(), values.end());
    pseudo.target = 1;
    RandConfig c = cfg;
    c.loadParamOverride = k;
    GfPlan plan = build_gf_plan(pseudo, c, seeds, meter);
    GfPlan::Bin bin;
    for (u32 i = 0; i < values.size(); ++i) bin.memberIdx.push_back(i);
    ScopedWords powersW(&meter, values.size() * ctx.words_per_element());
    std::vector<Fe> powers(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) powers[i] = ctx.pow(x, values[i]);
    const Fe v = partition_level2_plan(ctx, plan, bin, powers, meter);
    release_gf_plan(plan, meter);
    return v;
}

Fe partition_level1(const FieldCtx& ctx, Fe x, unsigned layerIndex,
                    const SubsetSumInstance& inst, const SeedPack& seeds,
                    const RandConfig& cfg, SpaceMeter& meter) {
    GfPlan plan = build_gf_plan(inst, cfg, seeds, meter);
    ScopedWords powersW(&meter, plan.items.size() * ctx.words_per_element());
    std::vector<Fe> powers(plan.items.size());
    for (std::size_t i = 0; i < plan.items.size(); ++i)
        powers[i] = ctx.pow(x, plan.items[i]);
    Fe v;
    if (layerIndex == 0) {
        // Degenerate single-bin case: one level-2 call over everything.
        GfPlan::Bin bin;
        for (u32 i = 0; i < plan.items.size(); ++i) bin.memberIdx.push_back(i);
        v = partition_level2_plan(ctx, plan, bin, powers, meter);
    } else {
        v = partition_level1_plan(ctx, plan, layerIndex, powers, meter);
    }
    release_gf_plan(plan, meter);
    return v;
}

Evaluator make_gf_evaluator(const GfPlan& plan) {
    Evaluator ev;
    ev.d = plan.degreeBound;
    ev.w = std::max<u64>(plan.coeffBitBound, 1);
    ev.eval = [&plan](const FieldCtx& ctx, Fe x, SpaceMeter& meter) {
        return evaluate_gf_plan(ctx, x, plan, meter);
    };
    return ev;
}

SolveOutcome solve_rand(const SubsetSumInstance& inst, const RandConfig& cfg,
                        u64 masterSeed) {
    const auto start = std::chrono::steady_clock::now();
    SolveOutcome out;
    const SubsetSumInstance norm = normalized(inst);
    SeedPack seeds = SeedPack::from_master(masterSeed);
    GfPlan plan = build_gf_plan(norm, cfg, seeds, out.meter);
    if (plan.degreeBound < norm.target || norm.items.empty()) {
        // Every monomial exponent is a genuine subset sum <= degreeBound.
        out.answer = Answer::No;
    } else {
        Evaluator ev = make_gf_evaluator(plan);
        u64 drawBits = 0;
        BitReader draw(seeds.draw);
        out.answer = coeff_test_randomized(ev, CoeffQuery::point(norm.target), draw,
                                           out.meter, &drawBits);
    }
    release_gf_plan(plan, out.meter);
    out.randomBitsUsed = seeds.bits_used();
    out.wallTime = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start);
    return out;
}

} // namespace lowss
