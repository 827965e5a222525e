#include <doctest.h>

#include <random>

#include <lowss/oracle.hpp>
#include <lowss/solver_rand.hpp>

using namespace lowss;

namespace {

// Integer-coefficient reference expansion of the plan's polynomial, built
// from the same layer/bin/round structure the solver uses.
std::vector<u128> reference_poly(const GfPlan& plan) {
    std::vector<u128> poly{1};
    auto mul_into = [](std::vector<u128>& acc, const std::vector<u128>& f) {
        std::vector<u128> out(acc.size() + f.size() - 1, 0);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            if (!acc[i]) continue;
            for (std::size_t j = 0; j < f.size(); ++j) out[i + j] += acc[i] * f[j];
        }
        acc = std::move(out);
    };
    for (const auto& layer : plan.layers) {
        for (const auto& bin : layer.bins) {
            std::vector<u128> binPoly{0};
            for (const auto& rf : plan.roundFuncs) {
                std::vector<std::vector<u64>> groups(plan.miniGroups);
                for (u32 idx : bin.memberIdx)
                    groups[pairwise_eval(rf, idx)].push_back(plan.items[idx]);
                std::vector<u128> roundPoly{1};
                for (const auto& g : groups) {
                    if (g.empty()) continue;
                    std::vector<u128> factor(1, 1);
                    for (u64 a : g) {
                        if (factor.size() <= a) factor.resize(a + 1, 0);
                        factor[a] += 1;
                    }
                    mul_into(roundPoly, factor);
                }
                if (binPoly.size() < roundPoly.size()) binPoly.resize(roundPoly.size(), 0);
                for (std::size_t i = 0; i < roundPoly.size(); ++i)
                    binPoly[i] += roundPoly[i];
            }
            mul_into(poly, binPoly);
        }
    }
    return poly;
}

u128 eval_ref_mod(const std::vector<u128>& poly, const FieldCtx& F, Fe x) {
    Fe acc = F.zero();
    for (std::size_t i = poly.size(); i-- > 0;) {
        acc = F.mul(acc, x);
        acc = F.add(acc, F.from_uint(static_cast<u64>(poly[i] % F.p())));
    }
    return acc.a;  // prime-field tests only
}

SubsetSumInstance make(std::vector<u64> items, u64 t) {
    return SubsetSumInstance{std::move(items), t};
}

} // namespace

TEST_CASE("layer membership follows the half-open value ranges") {
    // t = 12: layer 1 is (6,12], layer 2 is (3,6], the last layer catches
    // the rest.
    CHECK(layer_of(7, 12, 1, 4));
    CHECK(layer_of(12, 12, 1, 4));
    CHECK_FALSE(layer_of(6, 12, 1, 4));
    CHECK_FALSE(layer_of(3, 12, 2, 4));
    CHECK(layer_of(3, 12, 3, 4));
    CHECK(layer_of(3, 12, 3, 3));  // last layer is the complement
    CHECK(layer_of(1, 12, 4, 4));
    CHECK_THROWS_AS(layer_of(1, 12, 0, 4), std::invalid_argument);

    // Every normalized value lands in exactly one layer.
    std::mt19937_64 rng(101);
    for (int round = 0; round < 200; ++round) {
        const u64 t = 1 + rng() % 1000;
        const u64 a = 1 + rng() % t;
        const unsigned L = 1 + rng() % 6;
        int hits = 0;
        for (unsigned i = 1; i <= L; ++i) hits += layer_of(a, t, i, L);
        CHECK(hits == 1);
    }
}

TEST_CASE("partition_level2 hand examples") {
    const FieldCtx F = make_field(101, 1);
    const SeedPack seeds = SeedPack::from_master(7);
    RandConfig cfg;
    SpaceMeter meter;
    const Fe x = F.from_uint(5);

    SUBCASE("empty stream returns the round count") {
        const Fe u = partition_level2(F, x, {}, 3, seeds, cfg, meter);
        // rounds = walkC * layerCount = 4 for an empty pseudo-instance
        CHECK(u == F.from_uint(4 % F.p()));
    }
    SUBCASE("single element gives m*(1+x^a)") {
        const std::vector<u64> vals{9};
        const Fe u = partition_level2(F, x, vals, 3, seeds, cfg, meter);
        const Fe expect = F.mul_scalar(F.add(F.one(), F.pow(x, 9)), 4);
        CHECK(u == expect);
    }
    SUBCASE("x=1 yields the exact coefficient mass") {
        const std::vector<u64> vals{3, 5, 5, 9};
        SubsetSumInstance pseudo{vals, 1};
        RandConfig c = cfg;
        c.loadParamOverride = 2;
        GfPlan plan = build_gf_plan(pseudo, c, seeds, meter);
        u64 mass = 0;
        for (const auto& rf : plan.roundFuncs) {
            std::vector<u64> cnt(plan.miniGroups, 0);
            for (u32 idx = 0; idx < vals.size(); ++idx) ++cnt[pairwise_eval(rf, idx)];
            u64 prod = 1;
            for (u64 c2 : cnt) prod *= (1 + c2);
            mass += prod;
        }
        release_gf_plan(plan, meter);
        const Fe u = partition_level2(F, F.one(), vals, 2, seeds, cfg, meter);
        CHECK(u == F.from_uint(mass % F.p()));
    }
    CHECK(meter.current_words() == 0);
}

TEST_CASE("partition_level1 skips empty bins") {
    const FieldCtx F = make_field(101, 1);
    const SeedPack seeds = SeedPack::from_master(11);
    RandConfig cfg;
    SpaceMeter meter;

    SUBCASE("empty layer contributes one") {
        // items all land in layer 1; deeper layers are empty
        const SubsetSumInstance inst = make({10, 12}, 12);
        const Fe v = partition_level1(F, F.from_uint(3), 2, inst, seeds, cfg, meter);
        CHECK(v == F.one());
    }
    SUBCASE("degenerate single bin equals a level-2 call over the layer") {
        const SubsetSumInstance inst = make({5}, 5);
        const Fe direct = partition_level1(F, F.from_uint(3), 0, inst, seeds, cfg, meter);
        const Fe lvl2 = partition_level2(F, F.from_uint(3), std::vector<u64>{5}, 2,
                                         seeds, cfg, meter);
        CHECK(direct == lvl2);
    }
    SUBCASE("x=1 mass equals the two-loop reference") {
        const SubsetSumInstance inst = make({7, 9, 12, 3, 2, 11}, 12);
        GfPlan plan = build_gf_plan(normalized(inst), cfg, seeds, meter);
        const auto ref = reference_poly(plan);
        u128 mass = 0;
        for (u128 c : ref) mass += c;
        const Fe v = evaluate_gf_plan(F, F.one(), plan, meter);
        CHECK(v == F.from_uint(static_cast<u64>(mass % F.p())));
        release_gf_plan(plan, meter);
    }
    CHECK(meter.current_words() == 0);
}

TEST_CASE("evaluate_gf equals its reference expansion at every point") {
    std::mt19937_64 rng(103);
    SpaceMeter meter;
    RandConfig cfg;
    for (int round = 0; round < 12; ++round) {
        const std::size_t n = 1 + rng() % 6;
        std::vector<u64> items(n);
        const u64 t = 2 + rng() % 24;
        for (auto& a : items) a = 1 + rng() % t;
        const SubsetSumInstance inst = make(items, t);
        const SeedPack seeds = SeedPack::from_master(rng());
        GfPlan plan = build_gf_plan(normalized(inst), cfg, seeds, meter);
        const auto ref = reference_poly(plan);
        REQUIRE(ref.size() <= plan.degreeBound + 1);

        const FieldCtx F = make_field(211, 1);
        for (u64 xi = 1; xi < 30; ++xi) {
            const Fe x = F.from_uint(xi);
            const Fe got = evaluate_gf_plan(F, x, plan, meter);
            CHECK(got.a == eval_ref_mod(ref, F, x));
        }

        // Monomial soundness: every exponent with a nonzero coefficient is a
        // realizable subset sum of the normalized items.
        const auto norm = normalized(inst);
        std::vector<bool> reachable(ref.size(), false);
        reachable[0] = true;
        for (u64 a : norm.items)
            for (std::size_t s = reachable.size(); s-- > a;)
                if (reachable[s - a]) reachable[s] = true;
        for (std::size_t e = 0; e < ref.size(); ++e)
            if (ref[e] != 0) CHECK(reachable[e]);

        // Coefficient-bit bound covers the largest coefficient.
        u128 maxCoeff = 0;
        for (u128 c : ref) maxCoeff = std::max(maxCoeff, c);
        u64 bits = 0;
        while (maxCoeff) {
            ++bits;
            maxCoeff >>= 1;
        }
        CHECK(bits <= plan.coeffBitBound);
        release_gf_plan(plan, meter);
    }
    CHECK(meter.current_words() == 0);
}

TEST_CASE("strict logspace mode computes the same values") {
    SpaceMeter meter;
    RandConfig fast, strict;
    strict.strictLogspace = true;
    const SubsetSumInstance inst = make({3, 7, 7, 12, 2}, 14);
    const SeedPack seeds = SeedPack::from_master(5);
    const FieldCtx F = make_field(97, 1);
    for (u64 xi = 1; xi < 20; ++xi) {
        const Fe a = evaluate_gf(F, F.from_uint(xi), inst, seeds, fast, meter);
        const Fe b = evaluate_gf(F, F.from_uint(xi), inst, seeds, strict, meter);
        CHECK(a == b);
    }
    CHECK(meter.current_words() == 0);
}

TEST_CASE("solve_rand on the hand instances") {
    RandConfig cfg;
    SUBCASE("[3,5,7] t=12 is detected") {
        int yes = 0;
        for (u64 seed = 0; seed < 20; ++seed)
            yes += solve_rand(make({3, 5, 7}, 12), cfg, seed).answer == Answer::Yes;
        CHECK(yes >= 17);
    }
    SUBCASE("[3,5,7] t=11 is never YES") {
        for (u64 seed = 0; seed < 40; ++seed)
            CHECK(solve_rand(make({3, 5, 7}, 11), cfg, seed).answer == Answer::No);
    }
    SUBCASE("singleton") {
        CHECK(solve_rand(make({1}, 1), cfg, 3).answer == Answer::Yes);
    }
    SUBCASE("meter restores and seed usage is reported") {
        const SolveOutcome out = solve_rand(make({3, 5, 7}, 12), cfg, 9);
        CHECK(out.meter.current_words() == 0);
        CHECK(out.randomBitsUsed > 0);
    }
}

TEST_CASE("one-sidedness on random NO instances") {
    std::mt19937_64 rng(107);
    RandConfig cfg;
    int checked = 0;
    while (checked < 300) {
        const std::size_t n = 1 + rng() % 10;
        std::vector<u64> items(n);
        const u64 t = 8 + rng() % 57;
        for (auto& a : items) a = 1 + rng() % t;
        const SubsetSumInstance inst = make(items, t);
        if (dp_oracle(inst) == Answer::Yes) continue;
        ++checked;
        CHECK(solve_rand(inst, cfg, rng()).answer == Answer::No);
    }
}

TEST_CASE("detection rate on planted instances, both families") {
    std::mt19937_64 rng(109);
    for (const auto family :
         {RandConfig::Family::LogLog, RandConfig::Family::ConstDepth}) {
        RandConfig cfg;
        cfg.family = family;
        int yes = 0;
        const int trials = 60;
        for (int trial = 0; trial < trials; ++trial) {
            const std::size_t n = 2 + rng() % 15;
            std::vector<u64> items(n);
            for (auto& a : items) a = 1 + rng() % 100;
            u64 t = 0;
            while (t == 0)
                for (u64 a : items)
                    if (rng() & 1) t += a;
            const SubsetSumInstance inst = make(items, t);
            yes += solve_rand(inst, cfg, rng()).answer == Answer::Yes;
        }
        CHECK(yes >= trials * 9 / 10);
    }
}

TEST_CASE("space and seed budgets") {
    RandConfig cfg;
    SUBCASE("peak words stay flat as t grows at fixed n") {
        std::vector<u64> peaks;
        for (u64 t : {u64(1) << 8, u64(1) << 10, u64(1) << 12}) {
            std::vector<u64> items;
            SplitMix rng(31337);
            for (int i = 0; i < 16; ++i) items.push_back(1 + rng.below(t));
            SpaceMeter meter;
            const SeedPack seeds = SeedPack::from_master(13);
            GfPlan plan = build_gf_plan(make(items, t), cfg, seeds, meter);
            const FieldCtx F = make_field(10007, 1);
            evaluate_gf_plan(F, F.from_uint(77), plan, meter);
            release_gf_plan(plan, meter);
            peaks.push_back(meter.peak_words());
        }
        CHECK(peaks[2] <= 2 * peaks[0]);
    }
    SUBCASE("LogLog seed bits stay below C log n loglog n") {
        for (unsigned nBits : {8u, 10u, 12u}) {
            std::vector<u64> items;
            SplitMix rng(nBits);
            const u64 n = u64(1) << nBits;
            const u64 t = 4096;
            for (u64 i = 0; i < n; ++i) items.push_back(1 + rng.below(t));
            SpaceMeter meter;
            const SeedPack seeds = SeedPack::from_master(17);
            GfPlan plan = build_gf_plan(make(items, t), cfg, seeds, meter);
            release_gf_plan(plan, meter);
            u64 lglg = 1;
            while ((u64(1) << lglg) < nBits) ++lglg;
            CHECK(seeds.bits_used() <= 40 * nBits * lglg);  // measured C = 40
        }
    }
    SUBCASE("ConstDepth seed bits stay below C log n") {
        RandConfig ccfg;
        ccfg.family = RandConfig::Family::ConstDepth;
        for (unsigned nBits : {8u, 10u, 12u}) {
            std::vector<u64> items;
            SplitMix rng(nBits);
            const u64 n = u64(1) << nBits;
            for (u64 i = 0; i < n; ++i) items.push_back(1 + rng.below(1000));
            SpaceMeter meter;
            const SeedPack seeds = SeedPack::from_master(19);
            GfPlan plan = build_gf_plan(make(items, 1000), ccfg, seeds, meter);
            release_gf_plan(plan, meter);
            CHECK(seeds.bits_used() <= 60 * nBits);  // measured C = 60
        }
    }
}
