#include <doctest.h>

#include <random>
#include <set>

#include <lowss/oracle.hpp>
#include <lowss/solver_tradeoff.hpp>

using namespace lowss;

namespace {

SubsetSumInstance make(std::vector<u64> items, u64 t) {
    return SubsetSumInstance{std::move(items), t};
}

std::vector<u64> all_divisors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    return out;
}

} // namespace

TEST_CASE("plan_batches on F_13 with S=3") {
    const FieldCtx F = make_field(13, 1);
    const BatchPlan plan = plan_batches(F, 3);
    CHECK(plan.e == 4);

    const auto p0 = plan.points(0);
    std::vector<u64> v0;
    for (const Fe& b : p0) v0.push_back(b.a);
    CHECK(v0 == std::vector<u64>{1, 8, 12, 5});
    CHECK(plan.modulus(0).h == F.one());

    const auto p1 = plan.points(1);
    std::vector<u64> v1;
    for (const Fe& b : p1) v1.push_back(b.a);
    CHECK(v1 == std::vector<u64>{2, 3, 11, 10});
    CHECK(plan.modulus(1).h == F.from_uint(3));  // 2^4 = 16 = 3

    CHECK_THROWS_AS(plan_batches(F, 5), std::invalid_argument);
}

TEST_CASE("degenerate batch counts") {
    const FieldCtx F = make_field(13, 1);
    SUBCASE("S=1 is the whole unit group") {
        const BatchPlan plan = plan_batches(F, 1);
        CHECK(plan.e == 12);
        CHECK(plan.modulus(0).h == F.one());
        std::set<u64> pts;
        for (const Fe& b : plan.points(0)) pts.insert(F.index_of(b));
        CHECK(pts.size() == 12);
    }
    SUBCASE("S=q-1 gives singleton batches with linear moduli") {
        const BatchPlan plan = plan_batches(F, 12);
        CHECK(plan.e == 1);
        for (u64 j = 0; j < 12; ++j) {
            const auto pts = plan.points(j);
            REQUIRE(pts.size() == 1);
            // B_j(x) = x - g^j vanishes exactly on the one point.
            CHECK(plan.modulus(j).h == pts[0]);
        }
    }
}

TEST_CASE("batch moduli expand to the coset products") {
    // For every prime power q <= 101 and every divisor S of q-1, the dense
    // expansion of prod (x - b) over a batch equals x^e - g^(j e).
    std::vector<std::pair<u64, int>> fields;
    for (u64 p = 2; p <= 101; ++p)
        if (is_prime_u64(p)) fields.push_back({p, 1});
    for (u64 p : {2, 3, 5, 7}) fields.push_back({p, 2});

    for (const auto& [p, k] : fields) {
        const FieldCtx F = make_field(p, k);
        const u64 q = F.q();
        if (q > 101) continue;
        for (u64 S : all_divisors(q - 1)) {
            const BatchPlan plan = plan_batches(F, S);
            std::set<u64> seen;
            for (u64 j = 0; j < S; ++j) {
                const auto pts = plan.points(j);
                DensePoly prod = DensePoly::constant(F, F.one());
                for (const Fe& b : pts) {
                    DensePoly lin(F);
                    lin.set_coeff(1, F.one());
                    lin.set_coeff(0, F.neg(b));
                    prod = poly_mul(prod, lin);
                    CHECK(seen.insert(F.index_of(b)).second);  // pairwise disjoint
                }
                const BinomialModulus mod = plan.modulus(j);
                CHECK(prod.degree() == static_cast<long long>(mod.e));
                CHECK(prod.coeff(static_cast<std::size_t>(mod.e)) == F.one());
                CHECK(prod.coeff(0) == F.neg(mod.h));
                for (u64 i = 1; i < mod.e; ++i) CHECK(F.is_zero(prod.coeff(i)));
            }
            CHECK(seen.size() == q - 1);  // the batches cover all units
        }
    }
}

TEST_CASE("evaluate_batch agrees with pointwise evaluation") {
    std::mt19937_64 rng(157);
    RandConfig cfg;
    for (int round = 0; round < 10; ++round) {
        const std::size_t n = 1 + rng() % 8;
        const u64 t = 4 + rng() % 37;
        std::vector<u64> items(n);
        for (auto& a : items) a = 1 + rng() % t;
        const SubsetSumInstance inst = normalized(make(items, t));
        const SeedPack seeds = SeedPack::from_master(rng());
        SpaceMeter meter;
        GfPlan gfPlan = build_gf_plan(inst, cfg, seeds, meter);

        const u64 p = (round % 2) ? 101 : 97;
        const FieldCtx F = make_field(p, 1);
        for (u64 S : all_divisors(p - 1)) {
            if (S > 8 && S != p - 1) continue;
            const BatchPlan batches = plan_batches(F, S);
            for (u64 j = 0; j < std::min<u64>(S, 3); ++j) {
                const auto values = evaluate_batch(gfPlan, batches, j, meter);
                const auto pts = batches.points(j);
                REQUIRE(values.size() == pts.size());
                for (std::size_t i = 0; i < pts.size(); ++i)
                    CHECK(values[i] == evaluate_gf_plan(F, pts[i], gfPlan, meter));
            }
        }
        release_gf_plan(gfPlan, meter);
        CHECK(meter.current_words() == 0);
    }
}

TEST_CASE("evaluate_batch on the empty instance is identically one") {
    SpaceMeter meter;
    const SeedPack seeds = SeedPack::from_master(3);
    RandConfig cfg;
    GfPlan gfPlan = build_gf_plan(make({}, 5), cfg, seeds, meter);
    const FieldCtx F = make_field(17, 1);
    const BatchPlan batches = plan_batches(F, 4);
    for (u64 j = 0; j < 4; ++j)
        for (const Fe& v : evaluate_batch(gfPlan, batches, j, meter))
            CHECK(v == F.one());
    release_gf_plan(gfPlan, meter);
}

TEST_CASE("solve_tradeoff hand examples") {
    for (u64 k : {1, 2, 4}) {
        int yes = 0;
        for (u64 seed = 0; seed < 10; ++seed)
            yes += solve_tradeoff(make({3, 5, 7}, 12), k, seed).answer == Answer::Yes;
        CHECK(yes >= 8);
        for (u64 seed = 0; seed < 10; ++seed)
            CHECK(solve_tradeoff(make({3, 5, 7}, 11), k, seed).answer == Answer::No);
    }
    CHECK_THROWS_AS(solve_tradeoff(make({3, 5, 7}, 12), 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(solve_tradeoff(make({3, 5, 7}, 12), 9, 1), std::invalid_argument);
}

TEST_CASE("solve_tradeoff agrees with the table solver") {
    std::mt19937_64 rng(163);
    int yesTotal = 0, yesGot = 0;
    for (int round = 0; round < 30; ++round) {
        const std::size_t n = 2 + rng() % 10;
        const u64 t = 8 + rng() % 90;
        std::vector<u64> items(n);
        for (auto& a : items) a = 1 + rng() % t;
        const SubsetSumInstance inst = make(items, t);
        const Answer truth = dp_oracle(inst);
        const u64 maxK = std::min<u64>(normalized(inst).items.size(), t);
        for (u64 k : {u64(1), u64(2), u64(4)}) {
            if (k > std::max<u64>(maxK, 1)) continue;
            const Answer got = solve_tradeoff(inst, k, rng()).answer;
            if (truth == Answer::No) {
                CHECK(got == Answer::No);
            } else {
                ++yesTotal;
                yesGot += got == Answer::Yes;
            }
        }
    }
    if (yesTotal > 0) CHECK(yesGot * 100 >= yesTotal * 90);
}

TEST_CASE("metered space shrinks as the batch count grows") {
    // Fixed field of order ~10^4; the residue length e = (q-1)/S drives the
    // peak footprint.
    std::vector<u64> items;
    SplitMix gen(2025);
    const u64 t = 2000;
    for (int i = 0; i < 24; ++i) items.push_back(1 + gen.below(t));
    const SubsetSumInstance inst = make(items, t);

    std::vector<u64> peaks;
    for (u64 S : {1, 2, 4, 8}) {
        TradeoffOptions opts;
        opts.forceQ = 10009;  // 10008 = 2^3 * 3^2 * 139
        opts.forceS = S;
        const SolveOutcome out = solve_tradeoff(inst, 4, 7, opts);
        peaks.push_back(out.meter.peak_words());
        CHECK(out.meter.current_words() == 0);
    }
    CHECK(peaks[0] >= 2 * peaks[3]);
}
