#include <doctest.h>

#include <random>
#include <set>

#include <lowss/oracle.hpp>
#include <lowss/solver_det.hpp>
#include <lowss/solver_rand.hpp>

using namespace lowss;

namespace {

SubsetSumInstance make(std::vector<u64> items, u64 t) {
    return SubsetSumInstance{std::move(items), t};
}

// Symbolic mirror of the star recursion: slice k holds the set of subsets
// (as index masks) assigned weight class k. Derived directly from the
// product definition, independent of the field implementation.
struct SymbolicStar {
    u64 capExp;
    std::vector<std::set<u64>> slices;  // masks per slice, slice 0 implicit "1"
};

SymbolicStar symbolic_star(const SymbolicStar& P, const SymbolicStar& Q,
                           const StarEps& eps) {
    SymbolicStar R{P.capExp, std::vector<std::set<u64>>(P.capExp + 1)};
    for (u64 k = 1; k <= P.capExp; ++k) {
        for (u64 m : P.slices[k]) R.slices[k].insert(m);
        for (u64 m : Q.slices[k]) R.slices[k].insert(m);
    }
    for (u64 i = 1; i <= P.capExp; ++i)
        for (u64 j = 1; j <= Q.capExp; ++j) {
            if (P.slices[i].empty() || Q.slices[j].empty()) continue;
            const u64 u = u_exponent(i, j, eps);
            if (u > R.capExp) continue;
            for (u64 m1 : P.slices[i])
                for (u64 m2 : Q.slices[j]) R.slices[u].insert(m1 | m2);
        }
    return R;
}

SymbolicStar symbolic_build(u64 lo, u64 hi, u64 capExp, const StarEps& eps) {
    if (hi - lo == 1) {
        SymbolicStar leaf{capExp, std::vector<std::set<u64>>(capExp + 1)};
        leaf.slices[1].insert(u64(1) << lo);
        return leaf;
    }
    const u64 mid = lo + (hi - lo + 1) / 2;
    return symbolic_star(symbolic_build(lo, mid, capExp, eps),
                         symbolic_build(mid, hi, capExp, eps), eps);
}

} // namespace

TEST_CASE("u_exponent on exact rationals") {
    const StarEps one{1, 1};
    CHECK(u_exponent(1, 1, one) == 2);  // 4 >= 2+2 > 2
    CHECK(u_exponent(1, 2, one) == 3);  // 8 >= 6 > 4
    CHECK(u_exponent(2, 1, one) == 3);
    const StarEps quarter{1, 4};
    std::mt19937_64 rng(113);
    for (int round = 0; round < 60; ++round) {
        const u64 i = 1 + rng() % 12, j = 1 + rng() % 12;
        CHECK(u_exponent(i, j, quarter) == u_exponent(j, i, quarter));
        CHECK(u_exponent(i, j, quarter) > std::max(i, j));
    }
    CHECK_THROWS_AS(u_exponent(0, 1, one), std::invalid_argument);
}

TEST_CASE("ceil_log_base is exact") {
    const StarEps one{1, 1};
    CHECK(ceil_log_base(one, 1) == 0);
    CHECK(ceil_log_base(one, 2) == 1);
    CHECK(ceil_log_base(one, 5) == 3);
    const StarEps quarter{1, 4};
    CHECK(ceil_log_base(quarter, 16) == 13);  // 1.25^13 ~ 18.2 >= 16 > 1.25^12 ~ 14.55
}

TEST_CASE("star_product identities") {
    const FieldCtx F = make_field(13, 1);
    const StarEps one{1, 1};
    const u64 cap = 6;
    const UTable table = build_u_table(one, cap);

    StarPoly A = StarPoly::one(F, cap);
    A.coeffs[1] = F.from_uint(5);
    A.topSlice = 1;
    SUBCASE("product with one is the identity") {
        const StarPoly B = star_product(A, StarPoly::one(F, cap), table);
        for (u64 k = 0; k <= cap; ++k) CHECK(B.coeffs[k] == A.coeffs[k]);
    }
    SUBCASE("(1+yA)*(1+yB) = 1 + y(A+B) + y^2 AB under eps=1") {
        StarPoly B = StarPoly::one(F, cap);
        B.coeffs[1] = F.from_uint(7);
        B.topSlice = 1;
        const StarPoly C = star_product(A, B, table);
        CHECK(C.coeffs[0] == F.one());
        CHECK(C.coeffs[1] == F.from_uint(12));
        CHECK(C.coeffs[2] == F.from_uint(35 % 13));
        CHECK(C.coeffs[3] == F.zero());
    }
}

TEST_CASE("approx_count hand examples") {
    SpaceMeter meter;
    const FieldCtx F = make_field(13, 1);
    SUBCASE("L={3,5} z=2 at x=2 gives 11") {
        const std::vector<u64> vals{3, 5};
        CHECK(approx_count(F, F.from_uint(2), vals, 2, meter) == F.from_uint(11));
    }
    SUBCASE("empty list gives 1") {
        CHECK(approx_count(F, F.from_uint(2), {}, 4, meter) == F.one());
    }
    SUBCASE("z >= m matches the exact product") {
        std::mt19937_64 rng(127);
        for (int round = 0; round < 20; ++round) {
            const std::size_t m = 1 + rng() % 7;
            std::vector<u64> vals(m);
            for (auto& v : vals) v = 1 + rng() % 12;
            const Fe x = F.from_uint(1 + rng() % 12);
            Fe expect = F.one();
            for (u64 v : vals) expect = F.mul(expect, F.add(F.one(), F.pow(x, v)));
            CHECK(approx_count(F, x, vals, m, meter) == expect);
        }
    }
    CHECK(meter.current_words() == 0);
}

TEST_CASE("weight classes track subset sizes within the stated bounds") {
    // Brute-force verification of the product recursion: every nonempty
    // subset appears at exactly one class k with
    // log_{1+eps}|S| <= k <= 1 + log_{1+eps}|S| + ceil(log2 m).
    std::mt19937_64 rng(131);
    for (int round = 0; round < 12; ++round) {
        const u64 m = 2 + rng() % 11;
        const StarEps eps{1, std::max<u64>(1, [&] {
            u64 b = 0;
            while ((u64(1) << b) < m) ++b;
            return b;
        }())};
        u64 lg2m = 0;
        while ((u64(1) << lg2m) < m) ++lg2m;
        const u64 capExp = 1 + ceil_log_base(eps, m) + lg2m;
        const SymbolicStar F = symbolic_build(0, m, capExp, eps);

        std::vector<u64> classOf(u64(1) << m, 0);
        std::vector<int> hits(u64(1) << m, 0);
        for (u64 k = 1; k <= capExp; ++k)
            for (u64 mask : F.slices[k]) {
                ++hits[mask];
                classOf[mask] = k;
            }
        const BigUint a(eps.den + eps.num), b(eps.den);
        for (u64 mask = 1; mask < (u64(1) << m); ++mask) {
            CHECK(hits[mask] == 1);  // unique class, coefficient one
            const u64 k = classOf[mask];
            const u64 size = static_cast<u64>(__builtin_popcountll(mask));
            // (1+eps)^k >= size  and  size*(1+eps)^(1+lg2m) >= (1+eps)^(k - ...)
            CHECK(a.pow(k) >= BigUint(size) * b.pow(k));
            const u64 upper = 1 + ceil_log_base(eps, size) + lg2m;
            CHECK(k <= upper);
        }
    }
}

TEST_CASE("kept subsets obey both approx_count properties") {
    // Property 1: every subset of size <= z is kept. Property 2: nothing
    // kept exceeds the capped size class.
    std::mt19937_64 rng(137);
    for (int round = 0; round < 12; ++round) {
        const u64 m = 2 + rng() % 11;
        const u64 z = 1 + rng() % m;
        u64 lg2m = 0;
        while ((u64(1) << lg2m) < m) ++lg2m;
        const StarEps eps{1, std::max<u64>(1, lg2m)};
        const u64 capExp = 1 + ceil_log_base(eps, m) + lg2m;
        const u64 keepCap = 1 + ceil_log_base(eps, z) + lg2m;
        const SymbolicStar F = symbolic_build(0, m, capExp, eps);

        std::set<u64> kept;
        kept.insert(0);
        for (u64 k = 1; k <= std::min(keepCap, capExp); ++k)
            for (u64 mask : F.slices[k]) kept.insert(mask);

        const BigUint a(eps.den + eps.num), b(eps.den);
        for (u64 mask = 0; mask < (u64(1) << m); ++mask) {
            const u64 size = static_cast<u64>(__builtin_popcountll(mask));
            if (size <= z) CHECK(kept.count(mask) == 1);
        }
        for (u64 mask : kept) {
            const u64 size = static_cast<u64>(__builtin_popcountll(mask));
            // size <= z * (1+eps)^(1 + lg2m)
            CHECK(BigUint(size) * b.pow(1 + lg2m) <= BigUint(z) * a.pow(1 + lg2m));
        }
    }
}

TEST_CASE("evaluate2 symbolic support matches the table oracle") {
    std::mt19937_64 rng(139);
    SpaceMeter meter;
    for (int round = 0; round < 25; ++round) {
        const std::size_t n = 1 + rng() % 6;
        std::vector<u64> items(n);
        const u64 t = 2 + rng() % 30;
        for (auto& a : items) a = 1 + rng() % t;
        const SubsetSumInstance inst = make(items, t);
        // Polynomial identity check at many points of a large prime field.
        DetPlan plan = build_det_plan(normalized(inst), meter);
        const FieldCtx F = make_field(4099, 1);
        // reference: sum over kept subsets of x^sum; enumerate subsets per
        // layer with the symbolic recursion.
        std::vector<u64> layerOfIdx(n, 0);
        const auto norm = normalized(inst);
        for (std::size_t i = 0; i < norm.items.size(); ++i) {
            for (unsigned L = 1; L <= layer_count(norm.items.size()); ++L)
                if (layer_of(norm.items[i], t, L, layer_count(norm.items.size())))
                    layerOfIdx[i] = L;
        }
        for (u64 xi : {3u, 5u, 19u, 100u}) {
            const Fe x = F.from_uint(xi);
            Fe expect = F.one();
            std::size_t layerIdx = 0;
            for (unsigned L = 1; L <= layer_count(norm.items.size()); ++L) {
                std::vector<u64> vals;
                for (std::size_t i = 0; i < norm.items.size(); ++i)
                    if (layerOfIdx[i] == L) vals.push_back(norm.items[i]);
                if (vals.empty()) continue;
                ++layerIdx;
                expect = F.mul(expect, approx_count(F, x, vals, u64(1) << L, meter));
            }
            CHECK(evaluate2_plan(F, x, plan, meter) == expect);
            (void)layerIdx;
        }
        release_det_plan(plan, meter);
    }
    CHECK(meter.current_words() == 0);
}

TEST_CASE("evaluate2 contains x^t exactly for YES instances") {
    // Exact support check for small n: expand the kept-subset polynomial
    // over the integers and compare the x^t presence with the table oracle.
    std::mt19937_64 rng(149);
    SpaceMeter meter;
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 1 + rng() % 6;
        std::vector<u64> items(n);
        const u64 t = 2 + rng() % 30;
        for (auto& a : items) a = 1 + rng() % t;
        const SubsetSumInstance inst = make(items, t);
        CHECK(solve_det(inst).answer == dp_oracle(inst));
    }
}

TEST_CASE("solve_det hand examples") {
    CHECK(solve_det(make({3, 5, 7}, 12)).answer == Answer::Yes);
    CHECK(solve_det(make({3, 5, 7}, 11)).answer == Answer::No);
    CHECK(solve_det(make({2}, 1)).answer == Answer::No);
    const SolveOutcome out = solve_det(make({3, 5, 7}, 12));
    CHECK(out.randomBitsUsed == 0);
    CHECK(out.meter.current_words() == 0);
}

TEST_CASE("solve_det agrees with the table solver on random instances") {
    std::mt19937_64 rng(151);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 1 + rng() % 12;
        std::vector<u64> items(n);
        const u64 t = 1 + rng() % 120;
        for (auto& a : items) a = 1 + rng() % 130;
        const SubsetSumInstance inst = make(items, t);
        CHECK(solve_det(inst).answer == dp_oracle(inst));
    }
}

TEST_CASE("star recursion space stays within depth times slice words") {
    SpaceMeter meter;
    const FieldCtx F = make_field(101, 1);
    std::vector<u64> vals(16);
    SplitMix rng(3);
    for (auto& v : vals) v = 1 + rng.below(50);
    const u64 m = vals.size();
    u64 lg2m = 0;
    while ((u64(1) << lg2m) < m) ++lg2m;
    const StarEps eps{1, lg2m};
    const u64 capExp = 1 + ceil_log_base(eps, m) + lg2m;
    approx_count(F, F.from_uint(7), vals, 4, meter);
    CHECK(meter.current_words() == 0);
    // depth(16 leaves) = 5 levels of live polynomials plus the powers cache
    CHECK(meter.peak_words() <= (lg2m + 1) * (capExp + 1) + m + 16);
}
