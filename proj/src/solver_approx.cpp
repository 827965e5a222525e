#include <lowss/solver_approx.hpp>

#include <atomic>
#include <cassert>
#include <thread>

#include <lowss/solver_rand.hpp>

namespace lowss {

namespace {

u64 ceil_div_u128(u128 a, u128 b) {
    return static_cast<u64>((a + b - 1) / b);
}

void check_eps(const WssapQuery& q) {
    if (q.epsNum == 0 || q.epsNum >= q.epsDen)
        throw std::invalid_argument("wssap: eps must satisfy 0 < num < den");
    if (q.inst.items.empty())
        throw std::invalid_argument("wssap: empty instance");
}

} // namespace

RoundedInstance round_alg1(const WssapQuery& query) {
    check_eps(query);
    const u64 n = query.inst.items.size();
    const u64 t = query.inst.target;
    const u64 num = query.epsNum, den = query.epsDen;
    RoundedInstance out;
    out.provenance = RoundingAlg::Alg1;
    // b_i = floor(a_i / N) with N = eps*t/(2n), as one exact division.
    for (u64 a : query.inst.items) {
        const u64 b = static_cast<u64>(static_cast<u128>(a) * 2 * n * den /
                                       (static_cast<u128>(num) * t));
        if (b > 0) out.items.push_back(b);
    }
    // Window [ceil((1-eps)*2n/eps), ceil(2n/eps)]: any rounded sum inside it
    // certifies an original sum in [(1-eps)t, (1+eps)t).
    out.lo = ceil_div_u128(static_cast<u128>(2) * n * (den - num), num);
    out.hi = ceil_div_u128(static_cast<u128>(2) * n * den, num);
    return out;
}

RoundedInstance round_alg2(const WssapQuery& query) {
    check_eps(query);
    const u64 t = query.inst.target;
    const u64 num = query.epsNum, den = query.epsDen;
    RoundedInstance out;
    out.provenance = RoundingAlg::Alg2;

    u128 smallSum = 0;  // h
    std::vector<u64> big;
    for (u64 a : query.inst.items) {
        if (static_cast<u128>(a) * den > static_cast<u128>(num) * t)
            big.push_back(a);
        else
            smallSum += a;
    }
    // Small items alone reach (1-eps)t: fill greedily, each step <= eps*t.
    if (smallSum * den >= static_cast<u128>(den - num) * t) {
        out.immediateYes = true;
        out.lo = 0;
        out.hi = 0;
        return out;
    }
    // b_i = floor(a_i / N) with N = eps^2*t/8.
    for (u64 a : big) {
        const u64 b = static_cast<u64>(static_cast<u128>(a) * 8 * den * den /
                                       (static_cast<u128>(num) * num * t));
        if (b > 0) out.items.push_back(b);
    }
    // Window [(t(1-eps)-h)/N, t(1+eps/2)/N] with the safe rounding
    // directions; the lower bound is positive here.
    const u128 gap = static_cast<u128>(t) * (den - num) - smallSum * den;  // t(1-eps)-h scaled by den
    out.lo = ceil_div_u128(static_cast<u128>(8) * den * gap,
                           static_cast<u128>(num) * num * t);
    out.hi = static_cast<u64>(static_cast<u128>(4) * den * (2 * den + num) /
                              (static_cast<u128>(num) * num));
    return out;
}

Answer solve_rounded(const RoundedInstance& rounded, u64 masterSeed) {
    if (rounded.immediateYes) return Answer::Yes;
    if (rounded.lo == 0) return Answer::Yes;  // the empty subset hits the window
    SubsetSumInstance pseudo;
    pseudo.target = rounded.hi;
    for (u64 b : rounded.items)
        if (b <= rounded.hi) pseudo.items.push_back(b);

    SpaceMeter meter;
    SeedPack seeds = SeedPack::from_master(masterSeed);
    RandConfig cfg;
    GfPlan plan = build_gf_plan(pseudo, cfg, seeds, meter);
    if (pseudo.items.empty() || plan.degreeBound < rounded.lo) {
        release_gf_plan(plan, meter);
        return Answer::No;
    }
    Evaluator ev = make_gf_evaluator(plan);
    BitReader draw(seeds.draw);
    // Coefficients above the degree bound are zero; clamping keeps q small.
    const u64 hi = std::min(rounded.hi, plan.degreeBound);
    const Answer ans = coeff_test_randomized(ev, CoeffQuery::range(rounded.lo, hi),
                                             draw, meter);
    release_gf_plan(plan, meter);
    return ans;
}

Answer solve_wssap(const WssapQuery& query, u64 masterSeed, WssapSchedule schedule) {
    check_eps(query);
    switch (schedule) {
        case WssapSchedule::Alg1:
            return solve_rounded(round_alg1(query), masterSeed);
        case WssapSchedule::Alg2:
            return solve_rounded(round_alg2(query), masterSeed);
        case WssapSchedule::Race:
            break;
    }
    std::atomic<int> first{-1};
    Answer a1{}, a2{};
    std::thread t1([&] {
        a1 = solve_rounded(round_alg1(query), masterSeed);
        int expected = -1;
        first.compare_exchange_strong(expected, 1);
    });
    std::thread t2([&] {
        a2 = solve_rounded(round_alg2(query), masterSeed);
        int expected = -1;
        first.compare_exchange_strong(expected, 2);
    });
    t1.join();
    t2.join();
    return first.load() == 1 ? a1 : a2;
}

} // namespace lowss
