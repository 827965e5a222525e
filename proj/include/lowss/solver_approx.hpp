#ifndef LOWSS_SOLVER_APPROX_HPP
#define LOWSS_SOLVER_APPROX_HPP

#include <lowss/instance.hpp>

namespace lowss {

// Weak approximation promise query: YES when some subset sum lands in
// [(1-eps/2)t, t], NO when none lands in [(1-eps)t, (1+eps)t].
struct WssapQuery {
    SubsetSumInstance inst;
    u64 epsNum = 1;  // 0 < epsNum < epsDen
    u64 epsDen = 2;
};

enum class RoundingAlg { Alg1, Alg2 };

struct RoundedInstance {
    std::vector<u64> items;  // zeros already dropped
    u64 lo = 0;              // target window on the rounded sums
    u64 hi = 0;
    RoundingAlg provenance = RoundingAlg::Alg1;
    bool immediateYes = false;  // small items alone reach the window
};

// Global rounding by N = eps*t/(2n); the window maps YES sums into
// [(1-eps)*2n/eps, 2n/eps] with the endpoint rounding chosen so a hit
// always certifies a sum inside ((1-eps)t, (1+eps)t).
RoundedInstance round_alg1(const WssapQuery& query);

// Big/small split at eps*t, big items rounded by N = eps^2*t/8. When the
// small-item mass alone reaches (1-eps)t the answer is YES outright.
RoundedInstance round_alg2(const WssapQuery& query);

enum class WssapSchedule { Alg1, Alg2, Race };

// Deterministic schedule (Alg1's answer) by default; Race runs both
// reductions concurrently and takes the first finisher.
Answer solve_wssap(const WssapQuery& query, u64 masterSeed,
                   WssapSchedule schedule = WssapSchedule::Alg1);

// Decision on the rounded window via the randomized pipeline in range mode.
Answer solve_rounded(const RoundedInstance& rounded, u64 masterSeed);

} // namespace lowss

#endif
