#ifndef LOWSS_SOLVER_TRADEOFF_HPP
#define LOWSS_SOLVER_TRADEOFF_HPP

#include <vector>

#include <lowss/ff.hpp>
#include <lowss/instance.hpp>
#include <lowss/meter.hpp>
#include <lowss/poly.hpp>
#include <lowss/solver_rand.hpp>

namespace lowss {

// Partition of the units of F_q into S cosets, each the exact root set of a
// two-term binomial B_j(x) = x^e - g^(j*e) with e = (q-1)/S.
struct BatchPlan {
    FieldCtx ctx;  // carries a verified generator
    u64 S = 1;
    u64 e = 1;

    BinomialModulus modulus(u64 j) const;
    std::vector<Fe> points(u64 j) const;  // {g^(a*S+j) : a in [0, e)}
};

BatchPlan plan_batches(const FieldCtx& ctx, u64 S);

// Runs the generating-function pipeline with x as a formal variable modulo
// B_j and evaluates the residue on the batch's points, in point order.
std::vector<Fe> evaluate_batch(const GfPlan& gfPlan, const BatchPlan& plan, u64 j,
                               SpaceMeter& meter);

struct TradeoffOptions {
    u64 forceQ = 0;  // 0 = pick via find_q_with_divisor
    u64 forceS = 0;
};

SolveOutcome solve_tradeoff(const SubsetSumInstance& inst, u64 k, u64 masterSeed,
                            const TradeoffOptions& opts = {});

} // namespace lowss

#endif
