#ifndef LOWSS_SOLVER_DET_HPP
#define LOWSS_SOLVER_DET_HPP

#include <span>
#include <vector>

#include <lowss/bigint.hpp>
#include <lowss/coeftest.hpp>
#include <lowss/ff.hpp>
#include <lowss/instance.hpp>
#include <lowss/meter.hpp>

namespace lowss {

// Rational approximation base 1 + eps with eps = num/den; den = ceil(log2 m)
// in practice (eps = 1 when the list has a single element).
struct StarEps {
    u64 num = 1;
    u64 den = 1;
};

// Unique integer u with (1+eps)^u >= (1+eps)^i + (1+eps)^j > (1+eps)^(u-1),
// decided by exact integer arithmetic. Requires i, j >= 1.
u64 u_exponent(u64 i, u64 j, const StarEps& eps);

// Least integer L with (1+eps)^L >= v; exact.
u64 ceil_log_base(const StarEps& eps, u64 v);

// Precomputed u(i,j) for i, j in [1, capExp]; entries beyond capExp are
// recorded as capExp+1 and dropped by the product.
struct UTable {
    u64 capExp = 0;
    std::vector<u32> u;  // (capExp+1) x (capExp+1), row-major

    u64 at(u64 i, u64 j) const { return u[i * (capExp + 1) + j]; }
};

UTable build_u_table(const StarEps& eps, u64 capExp);

// Capped polynomial in the counting variable y; slice k holds the
// x-evaluation of the weight-class-k subsets. Slice 0 of a fresh leaf is 1.
struct StarPoly {
    const FieldCtx* ctx = nullptr;
    u64 capExp = 0;
    u64 topSlice = 0;         // highest possibly-nonzero slice
    std::vector<Fe> coeffs;   // capExp+1 slices

    static StarPoly one(const FieldCtx& ctx, u64 capExp);
    u64 words() const;
};

// 1 + (P-1) + (Q-1) + sum over i,j >= 1 of P_i Q_j y^(u(i,j)); contributions
// above capExp are discarded (they can never pass the final slice filter).
StarPoly star_product(const StarPoly& P, const StarPoly& Q, const UTable& table);

// Builds the y-polynomial for one list by balanced recursion over the list
// members and returns the sum of slices k <= cap(z). The value, read
// symbolically, keeps every subset of size <= z and nothing larger than the
// capped size class.
Fe approx_count(const FieldCtx& ctx, Fe x, std::span<const u64> values, u64 z,
                SpaceMeter& meter);

// Layer bounds reused across evaluation points and fields.
struct DetPlan {
    struct Layer {
        std::vector<u64> values;
        u64 z = 1;
        StarEps eps;
        u64 capExp = 0;    // slice cap of the recursion
        u64 keepCap = 0;   // slice filter for ApproxCount(z)
        u64 sizeCap = 0;   // max kept subset size, floor((1+eps)^keepCap)
        UTable table;
    };
    std::vector<Layer> layers;
    u64 target = 1;
    u64 degreeBound = 1;
    u64 coeffBitBound = 1;
    u64 planWords = 0;
};

DetPlan build_det_plan(const SubsetSumInstance& normalizedInst, SpaceMeter& meter);
void release_det_plan(const DetPlan& plan, SpaceMeter& meter);

Fe evaluate2_plan(const FieldCtx& ctx, Fe x, const DetPlan& plan, SpaceMeter& meter);

// Product over layers of approx_count(x, L_i, 2^i).
Fe evaluate2(const FieldCtx& ctx, Fe x, const SubsetSumInstance& inst,
             SpaceMeter& meter);

// Deterministic, exact. Falls back to the table solver when t < log2 n.
SolveOutcome solve_det(const SubsetSumInstance& inst);

} // namespace lowss

#endif
