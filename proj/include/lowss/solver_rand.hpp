#ifndef LOWSS_SOLVER_RAND_HPP
#define LOWSS_SOLVER_RAND_HPP

#include <span>
#include <vector>

#include <lowss/coeftest.hpp>
#include <lowss/ff.hpp>
#include <lowss/hashing.hpp>
#include <lowss/instance.hpp>
#include <lowss/meter.hpp>
#include <lowss/rng.hpp>

namespace lowss {

// Randomness carriers: r1 seeds the invertible hash (the same string on
// every layer), r2 drives the expander walk, draw covers the field draw.
struct SeedPack {
    BitStream r1;
    BitStream r2;
    BitStream draw;

    static SeedPack from_master(u64 masterSeed) {
        return {BitStream(masterSeed, 1), BitStream(masterSeed, 2),
                BitStream(masterSeed, 3)};
    }

    u64 bits_used() const {
        return r1.consumed_bits() + r2.consumed_bits() + draw.consumed_bits();
    }
};

struct RandConfig {
    enum class Family { LogLog, ConstDepth };
    Family family = Family::LogLog;
    unsigned constDepth = 2;      // ConstDepth levels
    unsigned epsNumer = 1;        // ConstDepth load parameter ~ n^(1/epsDenom)
    unsigned epsDenom = 3;
    unsigned walkC = 4;           // walk rounds = walkC * ceil(log2 n)
    u64 loadParamOverride = 0;    // 0 = derive from family
    bool strictLogspace = false;  // k^2 passes with one accumulator
};

// Membership of an item value in layer i of ceil(log2 n) half-open value
// ranges (t/2^i, t/2^(i-1)]; the final layer is the complement. Layers are
// never materialized.
bool layer_of(u64 a, u64 t, unsigned i, unsigned layerCount);

unsigned layer_count(std::size_t n);

// Everything about one instance's partition that does not depend on the
// evaluation point: layer/bin membership (via the invertible hash), the
// walk-derived mini-group seeds, and exact degree / coefficient-bit bounds
// for the resulting polynomial.
struct GfPlan {
    struct Bin {
        std::vector<u32> memberIdx;  // indices into items
        u64 maxValue = 0;
        u64 sumValue = 0;
        u64 degreeBound = 0;  // min(min(k^2,|bin|)*max, sum)
    };
    struct Layer {
        std::vector<Bin> bins;  // nonempty bins only
    };

    std::vector<u64> items;  // normalized values
    u64 target = 1;
    std::vector<Layer> layers;
    unsigned layerCount = 1;
    u64 loadParam = 1;   // k
    u64 miniGroups = 1;  // k^2
    u64 rounds = 1;      // expander walk length
    u64 pairwiseP = 2;
    std::vector<PairwiseFunc> roundFuncs;
    u64 degreeBound = 1;    // exact d for the evaluator
    u64 coeffBitBound = 1;  // exact w for the evaluator
    u64 planWords = 0;
    bool strictLogspace = false;
};

GfPlan build_gf_plan(const SubsetSumInstance& normalizedInst, const RandConfig& cfg,
                     const SeedPack& seeds, SpaceMeter& meter);

void release_gf_plan(const GfPlan& plan, SpaceMeter& meter);

// u = sum over walk rounds of prod over mini-groups of (1 + sum x^a);
// powers[idx] caches x^items[idx] for the current point.
Fe partition_level2_plan(const FieldCtx& ctx, const GfPlan& plan,
                         const GfPlan::Bin& bin, std::span<const Fe> powers,
                         SpaceMeter& meter);

Fe partition_level1_plan(const FieldCtx& ctx, const GfPlan& plan, unsigned layer,
                         std::span<const Fe> powers, SpaceMeter& meter);

Fe evaluate_gf_plan(const FieldCtx& ctx, Fe x, const GfPlan& plan, SpaceMeter& meter);

// Spec-shaped entry points (build a fresh plan; tests use these).
Fe partition_level2(const FieldCtx& ctx, Fe x, std::span<const u64> values, u64 k,
                    const SeedPack& seeds, const RandConfig& cfg, SpaceMeter& meter);
Fe partition_level1(const FieldCtx& ctx, Fe x, unsigned layerIndex,
                    const SubsetSumInstance& inst, const SeedPack& seeds,
                    const RandConfig& cfg, SpaceMeter& meter);
Fe evaluate_gf(const FieldCtx& ctx, Fe x, const SubsetSumInstance& inst,
               const SeedPack& seeds, const RandConfig& cfg, SpaceMeter& meter);

// Wraps the plan as a coefficient-test evaluator with the plan's exact
// (d, w) bounds.
Evaluator make_gf_evaluator(const GfPlan& plan);

SolveOutcome solve_rand(const SubsetSumInstance& inst, const RandConfig& cfg,
                        u64 masterSeed);

} // namespace lowss

#endif
