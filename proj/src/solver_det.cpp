#include <lowss/solver_det.hpp>

#include <algorithm>
#include <cassert>
#include <chrono>

#include <lowss/oracle.hpp>
#include <lowss/solver_rand.hpp>

namespace lowss {

namespace {

u64 ceil_log2_u64(u64 v) {
    u64 b = 0;
    while ((u64(1) << b) < v) ++b;
    return b;
}

} // namespace

u64 u_exponent(u64 i, u64 j, const StarEps& eps) {
    if (i < 1 || j < 1) throw std::invalid_argument("u_exponent: i, j must be >= 1");
    const BigUint a(eps.den + eps.num);
    const BigUint b(eps.den);
    // (1+eps)^u >= (1+eps)^i + (1+eps)^j forces u > max(i, j); cleared
    // denominators the test reads a^u >= a^i b^(u-i) + a^j b^(u-j).
    u64 u = std::max(i, j) + 1;
    for (;; ++u) {
        const BigUint lhs = a.pow(u);
        const BigUint rhs = a.pow(i) * b.pow(u - i) + a.pow(j) * b.pow(u - j);
        if (lhs >= rhs) return u;
    }
}

u64 ceil_log_base(const StarEps& eps, u64 v) {
    if (v <= 1) return 0;
    const BigUint a(eps.den + eps.num);
    const BigUint b(eps.den);
    const BigUint target(v);
    for (u64 L = 1;; ++L) {
        if (a.pow(L) >= target * b.pow(L)) return L;
    }
}

UTable build_u_table(const StarEps& eps, u64 capExp) {
    UTable t;
    t.capExp = capExp;
    t.u.assign(static_cast<std::size_t>((capExp + 1) * (capExp + 1)),
               static_cast<u32>(capExp + 1));
    for (u64 i = 1; i <= capExp; ++i) {
        for (u64 j = i; j <= capExp; ++j) {
            const u64 v = std::min(u_exponent(i, j, eps), capExp + 1);
            t.u[i * (capExp + 1) + j] = static_cast<u32>(v);
            t.u[j * (capExp + 1) + i] = static_cast<u32>(v);
        }
    }
    return t;
}

StarPoly StarPoly::one(const FieldCtx& ctx, u64 capExp) {
    StarPoly p;
    p.ctx = &ctx;
    p.capExp = capExp;
    p.coeffs.assign(static_cast<std::size_t>(capExp + 1), ctx.zero());
    p.coeffs[0] = ctx.one();
    return p;
}

u64 StarPoly::words() const {
    return coeffs.size() * ctx->words_per_element();
}

StarPoly star_product(const StarPoly& P, const StarPoly& Q, const UTable& table) {
    if (P.ctx != Q.ctx || P.capExp != Q.capExp)
        throw std::invalid_argument("star_product: operand mismatch");
    const FieldCtx& F = *P.ctx;
    const u64 cap = P.capExp;
    StarPoly R = StarPoly::one(F, cap);
    for (u64 k = 1; k <= std::max(P.topSlice, Q.topSlice); ++k)
        R.coeffs[k] = F.add(P.coeffs[k], Q.coeffs[k]);
    R.topSlice = std::min(cap, std::max(P.topSlice, Q.topSlice));
    for (u64 i = 1; i <= P.topSlice; ++i) {
        if (F.is_zero(P.coeffs[i])) continue;
        const u32* row = table.u.data() + i * (table.capExp + 1);
        for (u64 j = 1; j <= Q.topSlice; ++j) {
            if (F.is_zero(Q.coeffs[j])) continue;
            const u64 u = row[j];
            if (u > cap) continue;  // above the cap, can never pass the filter
            R.coeffs[u] = F.add(R.coeffs[u], F.mul(P.coeffs[i], Q.coeffs[j]));
            R.topSlice = std::max(R.topSlice, u);
        }
    }
    return R;
}

namespace {

struct LayerParams {
    StarEps eps;
    u64 capExp;
    u64 keepCap;
};

LayerParams layer_params(u64 m, u64 z) {
    LayerParams p;
    p.eps = {1, std::max<u64>(1, ceil_log2_u64(m))};
    p.capExp = 1 + ceil_log_base(p.eps, m) + ceil_log2_u64(m);
    p.keepCap = 1 + ceil_log_base(p.eps, z) + ceil_log2_u64(m);
    return p;
}

StarPoly build_star(const FieldCtx& ctx, std::span<const Fe> leafPowers, u64 lo,
                    u64 hi, u64 capExp, const UTable& table, SpaceMeter& meter) {
    if (hi - lo == 1) {
        StarPoly leaf = StarPoly::one(ctx, capExp);
        leaf.coeffs[1] = leafPowers[lo];
        leaf.topSlice = 1;
        meter.alloc(leaf.words());
        return leaf;
    }
    const u64 mid = lo + (hi - lo + 1) / 2;
    StarPoly P = build_star(ctx, leafPowers, lo, mid, capExp, table, meter);
    StarPoly Q = build_star(ctx, leafPowers, mid, hi, capExp, table, meter);
    StarPoly R = star_product(P, Q, table);
    meter.alloc(R.words());
    meter.release(P.words());
    meter.release(Q.words());
    return R;
}

Fe approx_count_core(const FieldCtx& ctx, Fe x, std::span<const u64> values, u64 z,
                     const LayerParams& params, const UTable& table,
                     SpaceMeter& meter) {
    (void)z;
    if (values.empty()) return ctx.one();
    ScopedWords powersW(&meter, values.size() * ctx.words_per_element());
    std::vector<Fe> powers(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) powers[i] = ctx.pow(x, values[i]);
    StarPoly F = build_star(ctx, powers, 0, values.size(), params.capExp, table, meter);
    Fe v = ctx.zero();
    for (u64 k = 0; k <= std::min(params.keepCap, F.capExp); ++k)
        v = ctx.add(v, F.coeffs[k]);
    meter.release(F.words());
    return v;
}

} // namespace

Fe approx_count(const FieldCtx& ctx, Fe x, std::span<const u64> values, u64 z,
                SpaceMeter& meter) {
    if (values.empty()) return ctx.one();
    const LayerParams params = layer_params(values.size(), z);
    const UTable table = build_u_table(params.eps, params.capExp);
    return approx_count_core(ctx, x, values, z, params, table, meter);
}

DetPlan build_det_plan(const SubsetSumInstance& inst, SpaceMeter& meter) {
    DetPlan plan;
    plan.target = inst.target;
    const std::size_t n = inst.items.size();
    const unsigned L = layer_count(n);
    u64 degree = 0;
    for (unsigned i = 1; i <= L && n > 0; ++i) {
        DetPlan::Layer layer;
        layer.z = u64(1) << i;
        for (u64 a : inst.items)
            if (layer_of(a, inst.target, i, L)) layer.values.push_back(a);
        if (layer.values.empty()) continue;
        const u64 m = layer.values.size();
        const LayerParams p = layer_params(m, layer.z);
        layer.eps = p.eps;
        layer.capExp = p.capExp;
        layer.keepCap = p.keepCap;
        // Largest kept subset size: top s with (1+eps)^keepCap >= s.
        {
            const BigUint a(layer.eps.den + layer.eps.num);
            const BigUint b(layer.eps.den);
            const BigUint lhs = a.pow(layer.keepCap);
            const BigUint bpow = b.pow(layer.keepCap);
            u64 s = 0;
            while (s < m && lhs >= BigUint(s + 1) * bpow) ++s;
            layer.sizeCap = s;
        }
        // Degree bound: the sizeCap largest members of the layer.
        std::vector<u64> sorted = layer.values;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        for (u64 s = 0; s < layer.sizeCap && s < sorted.size(); ++s)
            degree += sorted[static_cast<std::size_t>(s)];
        layer.table = build_u_table(layer.eps, layer.capExp);
        plan.layers.push_back(std::move(layer));
    }
    plan.degreeBound = std::max<u64>(degree, 1);
    plan.coeffBitBound = std::max<u64>(
        1, std::min<u64>(n, plan.degreeBound * layer_count(std::max<std::size_t>(n, 2))));

    u64 words = 0;
    for (const auto& layer : plan.layers)
        words += layer.values.size() + layer.table.u.size() / 2 + 8;
    plan.planWords = words;
    meter.alloc(words);
    return plan;
}

void release_det_plan(const DetPlan& plan, SpaceMeter& meter) {
    meter.release(plan.planWords);
}

Fe evaluate2_plan(const FieldCtx& ctx, Fe x, const DetPlan& plan, SpaceMeter& meter) {
    Fe u = ctx.one();
    for (const auto& layer : plan.layers) {
        LayerParams p{layer.eps, layer.capExp, layer.keepCap};
        u = ctx.mul(u, approx_count_core(ctx, x, layer.values, layer.z, p, layer.table,
                                         meter));
    }
    return u;
}

Fe evaluate2(const FieldCtx& ctx, Fe x, const SubsetSumInstance& inst,
             SpaceMeter& meter) {
    DetPlan plan = build_det_plan(normalized(inst), meter);
    const Fe v = evaluate2_plan(ctx, x, plan, meter);
    release_det_plan(plan, meter);
    return v;
}

SolveOutcome solve_det(const SubsetSumInstance& inst) {
    const auto start = std::chrono::steady_clock::now();
    SolveOutcome out;
    const SubsetSumInstance norm = normalized(inst);
    if (norm.target < ceil_log2_u64(std::max<u64>(norm.items.size(), 2))) {
        out.answer = dp_oracle(norm, &out.meter);
    } else {
        DetPlan plan = build_det_plan(norm, out.meter);
        if (norm.items.empty() || plan.degreeBound < norm.target) {
            out.answer = Answer::No;
        } else {
            Evaluator ev;
            ev.d = plan.degreeBound;
            ev.w = plan.coeffBitBound;
            ev.eval = [&plan](const FieldCtx& ctx, Fe x, SpaceMeter& m) {
                return evaluate2_plan(ctx, x, plan, m);
            };
            out.answer = coeff_test_deterministic(ev, CoeffQuery::point(norm.target),
                                                  out.meter);
        }
        release_det_plan(plan, out.meter);
    }
    out.randomBitsUsed = 0;
    out.wallTime = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start);
    return out;
}

} // namespace lowss
