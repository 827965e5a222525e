#include <lowss/poly.hpp>

#include <algorithm>
#include <cassert>

namespace lowss {

namespace {

constexpr std::size_t kSchoolbookCutoff = 48;

using Vec = std::vector<u64>;

Vec conv_school(const FieldCtx& ctx, std::span<const u64> a, std::span<const u64> b) {
    Vec out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t jLo = i >= b.size() ? i - b.size() + 1 : 0;
        const std::size_t jHi = std::min(i, a.size() - 1);
        u128 acc = 0;
        for (std::size_t j = jLo; j <= jHi; ++j)
            acc += static_cast<u128>(a[j]) * b[i - j];
        out[i] = static_cast<u64>(acc % ctx.p());
    }
    return out;
}

Vec conv_dispatch(const FieldCtx& ctx, std::span<const u64> a, std::span<const u64> b);

Vec conv_karatsuba(const FieldCtx& ctx, std::span<const u64> a, std::span<const u64> b) {
    if (std::min(a.size(), b.size()) <= kSchoolbookCutoff) return conv_school(ctx, a, b);
    const std::size_t m = (std::max(a.size(), b.size()) + 1) / 2;
    if (a.size() <= m || b.size() <= m) {
        // Unbalanced: split the longer operand only.
        const bool aLong = a.size() > b.size();
        std::span<const u64> lo = aLong ? a.subspan(0, m) : b.subspan(0, m);
        std::span<const u64> hi = aLong ? a.subspan(m) : b.subspan(m);
        std::span<const u64> other = aLong ? b : a;
        Vec z0 = conv_dispatch(ctx, lo, other);
        Vec z1 = conv_dispatch(ctx, hi, other);
        Vec out(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < z0.size(); ++i) out[i] = z0[i];
        for (std::size_t i = 0; i < z1.size(); ++i)
            out[m + i] = ctx.add_p(out[m + i], z1[i]);
        return out;
    }
    std::span<const u64> a0 = a.subspan(0, m), a1 = a.subspan(m);
    std::span<const u64> b0 = b.subspan(0, m), b1 = b.subspan(m);
    Vec z0 = conv_dispatch(ctx, a0, b0);
    Vec z2 = conv_dispatch(ctx, a1, b1);
    Vec sa(m, 0), sb(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        sa[i] = i < a1.size() ? ctx.add_p(a0[i], a1[i]) : a0[i];
        sb[i] = i < b1.size() ? ctx.add_p(b0[i], b1[i]) : b0[i];
    }
    Vec z1 = conv_dispatch(ctx, sa, sb);
    for (std::size_t i = 0; i < z1.size(); ++i) {
        u64 v = z1[i];
        if (i < z0.size()) v = ctx.sub_p(v, z0[i]);
        if (i < z2.size()) v = ctx.sub_p(v, z2[i]);
        z1[i] = v;
    }
    Vec out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] = z0[i];
    for (std::size_t i = 0; i < z1.size(); ++i)
        out[m + i] = ctx.add_p(out[m + i], z1[i]);
    for (std::size_t i = 0; i < z2.size(); ++i)
        out[2 * m + i] = ctx.add_p(out[2 * m + i], z2[i]);
    return out;
}

void ntt_inplace(const FieldCtx& ctx, Vec& a, bool invert) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const Fe g = find_generator(ctx);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 wlen = ctx.pow_p(g.a, (ctx.p() - 1) / len);
        if (invert) wlen = ctx.inv_p(wlen);
        for (std::size_t i = 0; i < n; i += len) {
            u64 w = 1;
            for (std::size_t j = 0; j < len / 2; ++j) {
                const u64 u = a[i + j];
                const u64 v = ctx.mul_p(w, a[i + j + len / 2]);
                a[i + j] = ctx.add_p(u, v);
                a[i + j + len / 2] = ctx.sub_p(u, v);
                w = ctx.mul_p(w, wlen);
            }
        }
    }
    if (invert) {
        const u64 invN = ctx.inv_p(n % ctx.p());
        for (auto& x : a) x = ctx.mul_p(x, invN);
    }
}

bool ntt_applicable(const FieldCtx& ctx, std::size_t need) {
    if (ctx.k() != 1) return false;
    std::size_t n = 1;
    while (n < need) n <<= 1;
    return (ctx.p() - 1) % n == 0 && n < ctx.p();
}

Vec conv_ntt(const FieldCtx& ctx, std::span<const u64> a, std::span<const u64> b) {
    const std::size_t need = a.size() + b.size() - 1;
    std::size_t n = 1;
    while (n < need) n <<= 1;
    Vec fa(a.begin(), a.end()), fb(b.begin(), b.end());
    fa.resize(n, 0);
    fb.resize(n, 0);
    ntt_inplace(ctx, fa, false);
    ntt_inplace(ctx, fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] = ctx.mul_p(fa[i], fb[i]);
    ntt_inplace(ctx, fa, true);
    fa.resize(need);
    return fa;
}

Vec conv_dispatch(const FieldCtx& ctx, std::span<const u64> a, std::span<const u64> b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t need = a.size() + b.size() - 1;
    if (std::min(a.size(), b.size()) <= kSchoolbookCutoff) return conv_school(ctx, a, b);
    if (ntt_applicable(ctx, need)) return conv_ntt(ctx, a, b);
    return conv_karatsuba(ctx, a, b);
}

Vec add_vecs(const FieldCtx& ctx, const Vec& a, const Vec& b) {
    Vec out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const u64 x = i < a.size() ? a[i] : 0;
        const u64 y = i < b.size() ? b[i] : 0;
        out[i] = ctx.add_p(x, y);
    }
    return out;
}

} // namespace

DensePoly::DensePoly(const FieldCtx& ctx, std::vector<u64> coeffs)
    : ctx_(&ctx), c0_(std::move(coeffs)) {
    for (auto& c : c0_) c %= ctx.p();
    if (ctx.k() == 2) c1_.assign(c0_.size(), 0);
    trim();
}

DensePoly DensePoly::constant(const FieldCtx& ctx, Fe c) {
    DensePoly f(ctx);
    f.set_coeff(0, c);
    return f;
}

DensePoly DensePoly::monomial(const FieldCtx& ctx, u64 exp, Fe c) {
    DensePoly f(ctx);
    f.set_coeff(static_cast<std::size_t>(exp), c);
    return f;
}

void DensePoly::set_coeff(std::size_t i, Fe v) {
    if (i >= c0_.size() && !(v.a == 0 && v.b == 0)) {
        c0_.resize(i + 1, 0);
        if (ctx_->k() == 2) c1_.resize(i + 1, 0);
    }
    if (i < c0_.size()) {
        c0_[i] = v.a;
        if (ctx_->k() == 2) c1_[i] = v.b;
        trim();
    }
}

void DensePoly::add_coeff(std::size_t i, Fe v) {
    if (ctx_->is_zero(v)) return;
    if (i >= c0_.size()) {
        c0_.resize(i + 1, 0);
        if (ctx_->k() == 2) c1_.resize(i + 1, 0);
    }
    c0_[i] = ctx_->add_p(c0_[i], v.a);
    if (ctx_->k() == 2) c1_[i] = ctx_->add_p(c1_[i], v.b);
    trim();
}

void DensePoly::trim() {
    auto zero_at = [&](std::size_t i) {
        return c0_[i] == 0 && (ctx_->k() != 2 || c1_[i] == 0);
    };
    while (!c0_.empty() && zero_at(c0_.size() - 1)) {
        c0_.pop_back();
        if (ctx_->k() == 2) c1_.pop_back();
    }
}

Fe DensePoly::eval_horner(Fe x) const {
    Fe acc = ctx_->zero();
    for (std::size_t i = c0_.size(); i-- > 0;)
        acc = ctx_->add(ctx_->mul(acc, x), coeff(i));
    return acc;
}

DensePoly poly_add(const DensePoly& a, const DensePoly& b) {
    assert(&a.ctx() == &b.ctx() || a.ctx().q() == b.ctx().q());
    DensePoly r(a.ctx());
    r.c0_ = add_vecs(a.ctx(), a.c0_, b.c0_);
    if (a.ctx().k() == 2) r.c1_ = add_vecs(a.ctx(), a.c1_, b.c1_);
    r.trim();
    return r;
}

DensePoly poly_sub(const DensePoly& a, const DensePoly& b) {
    const FieldCtx& F = a.ctx();
    DensePoly r(F);
    r.c0_.assign(std::max(a.c0_.size(), b.c0_.size()), 0);
    if (F.k() == 2) r.c1_.assign(r.c0_.size(), 0);
    for (std::size_t i = 0; i < r.c0_.size(); ++i) {
        r.c0_[i] = F.sub_p(i < a.c0_.size() ? a.c0_[i] : 0,
                           i < b.c0_.size() ? b.c0_[i] : 0);
        if (F.k() == 2)
            r.c1_[i] = F.sub_p(i < a.c1_.size() ? a.c1_[i] : 0,
                               i < b.c1_.size() ? b.c1_[i] : 0);
    }
    r.trim();
    return r;
}

DensePoly poly_mul(const DensePoly& a, const DensePoly& b) {
    if (a.ctx().q() != b.ctx().q())
        throw std::invalid_argument("poly_mul: field context mismatch");
    const FieldCtx& F = a.ctx();
    DensePoly r(F);
    if (a.is_zero() || b.is_zero()) return r;
    if (F.k() == 1) {
        r.c0_ = conv_dispatch(F, a.c0_, b.c0_);
    } else {
        // Karatsuba over the quadratic extension: three base convolutions.
        Vec z00 = conv_dispatch(F, a.c0_, b.c0_);
        Vec z11 = conv_dispatch(F, a.c1_, b.c1_);
        Vec sa = add_vecs(F, a.c0_, a.c1_);
        Vec sb = add_vecs(F, b.c0_, b.c1_);
        Vec zs = conv_dispatch(F, sa, sb);
        const std::size_t n = zs.size();
        r.c0_.assign(n, 0);
        r.c1_.assign(n, 0);
        const u64 alpha = F.nonresidue();
        const u64 beta = F.p() == 2 ? 1 : 0;
        for (std::size_t i = 0; i < n; ++i) {
            const u64 t00 = i < z00.size() ? z00[i] : 0;
            const u64 t11 = i < z11.size() ? z11[i] : 0;
            const u64 cross = F.sub_p(F.sub_p(zs[i], t00), t11);
            r.c0_[i] = F.add_p(t00, F.mul_p(alpha, t11));
            r.c1_[i] = beta ? F.add_p(cross, F.mul_p(beta, t11)) : cross;
        }
    }
    r.trim();
    return r;
}

MonoReduction mono_mod_binomial(const FieldCtx& ctx, u64 a, const BinomialModulus& mod) {
    return {a % mod.e, ctx.pow(mod.h, a / mod.e)};
}

ResiduePoly::ResiduePoly(const FieldCtx& ctx, const BinomialModulus& mod)
    : ctx_(&ctx), mod_(mod), c0_(mod.e, 0) {
    if (mod.e < 1) throw std::invalid_argument("ResiduePoly: e must be >= 1");
    if (ctx.is_zero(mod.h)) throw std::invalid_argument("ResiduePoly: h must be nonzero");
    if (ctx.k() == 2) c1_.assign(mod.e, 0);
}

ResiduePoly ResiduePoly::one(const FieldCtx& ctx, const BinomialModulus& mod) {
    ResiduePoly r(ctx, mod);
    r.c0_[0] = 1;
    return r;
}

void ResiduePoly::set_coeff(std::size_t i, Fe v) {
    c0_[i] = v.a;
    if (ctx_->k() == 2) c1_[i] = v.b;
}

void ResiduePoly::add_coeff(std::size_t i, Fe v) {
    c0_[i] = ctx_->add_p(c0_[i], v.a);
    if (ctx_->k() == 2) c1_[i] = ctx_->add_p(c1_[i], v.b);
}

void ResiduePoly::mul_sparse(std::span<const std::pair<u64, Fe>> terms) {
    const FieldCtx& F = *ctx_;
    const u64 e = mod_.e;
    ResiduePoly out(F, mod_);
    for (const auto& [exp, c] : terms) {
        const MonoReduction mr = mono_mod_binomial(F, exp, mod_);
        const Fe scale = F.mul(c, mr.scale);
        const Fe scaleFold = F.mul(scale, mod_.h);
        for (u64 s = 0; s < e; ++s) {
            const Fe cur = coeff(s);
            if (F.is_zero(cur)) continue;
            const u64 tgt = s + mr.slot;
            if (tgt < e)
                out.add_coeff(tgt, F.mul(cur, scale));
            else
                out.add_coeff(tgt - e, F.mul(cur, scaleFold));
        }
    }
    *this = std::move(out);
}

DensePoly ResiduePoly::to_dense() const {
    DensePoly f(*ctx_);
    for (std::size_t i = mod_.e; i-- > 0;) {
        const Fe c = coeff(i);
        if (!ctx_->is_zero(c)) f.set_coeff(i, c);
    }
    return f;
}

ResiduePoly residue_mul(const ResiduePoly& a, const ResiduePoly& b) {
    if (a.mod_.e != b.mod_.e || !(a.mod_.h == b.mod_.h))
        throw std::invalid_argument("residue_mul: modulus mismatch");
    const FieldCtx& F = *a.ctx_;
    DensePoly da = a.to_dense(), db = b.to_dense();
    DensePoly prod = poly_mul(da, db);
    ResiduePoly out(F, a.mod_);
    const u64 e = a.mod_.e;
    for (std::size_t i = 0; i < prod.size(); ++i) {
        const Fe c = prod.coeff(i);
        if (F.is_zero(c)) continue;
        if (i < e)
            out.add_coeff(i, c);
        else
            out.add_coeff(i - e, F.mul(c, a.mod_.h));  // i < 2e-1, one fold
    }
    return out;
}

ResiduePoly reduce_mod_binomial(const DensePoly& f, const BinomialModulus& mod) {
    const FieldCtx& F = f.ctx();
    ResiduePoly out(F, mod);
    Fe scale = F.one();
    for (u64 base = 0; base <= static_cast<u64>(std::max<long long>(f.degree(), 0));
         base += mod.e) {
        for (u64 off = 0; off < mod.e && base + off < f.size(); ++off) {
            const Fe c = f.coeff(static_cast<std::size_t>(base + off));
            if (!F.is_zero(c)) out.add_coeff(off, F.mul(c, scale));
        }
        scale = F.mul(scale, mod.h);
    }
    return out;
}

namespace {

// --- division helpers for the remainder tree ---

DensePoly trunc_poly(const DensePoly& f, std::size_t k) {
    DensePoly r(f.ctx());
    for (std::size_t i = std::min(k, f.size()); i-- > 0;) {
        const Fe c = f.coeff(i);
        if (!f.ctx().is_zero(c)) r.set_coeff(i, c);
    }
    return r;
}

DensePoly reverse_poly(const DensePoly& f, std::size_t n) {
    DensePoly r(f.ctx());
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t src = n - 1 - i;
        if (src < f.size()) {
            const Fe c = f.coeff(src);
            if (!f.ctx().is_zero(c)) r.set_coeff(i, c);
        }
    }
    return r;
}

DensePoly mul_trunc(const DensePoly& a, const DensePoly& b, std::size_t k) {
    DensePoly ta = trunc_poly(a, k), tb = trunc_poly(b, k);
    return trunc_poly(poly_mul(ta, tb), k);
}

DensePoly inv_series(const DensePoly& f, std::size_t k) {
    const FieldCtx& F = f.ctx();
    if (f.is_zero() || F.is_zero(f.coeff(0)))
        throw std::domain_error("inv_series: constant term must be nonzero");
    DensePoly g = DensePoly::constant(F, F.inv(f.coeff(0)));
    std::size_t cur = 1;
    while (cur < k) {
        const std::size_t nxt = std::min(cur * 2, k);
        DensePoly t = mul_trunc(f, g, nxt);
        DensePoly u = poly_sub(DensePoly::constant(F, F.from_uint(2)), t);
        g = mul_trunc(g, u, nxt);
        cur = nxt;
    }
    return trunc_poly(g, k);
}

DensePoly mod_naive(const DensePoly& f, const DensePoly& g) {
    const FieldCtx& F = f.ctx();
    const long long degG = g.degree();
    std::vector<Fe> rem(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) rem[i] = f.coeff(i);
    const Fe invLead = F.inv(g.coeff(static_cast<std::size_t>(degG)));
    for (long long i = f.degree(); i >= degG; --i) {
        const Fe lead = rem[static_cast<std::size_t>(i)];
        if (F.is_zero(lead)) continue;
        const Fe factor = F.mul(lead, invLead);
        for (long long j = 0; j <= degG; ++j) {
            const Fe gc = g.coeff(static_cast<std::size_t>(j));
            if (F.is_zero(gc)) continue;
            const std::size_t idx = static_cast<std::size_t>(i - degG + j);
            rem[idx] = F.sub(rem[idx], F.mul(factor, gc));
        }
    }
    DensePoly r(F);
    for (std::size_t i = std::min<std::size_t>(rem.size(), static_cast<std::size_t>(degG));
         i-- > 0;) {
        if (!F.is_zero(rem[i])) r.set_coeff(i, rem[i]);
    }
    return r;
}

DensePoly poly_mod(const DensePoly& f, const DensePoly& g) {
    if (g.is_zero()) throw std::domain_error("poly_mod: division by zero polynomial");
    if (f.degree() < g.degree()) return f;
    const long long degF = f.degree(), degG = g.degree();
    if (degG <= 32 || degF - degG <= 32) return mod_naive(f, g);
    const std::size_t k = static_cast<std::size_t>(degF - degG + 1);
    DensePoly fr = reverse_poly(f, static_cast<std::size_t>(degF + 1));
    DensePoly gr = reverse_poly(g, static_cast<std::size_t>(degG + 1));
    DensePoly qrev = mul_trunc(trunc_poly(fr, k), inv_series(gr, k), k);
    DensePoly q = reverse_poly(qrev, k);
    return poly_sub(f, poly_mul(q, g));
}

u64 poly_words(const DensePoly& f, const FieldCtx& ctx) {
    return f.size() * ctx.words_per_element();
}

std::vector<Fe> multipoint_dense(const DensePoly& f, std::span<const Fe> points,
                                 SpaceMeter* meter) {
    const FieldCtx& F = f.ctx();
    std::vector<Fe> out(points.size());
    if (points.empty()) return out;
    if (points.size() <= 32 || f.size() <= 64) {
        ScopedWords sw(meter, 2 * F.words_per_element());
        for (std::size_t i = 0; i < points.size(); ++i) out[i] = f.eval_horner(points[i]);
        return out;
    }

    // Subproduct tree; levels[0] holds the linear leaves.
    std::vector<std::vector<DensePoly>> levels;
    levels.emplace_back();
    levels[0].reserve(points.size());
    for (const Fe& b : points) {
        DensePoly leaf(F);
        leaf.set_coeff(1, F.one());
        leaf.set_coeff(0, F.neg(b));
        levels[0].push_back(std::move(leaf));
    }
    u64 treeWords = points.size() * 2 * F.words_per_element();
    while (levels.back().size() > 1) {
        const auto& prev = levels.back();
        std::vector<DensePoly> nxt;
        nxt.reserve((prev.size() + 1) / 2);
        for (std::size_t i = 0; i < prev.size(); i += 2) {
            if (i + 1 < prev.size())
                nxt.push_back(poly_mul(prev[i], prev[i + 1]));
            else
                nxt.push_back(prev[i]);
        }
        for (const auto& p : nxt) treeWords += poly_words(p, F);
        levels.push_back(std::move(nxt));
    }
    ScopedWords sw(meter, treeWords);

    // Remainder tree, two live levels at a time.
    std::vector<DensePoly> cur{poly_mod(f, levels.back()[0])};
    if (meter) meter->alloc(poly_words(cur[0], F));
    for (std::size_t level = levels.size() - 1; level-- > 0;) {
        std::vector<DensePoly> nxt(levels[level].size(), DensePoly(F));
        for (std::size_t idx = 0; idx < cur.size(); ++idx) {
            const std::size_t l = idx * 2, r = idx * 2 + 1;
            if (l < nxt.size()) nxt[l] = poly_mod(cur[idx], levels[level][l]);
            if (r < nxt.size()) nxt[r] = poly_mod(cur[idx], levels[level][r]);
        }
        if (meter) {
            u64 w = 0;
            for (const auto& p : nxt) w += poly_words(p, F);
            meter->alloc(w);
            u64 old = 0;
            for (const auto& p : cur) old += poly_words(p, F);
            meter->release(old);
        }
        cur = std::move(nxt);
    }
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = cur[i].coeff(0);
    if (meter) {
        u64 w = 0;
        for (const auto& p : cur) w += poly_words(p, F);
        meter->release(w);
    }
    return out;
}

} // namespace

std::vector<Fe> multipoint_eval(const DensePoly& f, std::span<const Fe> points,
                                SpaceMeter* meter) {
    return multipoint_dense(f, points, meter);
}

std::vector<Fe> multipoint_eval(const ResiduePoly& f, std::span<const Fe> points,
                                SpaceMeter* meter) {
    return multipoint_dense(f.to_dense(), points, meter);
}

Fe range_selector(const FieldCtx& ctx, u64 lo, u64 hi, Fe x) {
    if (ctx.is_zero(x)) throw std::domain_error("range_selector: x must be nonzero");
    if (lo > hi || hi > ctx.q() - 2)
        throw std::invalid_argument("range_selector: need 0 <= lo <= hi <= q-2");
    const u64 count = hi - lo + 1;
    if (x == ctx.one()) return ctx.from_uint(count % ctx.p());
    const Fe a = ctx.pow(x, ctx.q() - 1 - hi);
    const Fe geo = ctx.mul(ctx.sub(ctx.pow(x, count), ctx.one()),
                           ctx.inv(ctx.sub(x, ctx.one())));
    return ctx.mul(a, geo);
}

ResiduePoly grouped_product(const std::function<std::optional<DensePoly>()>& nextFactor,
                            const FieldCtx& ctx, const BinomialModulus& mod,
                            u64 degreeCap, SpaceMeter* meter) {
    const u64 groupSize = std::max<u64>(1, mod.e / (degreeCap + 1));
    ResiduePoly acc = ResiduePoly::one(ctx, mod);
    ScopedWords accW(meter, mod.e * ctx.words_per_element());

    std::vector<DensePoly> group;
    u64 groupWords = 0;

    auto fold_group = [&]() {
        if (group.empty()) return;
        // Binary product tree, then a single reduction.
        while (group.size() > 1) {
            std::vector<DensePoly> nxt;
            nxt.reserve((group.size() + 1) / 2);
            for (std::size_t i = 0; i < group.size(); i += 2) {
                if (i + 1 < group.size())
                    nxt.push_back(poly_mul(group[i], group[i + 1]));
                else
                    nxt.push_back(std::move(group[i]));
            }
            u64 w = 0;
            for (const auto& p : nxt) w += p.size() * ctx.words_per_element();
            if (meter) {
                meter->alloc(w);
                meter->release(groupWords);
            }
            groupWords = w;
            group = std::move(nxt);
        }
        ResiduePoly r = reduce_mod_binomial(group[0], mod);
        acc = residue_mul(acc, r);
        if (meter) meter->release(groupWords);
        group.clear();
        groupWords = 0;
    };

    while (auto f = nextFactor()) {
        if (f->degree() > static_cast<long long>(degreeCap))
            throw std::invalid_argument("grouped_product: factor exceeds degreeCap");
        const u64 w = f->size() * ctx.words_per_element();
        if (meter) meter->alloc(w);
        groupWords += w;
        group.push_back(std::move(*f));
        if (group.size() >= groupSize) fold_group();
    }
    fold_group();
    return acc;
}

} // namespace lowss
