#include <lowss/hashing.hpp>

#include <array>
#include <cassert>
#include <mutex>
#include <stdexcept>

namespace lowss {

namespace {

// Carry-less multiply of GF(2)[x] polynomials held in u64 masks.
u64 clmul(u64 a, u64 b) {
    u64 r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

u64 gf2poly_mod(u64 a, u64 f, unsigned degF) {
    unsigned degA = a ? 63 - static_cast<unsigned>(__builtin_clzll(a)) : 0;
    while (a && degA >= degF) {
        a ^= f << (degA - degF);
        degA = a ? 63 - static_cast<unsigned>(__builtin_clzll(a)) : 0;
    }
    return a;
}

u64 gf2poly_mulmod(u64 a, u64 b, u64 f, unsigned degF) {
    return gf2poly_mod(clmul(a, b), f, degF);
}

u64 gf2poly_gcd(u64 a, u64 b) {
    while (b) {
        const unsigned degB = 63 - static_cast<unsigned>(__builtin_clzll(b));
        u64 r = a;
        unsigned degR = r ? 63 - static_cast<unsigned>(__builtin_clzll(r)) : 0;
        while (r && degR >= degB) {
            r ^= b << (degR - degB);
            degR = r ? 63 - static_cast<unsigned>(__builtin_clzll(r)) : 0;
        }
        a = b;
        b = r;
    }
    return a;
}

// f(x) of degree w is irreducible over GF(2) iff x^(2^w) = x (mod f) and
// x^(2^(w/r)) - x is coprime with f for every prime r | w.
bool gf2_is_irreducible(u64 f, unsigned w) {
    auto xpow2k = [&](unsigned k) {
        u64 t = 2;  // the polynomial x
        for (unsigned i = 0; i < k; ++i) t = gf2poly_mulmod(t, t, f, w);
        return t;
    };
    if (xpow2k(w) != 2) return false;
    for (unsigned r = 2; r <= w; ++r) {
        if (w % r != 0) continue;
        bool prime = true;
        for (unsigned d = 2; d * d <= r; ++d)
            if (r % d == 0) prime = false;
        if (!prime) continue;
        if (gf2poly_gcd(f, xpow2k(w / r) ^ 2) != 1) return false;
    }
    return true;
}

} // namespace

u32 gf2_irreducible_lower_terms(unsigned w) {
    if (w == 0 || w > 32) throw std::invalid_argument("gf2 width out of [1,32]");
    static std::array<u32, 33> cache{};
    static std::array<bool, 33> ready{};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (!ready[w]) {
        for (u64 lower = 1;; lower += 2) {
            const u64 f = (u64(1) << w) | lower;
            if (gf2_is_irreducible(f, w)) {
                cache[w] = static_cast<u32>(lower);
                break;
            }
        }
        ready[w] = true;
    }
    return cache[w];
}

u32 gf2_mul(unsigned w, u32 a, u32 b) {
    const u64 f = (u64(1) << w) | gf2_irreducible_lower_terms(w);
    return static_cast<u32>(gf2poly_mulmod(a, b, f, w));
}

KWiseFunc make_kwise(unsigned k, unsigned wordBits, unsigned outBits,
                     BitReader& seed) {
    if (k < 1) throw std::invalid_argument("make_kwise: k must be >= 1");
    KWiseFunc f;
    f.wordBits = wordBits;
    f.outBits = outBits;
    f.coeffs.resize(k);
    for (auto& c : f.coeffs) c = static_cast<u32>(seed.take(wordBits));
    return f;
}

u32 kwise_eval(const KWiseFunc& f, u32 x) {
    u32 acc = 0;
    for (std::size_t i = f.coeffs.size(); i-- > 0;)
        acc = gf2_mul(f.wordBits, acc, x) ^ f.coeffs[i];
    const u32 mask = f.outBits >= 32 ? ~u32(0) : (u32(1) << f.outBits) - 1;
    return acc & mask;
}

PairwiseFunc PairwiseFunc::from_payload(u64 payload, u64 P, u64 range) {
    const unsigned half = 32;
    const u64 hi = payload >> half;
    const u64 lo = payload & 0xffffffffULL;
    PairwiseFunc f;
    f.modulusP = P;
    f.a = 1 + hi % (P - 1);
    f.b = lo % P;
    f.range = range;
    return f;
}

u64 pairwise_eval(const PairwiseFunc& f, u64 x) {
    return (f.a * x + f.b) % f.modulusP % f.range;
}

namespace {

unsigned log2_exact(u64 v) {
    if (v == 0 || (v & (v - 1)) != 0)
        throw std::invalid_argument("expected a power of two");
    unsigned b = 0;
    while ((u64(1) << b) < v) ++b;
    return b;
}

unsigned kwise_order(unsigned nBits, unsigned ell, bool last) {
    // k_i * ell_i tracks log n on inner levels; the last level gets the
    // log n / log log n order.
    if (!last) {
        const unsigned k = (nBits + ell - 1) / ell;
        return std::max(2u, (k + 1) & ~1u);
    }
    unsigned lg = 1;
    while ((1u << lg) < nBits) ++lg;
    const unsigned k = (nBits + lg - 1) / lg;
    return std::max(2u, (k + 1) & ~1u);
}

} // namespace

InvertibleHash make_invertible_hash(u64 n, u64 m, DepthMode mode,
                                    unsigned constDepth, BitReader& seed,
                                    u64* seedBitsUsed) {
    const unsigned nBits = log2_exact(n);
    const unsigned mBits = log2_exact(m);
    if (m > n) throw std::invalid_argument("make_invertible_hash: m > n");
    const u64 startPos = seed.position();

    InvertibleHash h;
    h.nBits_ = nBits;
    h.mBits_ = mBits;

    // Level widths: ell_i = floor(log2(m_{i-1}) / 4) until the stop rule,
    // remaining width folded into the final level. Zero widths collapse.
    std::vector<unsigned> ells;
    unsigned rem = mBits;
    if (mBits > 0) {
        for (;;) {
            const unsigned ell = rem / 4;
            const bool stop =
                ell == 0 ||
                (mode == DepthMode::Const && ells.size() + 1 >= constDepth) ||
                (mode == DepthMode::LogLog && (u64(1) << (rem - ell)) <= nBits);
            if (stop) break;
            ells.push_back(ell);
            rem -= ell;
        }
        ells.push_back(rem);
    }

    unsigned curBits = nBits;
    for (std::size_t i = 0; i < ells.size(); ++i) {
        const unsigned ell = ells[i];
        InvertibleHash::Level lv;
        lv.inBits = curBits - ell;  // width of x_i, the k-wise input
        lv.ell = ell;
        const bool last = i + 1 == ells.size();
        lv.g = make_kwise(kwise_order(nBits, ell, last), std::max(lv.inBits, 1u), ell, seed);
        h.levels_.push_back(std::move(lv));
        curBits -= ell;
    }
    if (seedBitsUsed) *seedBitsUsed = seed.position() - startPos;
    return h;
}

std::pair<u64, u64> InvertibleHash::eval(u64 x) const {
    if (x >= n()) throw std::invalid_argument("InvertibleHash::eval: x out of range");
    u64 cur = x;
    unsigned curBits = nBits_;
    u64 bin = 0;
    for (const Level& lv : levels_) {
        const unsigned low = curBits - lv.ell;
        const u64 u = cur & ((u64(1) << low) - 1);
        const u64 top = cur >> low;
        const u64 b = top ^ kwise_eval(lv.g, static_cast<u32>(u));
        bin = (bin << lv.ell) | b;
        cur = u;
        curBits = low;
    }
    return {bin, cur};
}

u64 InvertibleHash::invert(u64 bin, u64 slot) const {
    u64 cur = slot;
    unsigned curBits = nBits_ - mBits_;
    u64 binRest = bin;
    for (std::size_t i = levels_.size(); i-- > 0;) {
        const Level& lv = levels_[i];
        const u64 b = binRest & ((u64(1) << lv.ell) - 1);
        binRest >>= lv.ell;
        const u64 top = b ^ kwise_eval(lv.g, static_cast<u32>(cur));
        cur |= top << curBits;
        curBits += lv.ell;
    }
    return cur;
}

void InvertibleHash::enumerate_bin(u64 bin, const std::function<void(u64)>& fn) const {
    const u64 cnt = slots();
    for (u64 j = 0; j < cnt; ++j) fn(invert(bin, j));
}

GridVertex expander_neighbor(u64 gridSide, GridVertex v, unsigned i) {
    const u64 m = gridSide;
    auto addm = [m](u64 a, u64 b) { return (a + b) % m; };
    auto subm = [m](u64 a, u64 b) { return (a + m - b % m) % m; };
    const u64 x = v.x % m, y = v.y % m;
    switch (i) {
        case 1: return {addm(x, y), y};
        case 2: return {subm(x, y), y};
        case 3: return {addm(addm(x, y), 1), y};
        case 4: return {subm(subm(x, y), 1), y};
        case 5: return {x, addm(y, x)};
        case 6: return {x, subm(y, x)};
        case 7: return {x, addm(addm(y, x), 1)};
        case 8: return {x, subm(subm(y, x), 1)};
        default: throw std::invalid_argument("expander_neighbor: i out of [1,8]");
    }
}

std::vector<u64> walk_seeds(BitReader& r2, u64 count, unsigned payloadBits) {
    if (payloadBits == 0 || payloadBits > 64)
        throw std::invalid_argument("walk_seeds: payloadBits out of [1,64]");
    const unsigned half = (payloadBits + 1) / 2;
    const u64 gridSide = u64(1) << half;  // smallest power of two with m^2 >= 2^payload
    GridVertex v{r2.take(half), r2.take(half)};
    std::vector<u64> out;
    out.reserve(static_cast<std::size_t>(count));
    const u64 mask = payloadBits >= 64 ? ~u64(0) : (u64(1) << payloadBits) - 1;
    for (u64 i = 0; i < count; ++i) {
        if (i > 0) {
            const unsigned step = 1 + static_cast<unsigned>(r2.take(3)) % 8;
            v = expander_neighbor(gridSide, v, step);
        }
        out.push_back(((v.x << half) | v.y) & mask);
    }
    return out;
}

} // namespace lowss
