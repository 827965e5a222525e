#ifndef LOWSS_HASHING_HPP
#define LOWSS_HASHING_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <lowss/rng.hpp>

namespace lowss {

using u32 = std::uint32_t;

// --- GF(2^w) support for the k-wise family ---

// Reduction mask of a verified irreducible polynomial x^w + (lower terms),
// computed once per width by exhaustive search.
u32 gf2_irreducible_lower_terms(unsigned w);

u32 gf2_mul(unsigned w, u32 a, u32 b);

// Degree-(k-1) polynomial map over GF(2^wordBits): exactly k-wise
// independent over a uniform seed. Output truncated to outBits.
struct KWiseFunc {
    unsigned wordBits = 1;
    unsigned outBits = 1;
    std::vector<u32> coeffs;  // k coefficients, constant term first
};

KWiseFunc make_kwise(unsigned k, unsigned wordBits, unsigned outBits,
                     BitReader& seed);

u32 kwise_eval(const KWiseFunc& f, u32 x);

// --- pairwise-independent hashing for the mini-groups ---

struct PairwiseFunc {
    u64 modulusP = 2;  // prime > domain
    u64 a = 1;         // in [1, P)
    u64 b = 0;         // in [0, P)
    u64 range = 1;

    static PairwiseFunc from_payload(u64 payload, u64 P, u64 range);
};

u64 pairwise_eval(const PairwiseFunc& f, u64 x);

// --- efficiently invertible hash: a seeded bijection [n] -> [m] x [n/m] ---

enum class DepthMode { LogLog, Const };

class InvertibleHash {
public:
    struct Level {
        unsigned inBits;   // width of x_i
        unsigned ell;      // bits split off at this level
        KWiseFunc g;
    };

    u64 n() const { return u64(1) << nBits_; }
    u64 m() const { return u64(1) << mBits_; }
    u64 slots() const { return u64(1) << (nBits_ - mBits_); }
    unsigned depth() const { return static_cast<unsigned>(levels_.size()); }
    const std::vector<Level>& levels() const { return levels_; }
    std::vector<Level>& levels() { return levels_; }

    std::pair<u64, u64> eval(u64 x) const;  // -> (bin, slot)
    u64 invert(u64 bin, u64 slot) const;

    // Streams the n/m preimages of a bin with O(1) extra state each.
    void enumerate_bin(u64 bin, const std::function<void(u64)>& fn) const;

private:
    friend InvertibleHash make_invertible_hash(u64 n, u64 m, DepthMode mode,
                                               unsigned constDepth, BitReader& seed,
                                               u64* seedBitsUsed);
    unsigned nBits_ = 0;
    unsigned mBits_ = 0;
    std::vector<Level> levels_;
};

// n, m powers of two with m <= n. LogLog mode keeps splitting while the
// residual bin count exceeds log2 n; Const mode stops after constDepth
// levels; either way the remaining width folds into the last level.
InvertibleHash make_invertible_hash(u64 n, u64 m, DepthMode mode,
                                    unsigned constDepth, BitReader& seed,
                                    u64* seedBitsUsed = nullptr);

// --- explicit expander on the grid Z_m x Z_m, degree 8 ---

struct GridVertex {
    u64 x;
    u64 y;
    friend bool operator==(const GridVertex&, const GridVertex&) = default;
};

// Neighbor maps, i in [1,8]:
//   1:(x+y, y)  2:(x-y, y)  3:(x+y+1, y)  4:(x-y-1, y)
//   5:(x, y+x)  6:(x, y-x)  7:(x, y+x+1)  8:(x, y-x-1)   (mod m)
// Pairs (1,2), (3,4), (5,6), (7,8) are mutually inverse, so the multigraph
// is symmetric.
GridVertex expander_neighbor(u64 gridSide, GridVertex v, unsigned i);

// Decodes a walk from r2: a start vertex of 2*ceil(payloadBits/2) bits, then
// 3 bits per step. Each visited vertex, truncated to payloadBits, is one
// seed payload.
std::vector<u64> walk_seeds(BitReader& r2, u64 count, unsigned payloadBits);

} // namespace lowss

#endif
