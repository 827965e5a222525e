#ifndef LOWSS_RNG_HPP
#define LOWSS_RNG_HPP

#include <cassert>
#include <cstdint>

namespace lowss {

using u64 = std::uint64_t;

inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Small counter-based generator for instance generation and draws.
class SplitMix {
public:
    explicit SplitMix(u64 seed) : state_(seed) {}
    u64 next() { return splitmix64(state_++); }
    // uniform in [0, bound)
    u64 below(u64 bound) {
        assert(bound > 0);
        return next() % bound;
    }

private:
    u64 state_;
};

// Read-only random bit string, addressable by bit index. Bit i is a pure
// function of (seed, domain, i), so any bit can be re-read without storing
// the stream. Tracks the high-water mark of bits touched.
class BitStream {
public:
    BitStream() : BitStream(0, 0) {}
    BitStream(u64 seed, u64 domain) : seed_(seed), domain_(domain) {}

    bool bit(u64 i) const {
        touch(i + 1);
        return (word(i >> 6) >> (i & 63)) & 1;
    }

    // count <= 64 bits starting at bitOffset, little-endian
    u64 bits(u64 bitOffset, unsigned count) const {
        assert(count <= 64);
        if (count == 0) return 0;
        touch(bitOffset + count);
        const u64 w = bitOffset >> 6;
        const unsigned sh = static_cast<unsigned>(bitOffset & 63);
        u64 v = word(w) >> sh;
        if (sh + count > 64) v |= word(w + 1) << (64 - sh);
        if (count < 64) v &= (u64(1) << count) - 1;
        return v;
    }

    u64 consumed_bits() const { return highWater_; }
    void reset_consumption() { highWater_ = 0; }

private:
    u64 word(u64 idx) const {
        return splitmix64(seed_ ^ (domain_ * 0xd6e8feb86659fd93ULL) ^
                          (idx * 0xa0761d6478bd642fULL));
    }
    void touch(u64 upto) const { if (upto > highWater_) highWater_ = upto; }

    u64 seed_;
    u64 domain_;
    mutable u64 highWater_ = 0;
};

// Sequential cursor over a BitStream.
class BitReader {
public:
    explicit BitReader(const BitStream& bs) : bs_(&bs) {}
    u64 take(unsigned count) {
        u64 v = bs_->bits(pos_, count);
        pos_ += count;
        return v;
    }
    u64 position() const { return pos_; }
    void seek(u64 pos) { pos_ = pos; }

private:
    const BitStream* bs_;
    u64 pos_ = 0;
};

} // namespace lowss

#endif
