#include <lowss/oracle.hpp>

#include <cassert>

namespace lowss {

namespace {

// Reachability bitset over sums 0..cap, one pass per item.
std::vector<u64> reachable_bits(const std::vector<u64>& items, u64 cap,
                                SpaceMeter* meter) {
    const std::size_t words = static_cast<std::size_t>(cap / 64 + 1);
    if (meter) meter->alloc(words);
    std::vector<u64> bits(words, 0);
    bits[0] = 1;  // empty subset
    for (u64 a : items) {
        if (a > cap) continue;
        const std::size_t ws = static_cast<std::size_t>(a / 64);
        const unsigned bs = static_cast<unsigned>(a % 64);
        if (bs == 0) {
            for (std::size_t i = words; i-- > ws;) bits[i] |= bits[i - ws];
        } else {
            for (std::size_t i = words; i-- > ws;) {
                u64 v = bits[i - ws] << bs;
                if (i > ws) v |= bits[i - ws - 1] >> (64 - bs);
                bits[i] |= v;
            }
        }
    }
    return bits;
}

bool test_bit(const std::vector<u64>& bits, u64 i) {
    return (bits[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1;
}

} // namespace

Answer dp_oracle(const SubsetSumInstance& inst, SpaceMeter* meter) {
    const u64 t = inst.target;
    auto bits = reachable_bits(inst.items, t, meter);
    const Answer ans = test_bit(bits, t) ? Answer::Yes : Answer::No;
    if (meter) meter->release(bits.size());
    return ans;
}

Answer dp_oracle_range(const SubsetSumInstance& inst, u64 lo, u64 hi,
                       SpaceMeter* meter) {
    if (lo > hi) throw std::invalid_argument("dp_oracle_range: lo > hi");
    if (lo == 0) return Answer::Yes;  // empty subset
    auto bits = reachable_bits(inst.items, hi, meter);
    Answer ans = Answer::No;
    for (u64 s = lo; s <= hi; ++s) {
        if (test_bit(bits, s)) {
            ans = Answer::Yes;
            break;
        }
    }
    if (meter) meter->release(bits.size());
    return ans;
}

SubsetSumInstance pad_for_range(const SubsetSumInstance& inst, u64 tPrime) {
    const u64 t = inst.target;
    if (tPrime < 1 || tPrime > t)
        throw std::invalid_argument("pad_for_range: tPrime out of [1, t]");
    SubsetSumInstance out = inst;
    const u64 gap = t - tPrime;
    if (gap == 0) return out;
    // Powers 1,2,...,2^(c-1) reach 0..2^c-1; the final term tops up to gap.
    unsigned c = 0;
    while ((u64(1) << (c + 1)) <= gap + 1) ++c;
    for (unsigned i = 0; i < c; ++i) out.items.push_back(u64(1) << i);
    const u64 extra = gap - (u64(1) << c) + 1;
    if (extra != 0) out.items.push_back(extra);  // zero never changes reachable sums
    return out;
}

std::optional<std::vector<std::size_t>>
reconstruct_solution(const SubsetSumInstance& inst, const Decider& decider) {
    if (decider(inst) == Answer::No) return std::nullopt;
    std::vector<std::size_t> chosen;  // append-only output
    u64 remaining = inst.target;
    for (std::size_t i = 0; i < inst.items.size() && remaining > 0; ++i) {
        const u64 a = inst.items[i];
        if (a > remaining) continue;
        if (a == remaining) {
            chosen.push_back(i + 1);
            remaining = 0;
            break;
        }
        SubsetSumInstance suffix;
        suffix.items.assign(inst.items.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                            inst.items.end());
        suffix.target = remaining - a;
        if (decider(suffix) == Answer::Yes) {
            chosen.push_back(i + 1);
            remaining -= a;
        }
    }
    if (remaining != 0)
        throw DeciderFault("decider answered YES but no completion exists");
    return chosen;
}

} // namespace lowss
