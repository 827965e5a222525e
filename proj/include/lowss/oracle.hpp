#ifndef LOWSS_ORACLE_HPP
#define LOWSS_ORACLE_HPP

#include <functional>
#include <optional>
#include <vector>

#include <lowss/instance.hpp>

namespace lowss {

// Bellman's table, one bit per reachable sum. Ground truth for all
// acceptance tests; its table is charged to the meter when one is given.
Answer dp_oracle(const SubsetSumInstance& inst, SpaceMeter* meter = nullptr);

// YES iff some subset sum lies in [lo, hi]. lo = 0 is always YES.
Answer dp_oracle_range(const SubsetSumInstance& inst, u64 lo, u64 hi,
                       SpaceMeter* meter = nullptr);

// Appends 1,2,4,...,2^(floor(log2(t-t'+1))-1) and (t-t')-2^floor(log2(t-t'+1))+1
// so that the exact-t decision on the result equals dp_oracle_range(inst, t', t).
// A trailing zero element from the formula is dropped.
SubsetSumInstance pad_for_range(const SubsetSumInstance& inst, u64 tPrime);

using Decider = std::function<Answer(const SubsetSumInstance&)>;

class DeciderFault : public std::runtime_error {
public:
    explicit DeciderFault(const std::string& msg) : std::runtime_error(msg) {}
};

// Turns any decision procedure into a search: returns 1-based indices of a
// subset summing exactly to t, or nullopt if decider says NO. Throws
// DeciderFault if the decider claims YES but no completion exists.
std::optional<std::vector<std::size_t>>
reconstruct_solution(const SubsetSumInstance& inst, const Decider& decider);

} // namespace lowss

#endif
