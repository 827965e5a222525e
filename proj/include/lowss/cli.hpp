#ifndef LOWSS_CLI_HPP
#define LOWSS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <lowss/instance.hpp>

namespace lowss {

// Exit codes: 0 = NO, 1 = YES, >= 2 = error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Reproducible instance text from a counter-based generator. Planted mode
// sets t to the sum of a random nonempty subset.
std::string generate_instance_text(u64 n, u64 tMax, double density, u64 masterSeed,
                                   bool planted);

struct SolveRequest {
    std::string algo;  // bellman|kane-det|rand-loglog|rand-eps|det-star|tradeoff|wssap
    u64 seed = 0;
    u64 k = 1;
    u64 epsNum = 1;
    u64 epsDen = 2;
    bool stableTime = false;  // report wallTimeMicros as 0 for byte-stable output
};

SolveOutcome dispatch_solve(const SubsetSumInstance& inst, const SolveRequest& req);

} // namespace lowss

#endif
