#ifndef LOWSS_INSTANCE_HPP
#define LOWSS_INSTANCE_HPP

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <lowss/meter.hpp>

namespace lowss {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Positive integer multiset plus target. Items are 64-bit; t >= 1.
struct SubsetSumInstance {
    std::vector<u64> items;
    u64 target = 1;

    std::size_t n() const { return items.size(); }
};

enum class Answer { No, Yes };

inline const char* to_string(Answer a) { return a == Answer::Yes ? "YES" : "NO"; }

struct SolveOutcome {
    Answer answer = Answer::No;
    u64 randomBitsUsed = 0;  // 0 for deterministic solvers
    SpaceMeter meter;
    std::chrono::microseconds wallTime{0};
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t col)
        : std::runtime_error(msg + " at line " + std::to_string(line) +
                             ", column " + std::to_string(col)),
          line_(line), col_(col) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return col_; }

private:
    std::size_t line_, col_;
};

// Text format: first line "n t", then n whitespace-separated positive
// integers. Rejects zero/negative values and count mismatches.
SubsetSumInstance parse_instance(std::string_view text);

std::string format_instance(const SubsetSumInstance& inst);

// Drops items larger than the target; they can never participate.
SubsetSumInstance normalized(const SubsetSumInstance& inst);

// One CSV row: algo,n,t,answer,seedBitsUsed,peakWords,wallTimeMicros
std::string outcome_csv_row(const std::string& algo, const SubsetSumInstance& inst,
                            const SolveOutcome& out);

} // namespace lowss

#endif
