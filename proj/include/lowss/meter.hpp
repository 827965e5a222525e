#ifndef LOWSS_METER_HPP
#define LOWSS_METER_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>

namespace lowss {

// Working-space accounting in 64-bit machine words. Solvers charge live
// state at allocation points; the read-only input array and append-only
// output are never charged.
class SpaceMeter {
public:
    void alloc(std::uint64_t words) {
        current_ += words;
        peak_ = std::max(peak_, current_);
    }

    void release(std::uint64_t words) {
        assert(current_ >= words);
        current_ -= words;
    }

    std::uint64_t current_words() const { return current_; }
    std::uint64_t peak_words() const { return peak_; }

    void reset() { current_ = 0; peak_ = 0; }

private:
    std::uint64_t current_ = 0;
    std::uint64_t peak_ = 0;  // monotone nondecreasing, >= current
};

// RAII charge for a fixed-size block of working state.
class ScopedWords {
public:
    ScopedWords(SpaceMeter* meter, std::uint64_t words)
        : meter_(meter), words_(words) {
        if (meter_) meter_->alloc(words_);
    }
    ~ScopedWords() {
        if (meter_) meter_->release(words_);
    }
    ScopedWords(const ScopedWords&) = delete;
    ScopedWords& operator=(const ScopedWords&) = delete;

private:
    SpaceMeter* meter_;
    std::uint64_t words_;
};

} // namespace lowss

#endif
