#ifndef LOWSS_BIGINT_HPP
#define LOWSS_BIGINT_HPP

#include <cassert>
#include <compare>
#include <cstdint>
#include <vector>

namespace lowss {

// Unsigned big integer, just large enough for exact comparisons of
// (1+eps)^u powers and test oracles. Little-endian 64-bit limbs.
class BigUint {
public:
    BigUint() = default;
    explicit BigUint(std::uint64_t v) {
        if (v) limbs_.push_back(v);
    }

    bool is_zero() const { return limbs_.empty(); }

    friend BigUint operator+(const BigUint& a, const BigUint& b) {
        BigUint r;
        const std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
        r.limbs_.resize(n, 0);
        unsigned __int128 carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            unsigned __int128 s = carry;
            if (i < a.limbs_.size()) s += a.limbs_[i];
            if (i < b.limbs_.size()) s += b.limbs_[i];
            r.limbs_[i] = static_cast<std::uint64_t>(s);
            carry = s >> 64;
        }
        if (carry) r.limbs_.push_back(static_cast<std::uint64_t>(carry));
        return r;
    }

    friend BigUint operator*(const BigUint& a, const BigUint& b) {
        BigUint r;
        if (a.is_zero() || b.is_zero()) return r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            unsigned __int128 carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                unsigned __int128 cur = carry + r.limbs_[i + j] +
                    static_cast<unsigned __int128>(a.limbs_[i]) * b.limbs_[j];
                r.limbs_[i + j] = static_cast<std::uint64_t>(cur);
                carry = cur >> 64;
            }
            std::size_t k = i + b.limbs_.size();
            while (carry) {
                unsigned __int128 cur = carry + r.limbs_[k];
                r.limbs_[k] = static_cast<std::uint64_t>(cur);
                carry = cur >> 64;
                ++k;
            }
        }
        r.trim();
        return r;
    }

    BigUint pow(std::uint64_t e) const {
        BigUint r(1);
        BigUint base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) {
        if (a.limbs_.size() != b.limbs_.size())
            return a.limbs_.size() <=> b.limbs_.size();
        for (std::size_t i = a.limbs_.size(); i-- > 0;) {
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
        }
        return std::strong_ordering::equal;
    }
    friend bool operator==(const BigUint& a, const BigUint& b) {
        return a.limbs_ == b.limbs_;
    }

private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
    std::vector<std::uint64_t> limbs_;
};

} // namespace lowss

#endif
