#ifndef LOWSS_POLY_HPP
#define LOWSS_POLY_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <lowss/ff.hpp>
#include <lowss/meter.hpp>

namespace lowss {

// Dense polynomial over a FieldCtx. Coefficient i of x^i lives at index i;
// the two component arrays split an F_{p^2} coefficient a + b*x, and c1
// stays empty over prime fields. Trailing coefficient nonzero unless zero.
class DensePoly {
public:
    DensePoly() = default;
    explicit DensePoly(const FieldCtx& ctx) : ctx_(&ctx) {}
    DensePoly(const FieldCtx& ctx, std::vector<u64> coeffs);

    static DensePoly constant(const FieldCtx& ctx, Fe c);
    static DensePoly monomial(const FieldCtx& ctx, u64 exp, Fe c);

    const FieldCtx& ctx() const { return *ctx_; }
    bool is_zero() const { return c0_.empty(); }
    // -1 for the zero polynomial
    long long degree() const { return static_cast<long long>(c0_.size()) - 1; }
    std::size_t size() const { return c0_.size(); }

    Fe coeff(std::size_t i) const {
        if (i >= c0_.size()) return {0, 0};
        return {c0_[i], ctx_->k() == 2 ? c1_[i] : 0};
    }
    void set_coeff(std::size_t i, Fe v);
    void add_coeff(std::size_t i, Fe v);

    std::span<const u64> raw0() const { return c0_; }
    std::span<const u64> raw1() const { return c1_; }

    void trim();

    Fe eval_horner(Fe x) const;

    friend DensePoly poly_add(const DensePoly& a, const DensePoly& b);
    friend DensePoly poly_sub(const DensePoly& a, const DensePoly& b);
    friend DensePoly poly_mul(const DensePoly& a, const DensePoly& b);

private:
    const FieldCtx* ctx_ = nullptr;
    std::vector<u64> c0_;
    std::vector<u64> c1_;
};

DensePoly poly_add(const DensePoly& a, const DensePoly& b);
DensePoly poly_sub(const DensePoly& a, const DensePoly& b);
// Schoolbook below a size threshold, in-field NTT when q-1 carries enough
// powers of two, Karatsuba otherwise.
DensePoly poly_mul(const DensePoly& a, const DensePoly& b);

// B(x) = x^e - h
struct BinomialModulus {
    u64 e = 1;
    Fe h{1, 0};
};

// x^a mod B(x) is the monomial scale * x^slot.
struct MonoReduction {
    u64 slot;
    Fe scale;
};
MonoReduction mono_mod_binomial(const FieldCtx& ctx, u64 a, const BinomialModulus& mod);

// Fixed-length-e coefficient vector reduced mod a two-term binomial.
class ResiduePoly {
public:
    ResiduePoly() = default;
    ResiduePoly(const FieldCtx& ctx, const BinomialModulus& mod);

    static ResiduePoly one(const FieldCtx& ctx, const BinomialModulus& mod);

    const FieldCtx& ctx() const { return *ctx_; }
    const BinomialModulus& modulus() const { return mod_; }
    u64 length() const { return mod_.e; }

    Fe coeff(std::size_t i) const { return {c0_[i], ctx_->k() == 2 ? c1_[i] : 0}; }
    void set_coeff(std::size_t i, Fe v);
    void add_coeff(std::size_t i, Fe v);

    // acc *= (sparse polynomial given as exponent/coefficient terms)
    void mul_sparse(std::span<const std::pair<u64, Fe>> terms);

    DensePoly to_dense() const;

    friend ResiduePoly residue_mul(const ResiduePoly& a, const ResiduePoly& b);
    friend ResiduePoly reduce_mod_binomial(const DensePoly& f, const BinomialModulus& mod);

private:
    const FieldCtx* ctx_ = nullptr;
    BinomialModulus mod_;
    std::vector<u64> c0_;
    std::vector<u64> c1_;
};

ResiduePoly residue_mul(const ResiduePoly& a, const ResiduePoly& b);
ResiduePoly reduce_mod_binomial(const DensePoly& f, const BinomialModulus& mod);

// Subproduct tree + remainder tree; agrees exactly with Horner.
std::vector<Fe> multipoint_eval(const DensePoly& f, std::span<const Fe> points,
                                SpaceMeter* meter = nullptr);
std::vector<Fe> multipoint_eval(const ResiduePoly& f, std::span<const Fe> points,
                                SpaceMeter* meter = nullptr);

// Sum of x^(q-1-i) for i in [lo, hi], in closed form; x = 1 degenerates to
// (hi - lo + 1) mod p.
Fe range_selector(const FieldCtx& ctx, u64 lo, u64 hi, Fe x);

// Multiplies a stream of dense factors (degree <= degreeCap each) modulo a
// two-term binomial: groups of max(1, floor(e/(degreeCap+1))) factors are
// multiplied unreduced by a binary tree, reduced, and folded together.
ResiduePoly grouped_product(const std::function<std::optional<DensePoly>()>& nextFactor,
                            const FieldCtx& ctx, const BinomialModulus& mod,
                            u64 degreeCap, SpaceMeter* meter = nullptr);

} // namespace lowss

#endif
