#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

namespace pisot {

using Prec = mpfr_prec_t;

// RAII wrapper around one mpfr_t.
class Mpfr {
public:
    explicit Mpfr(Prec prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Mpfr(const Mpfr& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Mpfr(Mpfr&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    Mpfr& operator=(const Mpfr& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Mpfr& operator=(Mpfr&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    Prec prec() const { return mpfr_get_prec(v_); }

private:
    mpfr_t v_;
};

// Closed real interval [lo, hi] with outward-rounded endpoints.
// All operations return enclosures of the exact result.
class RealInterval {
public:
    RealInterval() : lo_(64), hi_(64) {}

    static RealInterval zero(Prec prec = 64);
    static RealInterval from_long(long v, Prec prec);
    static RealInterval from_int(const mpz_class& v, Prec prec);
    static RealInterval from_rat(const mpq_class& v, Prec prec);
    static RealInterval from_double(double v, Prec prec);
    // Construct from explicit endpoints (already rounded outward by caller).
    static RealInterval from_endpoints(const Mpfr& lo, const Mpfr& hi);

    RealInterval operator+(const RealInterval& o) const;
    RealInterval operator-(const RealInterval& o) const;
    RealInterval operator*(const RealInterval& o) const;
    RealInterval operator-() const;
    // Division; throws DomainError if the divisor contains zero.
    RealInterval operator/(const RealInterval& o) const;
    // Square root; throws DomainError if the interval contains negatives.
    RealInterval sqrt() const;
    // Enclosure of x^2 (tight even when the interval straddles zero).
    RealInterval square() const;
    // Enclosure of |x|.
    RealInterval abs() const;

    bool contains_zero() const;
    bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()); }
    // Certified strict comparison: true/false when provable, nullopt when the
    // intervals overlap.
    std::optional<bool> lt(const RealInterval& o) const;
    std::optional<bool> gt(const RealInterval& o) const { return o.lt(*this); }

    double lo_d() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
    double mid_d() const;
    double wid_d() const;
    const Mpfr& lo() const { return lo_; }
    const Mpfr& hi() const { return hi_; }
    Prec prec() const { return std::max(lo_.prec(), hi_.prec()); }

    // Exact midpoint as a rational (for restarting refinement from a point).
    mpq_class mid_q() const;

    std::string str() const;

private:
    Mpfr lo_, hi_;
    friend class ComplexBox;
};

// Axis-aligned rectangle enclosing a complex value.
class ComplexBox {
public:
    ComplexBox() = default;
    ComplexBox(RealInterval re, RealInterval im) : re_(std::move(re)), im_(std::move(im)) {}

    static ComplexBox from_real(const RealInterval& re);

    const RealInterval& re() const { return re_; }
    const RealInterval& im() const { return im_; }

    ComplexBox operator+(const ComplexBox& o) const;
    ComplexBox operator-(const ComplexBox& o) const;
    ComplexBox operator*(const ComplexBox& o) const;
    ComplexBox operator-() const;
    // Division; throws DomainError if the divisor box contains zero.
    ComplexBox operator/(const ComplexBox& o) const;
    ComplexBox conj() const;

    // Enclosure of |z|^2 — preferred for modulus comparisons (no sqrt).
    RealInterval mag_sq() const;
    // Enclosure of |z|.
    RealInterval mag() const;

    bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
    // True if this box lies strictly inside o (needed by interval Newton).
    bool strictly_inside(const ComplexBox& o) const;

    double mid_re() const { return re_.mid_d(); }
    double mid_im() const { return im_.mid_d(); }

    std::string str() const;

private:
    RealInterval re_, im_;
};

} // namespace pisot
