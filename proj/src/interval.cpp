#include "pisot/interval.hpp"

#include "pisot/errors.hpp"

#include <algorithm>
#include <sstream>

namespace pisot {

RealInterval RealInterval::zero(Prec prec) {
    RealInterval r;
    mpfr_set_prec(r.lo_.get(), prec);
    mpfr_set_prec(r.hi_.get(), prec);
    mpfr_set_zero(r.lo_.get(), 1);
    mpfr_set_zero(r.hi_.get(), 1);
    return r;
}

RealInterval RealInterval::from_long(long v, Prec prec) {
    RealInterval r = zero(prec);
    mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::from_int(const mpz_class& v, Prec prec) {
    RealInterval r = zero(prec);
    mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::from_rat(const mpq_class& v, Prec prec) {
    RealInterval r = zero(prec);
    mpfr_set_q(r.lo_.get(), v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), v.get_mpq_t(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::from_double(double v, Prec prec) {
    RealInterval r = zero(prec);
    mpfr_set_d(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_d(r.hi_.get(), v, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::from_endpoints(const Mpfr& lo, const Mpfr& hi) {
    if (mpfr_greater_p(lo.get(), hi.get()))
        throw DomainError("interval endpoints out of order");
    RealInterval r;
    r.lo_ = lo;
    r.hi_ = hi;
    return r;
}

RealInterval RealInterval::operator+(const RealInterval& o) const {
    RealInterval r = zero(std::max(prec(), o.prec()));
    mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::operator-(const RealInterval& o) const {
    RealInterval r = zero(std::max(prec(), o.prec()));
    mpfr_sub(r.lo_.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::operator-() const {
    RealInterval r = zero(prec());
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::operator*(const RealInterval& o) const {
    const Prec p = std::max(prec(), o.prec());
    RealInterval r = zero(p);
    Mpfr t(p), best(p);
    mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
    mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
    // lower endpoint: min of the four products rounded down
    bool first = true;
    for (auto x : a)
        for (auto y : b) {
            mpfr_mul(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), best.get())) mpfr_set(best.get(), t.get(), MPFR_RNDD);
            first = false;
        }
    mpfr_set(r.lo_.get(), best.get(), MPFR_RNDD);
    // upper endpoint: max of the four products rounded up
    first = true;
    for (auto x : a)
        for (auto y : b) {
            mpfr_mul(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), best.get())) mpfr_set(best.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    mpfr_set(r.hi_.get(), best.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::operator/(const RealInterval& o) const {
    if (o.contains_zero()) throw DomainError("interval division by interval containing zero");
    const Prec p = std::max(prec(), o.prec());
    RealInterval r = zero(p);
    Mpfr t(p), best(p);
    mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
    mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
    bool first = true;
    for (auto x : a)
        for (auto y : b) {
            mpfr_div(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), best.get())) mpfr_set(best.get(), t.get(), MPFR_RNDD);
            first = false;
        }
    mpfr_set(r.lo_.get(), best.get(), MPFR_RNDD);
    first = true;
    for (auto x : a)
        for (auto y : b) {
            mpfr_div(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), best.get())) mpfr_set(best.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    mpfr_set(r.hi_.get(), best.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::sqrt() const {
    if (mpfr_sgn(lo_.get()) < 0) throw DomainError("sqrt of interval containing negatives");
    RealInterval r = zero(prec());
    mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::square() const {
    RealInterval r = zero(prec());
    if (contains_zero()) {
        mpfr_set_zero(r.lo_.get(), 1);
        Mpfr t1(prec()), t2(prec());
        mpfr_mul(t1.get(), lo_.get(), lo_.get(), MPFR_RNDU);
        mpfr_mul(t2.get(), hi_.get(), hi_.get(), MPFR_RNDU);
        mpfr_max(r.hi_.get(), t1.get(), t2.get(), MPFR_RNDU);
    } else if (mpfr_sgn(lo_.get()) > 0) {
        mpfr_mul(r.lo_.get(), lo_.get(), lo_.get(), MPFR_RNDD);
        mpfr_mul(r.hi_.get(), hi_.get(), hi_.get(), MPFR_RNDU);
    } else {
        mpfr_mul(r.lo_.get(), hi_.get(), hi_.get(), MPFR_RNDD);
        mpfr_mul(r.hi_.get(), lo_.get(), lo_.get(), MPFR_RNDU);
    }
    return r;
}

RealInterval RealInterval::abs() const {
    RealInterval r = zero(prec());
    if (contains_zero()) {
        mpfr_set_zero(r.lo_.get(), 1);
        Mpfr t1(prec()), t2(prec());
        mpfr_abs(t1.get(), lo_.get(), MPFR_RNDU);
        mpfr_abs(t2.get(), hi_.get(), MPFR_RNDU);
        mpfr_max(r.hi_.get(), t1.get(), t2.get(), MPFR_RNDU);
    } else if (mpfr_sgn(lo_.get()) > 0) {
        return *this;
    } else {
        mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
        mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    }
    return r;
}

bool RealInterval::contains_zero() const {
    return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

std::optional<bool> RealInterval::lt(const RealInterval& o) const {
    if (mpfr_less_p(hi_.get(), o.lo_.get())) return true;
    if (mpfr_greaterequal_p(lo_.get(), o.hi_.get())) return false;
    return std::nullopt;
}

double RealInterval::mid_d() const {
    Mpfr m(prec());
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return mpfr_get_d(m.get(), MPFR_RNDN);
}

double RealInterval::wid_d() const {
    Mpfr w(prec());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
}

mpq_class RealInterval::mid_q() const {
    mpq_class a, b;
    mpfr_get_q(a.get_mpq_t(), lo_.get());
    mpfr_get_q(b.get_mpq_t(), hi_.get());
    mpq_class m = (a + b) / 2;
    m.canonicalize();
    return m;
}

std::string RealInterval::str() const {
    std::ostringstream os;
    os << "[" << lo_d() << ", " << hi_d() << "]";
    return os.str();
}

ComplexBox ComplexBox::from_real(const RealInterval& re) {
    return ComplexBox(re, RealInterval::zero(re.prec()));
}

ComplexBox ComplexBox::operator+(const ComplexBox& o) const { return {re_ + o.re_, im_ + o.im_}; }
ComplexBox ComplexBox::operator-(const ComplexBox& o) const { return {re_ - o.re_, im_ - o.im_}; }
ComplexBox ComplexBox::operator-() const { return {-re_, -im_}; }
ComplexBox ComplexBox::conj() const { return {re_, -im_}; }

ComplexBox ComplexBox::operator*(const ComplexBox& o) const {
    return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
}

ComplexBox ComplexBox::operator/(const ComplexBox& o) const {
    RealInterval d = o.mag_sq();
    if (d.contains_zero()) throw DomainError("complex division by box containing zero");
    ComplexBox num = *this * o.conj();
    return {num.re_ / d, num.im_ / d};
}

RealInterval ComplexBox::mag_sq() const { return re_.square() + im_.square(); }

RealInterval ComplexBox::mag() const { return mag_sq().sqrt(); }

bool ComplexBox::strictly_inside(const ComplexBox& o) const {
    return mpfr_greater_p(re_.lo().get(), o.re_.lo().get()) &&
           mpfr_less_p(re_.hi().get(), o.re_.hi().get()) &&
           mpfr_greater_p(im_.lo().get(), o.im_.lo().get()) &&
           mpfr_less_p(im_.hi().get(), o.im_.hi().get());
}

std::string ComplexBox::str() const {
    return re_.str() + " + " + im_.str() + "*I";
}

} // namespace pisot
