#include "pisot/numberfield.hpp"

#include "pisot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <sstream>

namespace pisot {

namespace {

constexpr Prec kPrecCap = 4096;

void check_same_field(const FieldElement& a, const FieldElement& b) {
    if (!a.field() || !b.field()) throw DomainError("operation on uninitialized field element");
    if (a.field() == b.field()) return;
    if (a.field()->minimal_poly == b.field()->minimal_poly) return;
    throw DomainError("field elements belong to different fields");
}

// Reduce a coordinate vector of length up to 2d-1 modulo the monic defining
// polynomial, in place; result has length d.
template <typename T>
void reduce_mod(std::vector<T>& r, const MonicIntPoly& p) {
    int d = p.degree();
    for (int i = static_cast<int>(r.size()) - 1; i >= d; --i) {
        T c = r[i];
        r[i] = 0;
        if (c == 0) continue;
        for (int j = 0; j < d; ++j) r[i - d + j] -= c * T(p.coeffs[j]);
    }
    r.resize(d);
}

template <typename T>
std::vector<T> convolve(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> r(a.size() + b.size() - 1, T(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

} // namespace

// --- FieldElement -------------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, std::vector<mpz_class> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (static_cast<int>(coords_.size()) != field_->degree())
        throw DomainError("coordinate vector length does not match field degree");
}

bool FieldElement::is_zero() const {
    for (const mpz_class& c : coords_)
        if (c != 0) return false;
    return true;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same_field(*this, o);
    std::vector<mpz_class> r = coords_;
    for (size_t i = 0; i < r.size(); ++i) r[i] += o.coords_[i];
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same_field(*this, o);
    std::vector<mpz_class> r = coords_;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= o.coords_[i];
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-() const {
    std::vector<mpz_class> r = coords_;
    for (mpz_class& c : r) c = -c;
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same_field(*this, o);
    std::vector<mpz_class> r = convolve(coords_, o.coords_);
    reduce_mod(r, field_->minimal_poly);
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator*(const mpz_class& k) const {
    std::vector<mpz_class> r = coords_;
    for (mpz_class& c : r) c *= k;
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::mul_beta() const {
    int d = field_->degree();
    std::vector<mpz_class> r(d);
    const mpz_class& top = coords_[d - 1];
    for (int i = d - 1; i >= 1; --i) r[i] = coords_[i - 1];
    r[0] = 0;
    if (top != 0)
        for (int j = 0; j < d; ++j) r[j] -= top * field_->minimal_poly.coeffs[j];
    return FieldElement(field_, std::move(r));
}

bool FieldElement::operator==(const FieldElement& o) const {
    if (!field_ || !o.field_) return !field_ && !o.field_;
    if (field_ != o.field_ && !(field_->minimal_poly == o.field_->minimal_poly)) return false;
    return coords_ == o.coords_;
}

size_t FieldElement::hash() const {
    size_t h = 1469598103934665603ULL;
    for (const mpz_class& c : coords_) {
        unsigned long r = mpz_fdiv_ui(c.get_mpz_t(), 0x1FFFFFFFFFFFFFFFUL);
        h ^= r + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 1099511628211ULL;
    }
    return h;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coords_.size(); ++i) {
        const mpz_class& c = coords_[i];
        if (c == 0) continue;
        mpz_class a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (i == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "b";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

FieldElement ring_mul(const FieldElement& x, const FieldElement& y) { return x * y; }

// --- QFieldElement ------------------------------------------------------------

QFieldElement::QFieldElement(FieldPtr field, std::vector<mpq_class> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (static_cast<int>(coords_.size()) != field_->degree())
        throw DomainError("coordinate vector length does not match field degree");
}

QFieldElement QFieldElement::from(const FieldElement& x) {
    std::vector<mpq_class> r(x.coords().size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = mpq_class(x.coords()[i]);
    return QFieldElement(x.field(), std::move(r));
}

bool QFieldElement::is_zero() const {
    for (const mpq_class& c : coords_)
        if (c != 0) return false;
    return true;
}

QFieldElement QFieldElement::operator+(const QFieldElement& o) const {
    std::vector<mpq_class> r = coords_;
    for (size_t i = 0; i < r.size(); ++i) r[i] += o.coords_[i];
    return QFieldElement(field_, std::move(r));
}

QFieldElement QFieldElement::operator-(const QFieldElement& o) const {
    std::vector<mpq_class> r = coords_;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= o.coords_[i];
    return QFieldElement(field_, std::move(r));
}

QFieldElement QFieldElement::operator-() const {
    std::vector<mpq_class> r = coords_;
    for (mpq_class& c : r) c = -c;
    return QFieldElement(field_, std::move(r));
}

QFieldElement QFieldElement::operator*(const QFieldElement& o) const {
    std::vector<mpq_class> r = convolve(coords_, o.coords_);
    reduce_mod(r, field_->minimal_poly);
    return QFieldElement(field_, std::move(r));
}

QFieldElement QFieldElement::operator*(const mpq_class& k) const {
    std::vector<mpq_class> r = coords_;
    for (mpq_class& c : r) c *= k;
    return QFieldElement(field_, std::move(r));
}

QFieldElement QFieldElement::operator/(const QFieldElement& o) const {
    if (o.is_zero()) throw DomainError("division by zero field element");
    int d = field_->degree();
    // Column j of A holds the coordinates of o * beta^j; solving A c = this
    // gives c with (sum c_j beta^j) * o = this.
    std::vector<std::vector<mpq_class>> A(d, std::vector<mpq_class>(d));
    std::vector<mpq_class> col = o.coords_;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) A[i][j] = col[i];
        if (j + 1 < d) {
            std::vector<mpq_class> next(d + 1, mpq_class(0));
            for (int i = 0; i < d; ++i) next[i + 1] = col[i];
            reduce_mod(next, field_->minimal_poly);
            col = std::move(next);
        }
    }
    std::vector<mpq_class> rhs = coords_;
    // Gaussian elimination with exact rational arithmetic.
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 0; k < d; ++k) {
        int piv = -1;
        for (int i = k; i < d; ++i)
            if (A[i][k] != 0) { piv = i; break; }
        if (piv < 0) throw DomainError("division by zero divisor in quotient ring");
        std::swap(A[k], A[piv]);
        std::swap(rhs[k], rhs[piv]);
        for (int i = k + 1; i < d; ++i) {
            if (A[i][k] == 0) continue;
            mpq_class f = A[i][k] / A[k][k];
            for (int j = k; j < d; ++j) A[i][j] -= f * A[k][j];
            rhs[i] -= f * rhs[k];
        }
    }
    std::vector<mpq_class> c(d);
    for (int k = d - 1; k >= 0; --k) {
        mpq_class s = rhs[k];
        for (int j = k + 1; j < d; ++j) s -= A[k][j] * c[j];
        c[k] = s / A[k][k];
    }
    return QFieldElement(field_, std::move(c));
}

bool QFieldElement::operator==(const QFieldElement& o) const { return coords_ == o.coords_; }

mpz_class QFieldElement::denominator() const {
    mpz_class den = 1;
    for (const mpq_class& c : coords_) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        den = den / g * c.get_den();
    }
    return den;
}

FieldElement QFieldElement::scaled_to_integer() const {
    mpz_class den = denominator();
    std::vector<mpz_class> r(coords_.size());
    for (size_t i = 0; i < coords_.size(); ++i) {
        mpq_class v = coords_[i] * mpq_class(den);
        v.canonicalize();
        r[i] = v.get_num();
    }
    return FieldElement(field_, std::move(r));
}

// --- root isolation and certification -----------------------------------------

namespace {

// Horner evaluation of an integer polynomial over a complex box.
ComplexBox eval_poly_box(const std::vector<mpz_class>& c, const ComplexBox& x, Prec prec) {
    ComplexBox acc = ComplexBox::from_real(RealInterval::from_int(c.back(), prec));
    for (size_t i = c.size() - 1; i-- > 0;) {
        acc = acc * x;
        acc = acc + ComplexBox::from_real(RealInterval::from_int(c[i], prec));
    }
    return acc;
}

std::vector<mpz_class> poly_derivative(const std::vector<mpz_class>& c) {
    std::vector<mpz_class> d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<long>(i));
    return d;
}

// True if the interval is provably narrower than 2^exp2.
bool narrower_than(const RealInterval& iv, long exp2) {
    Mpfr w(iv.prec());
    mpfr_sub(w.get(), iv.hi().get(), iv.lo().get(), MPFR_RNDU);
    if (mpfr_zero_p(w.get())) return true;
    if (mpfr_sgn(w.get()) < 0) return true; // cannot happen for valid intervals
    return mpfr_get_exp(w.get()) <= exp2;
}

bool box_narrower_than(const ComplexBox& b, long exp2) {
    return narrower_than(b.re(), exp2) && narrower_than(b.im(), exp2);
}

RealInterval hull_rat(const mpq_class& lo, const mpq_class& hi, Prec prec) {
    RealInterval a = RealInterval::from_rat(lo, prec);
    RealInterval b = RealInterval::from_rat(hi, prec);
    return RealInterval::from_endpoints(a.lo(), b.hi());
}

RealInterval around_double(double c, double r, Prec prec) {
    Mpfr lo(prec), hi(prec);
    mpfr_set_d(lo.get(), c, MPFR_RNDD);
    mpfr_sub_d(lo.get(), lo.get(), r, MPFR_RNDD);
    mpfr_set_d(hi.get(), c, MPFR_RNDU);
    mpfr_add_d(hi.get(), hi.get(), r, MPFR_RNDU);
    return RealInterval::from_endpoints(lo, hi);
}

// One interval Newton step: N = m - p(m)/p'(X) for the exact midpoint m of X.
// Throws DomainError when p'(X) contains zero.
ComplexBox newton_step(const std::vector<mpz_class>& p, const std::vector<mpz_class>& dp,
                       const ComplexBox& X, Prec prec) {
    ComplexBox M(RealInterval::from_rat(X.re().mid_q(), prec),
                 RealInterval::from_rat(X.im().mid_q(), prec));
    ComplexBox pm = eval_poly_box(p, M, prec);
    ComplexBox pdx = eval_poly_box(dp, X, prec);
    return M - pm / pdx;
}

// Contract a certified box toward the root until it is narrower than 2^exp2
// (or no further progress is possible at this precision).
ComplexBox contract(const std::vector<mpz_class>& p, const std::vector<mpz_class>& dp,
                    ComplexBox X, Prec prec, long exp2) {
    for (int iter = 0; iter < 200 && !box_narrower_than(X, exp2); ++iter) {
        ComplexBox N;
        try {
            N = newton_step(p, dp, X, prec);
        } catch (const DomainError&) {
            break;
        }
        if (!N.strictly_inside(X)) break;
        X = N;
    }
    return X;
}

// Attempt to certify a unique simple root of p near z: find a box around z
// for which the interval Newton operator maps strictly inside, which proves
// existence and uniqueness. Returns nullopt if no tried radius certifies.
std::optional<ComplexBox> certify_root(const std::vector<mpz_class>& p,
                                       const std::vector<mpz_class>& dp,
                                       std::complex<double> z, Prec prec, long exp2) {
    double scale = 1.0 + std::abs(z);
    for (double r0 : {1e-10, 1e-8, 1e-6, 1e-4, 1e-3}) {
        double r = r0 * scale;
        ComplexBox X(around_double(z.real(), r, prec), around_double(z.imag(), r, prec));
        ComplexBox N;
        try {
            N = newton_step(p, dp, X, prec);
        } catch (const DomainError&) {
            continue;
        }
        if (!N.strictly_inside(X)) continue;
        return contract(p, dp, N, prec, exp2);
    }
    return std::nullopt;
}

// Durand-Kerner simultaneous iteration in double precision; provides initial
// guesses only — every root is subsequently certified with interval Newton.
std::vector<std::complex<double>> durand_kerner(const std::vector<mpz_class>& coeffs, int attempt) {
    int d = static_cast<int>(coeffs.size()) - 1;
    std::vector<double> c(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i].get_d();
    double bound = 1.0;
    for (int i = 0; i < d; ++i) bound = std::max(bound, std::abs(c[i]));
    bound += 1.0;
    auto horner = [&](std::complex<double> z) {
        std::complex<double> v = c[d];
        for (int i = d - 1; i >= 0; --i) v = v * z + c[i];
        return v;
    };
    std::vector<std::complex<double>> z(d);
    for (int j = 0; j < d; ++j) {
        double th = 2.0 * M_PI * j / d + 0.39 + 0.17 * attempt;
        z[j] = 0.7 * bound * std::complex<double>(std::cos(th), std::sin(th));
    }
    for (int iter = 0; iter < 3000; ++iter) {
        double worst = 0.0;
        for (int j = 0; j < d; ++j) {
            std::complex<double> den = 1.0;
            for (int k = 0; k < d; ++k)
                if (k != j) den *= (z[j] - z[k]);
            if (den == 0.0) { den = 1e-30; }
            std::complex<double> delta = horner(z[j]) / den;
            z[j] -= delta;
            worst = std::max(worst, std::abs(delta) / (1.0 + std::abs(z[j])));
        }
        if (worst < 1e-14) break;
    }
    return z;
}

struct RootRec {
    ComplexBox box;
    bool real = false;
    mpq_class riv_lo, riv_hi;
    int pair_tag = -1; // links a conjugate pair before sorting
};

bool separated(const ComplexBox& a, const ComplexBox& b) {
    if (mpfr_less_p(a.re().hi().get(), b.re().lo().get()) ||
        mpfr_less_p(b.re().hi().get(), a.re().lo().get()))
        return true;
    if (mpfr_less_p(a.im().hi().get(), b.im().lo().get()) ||
        mpfr_less_p(b.im().hi().get(), a.im().lo().get()))
        return true;
    return false;
}

// Narrow one root record (certified: real bracket bisection or complex
// Newton contraction).
void refine_rec(const MonicIntPoly& sf, RootRec& r, Prec np) {
    if (r.real) {
        auto iv = refine_real_root(sf, {r.riv_lo, r.riv_hi}, static_cast<unsigned>(np));
        r.riv_lo = iv.first;
        r.riv_hi = iv.second;
        r.box = ComplexBox(hull_rat(iv.first, iv.second, np), RealInterval::zero(np));
    } else {
        std::vector<mpz_class> dc = poly_derivative(sf.coeffs);
        r.box = contract(sf.coeffs, dc, r.box, 2 * np, 4 - static_cast<long>(np));
    }
}

MonicIntPoly squarefree_int(const MonicIntPoly& p) {
    QPoly sf = qpoly_squarefree_part(qpoly_from(p));
    while (!sf.empty() && sf.back() == 0) sf.pop_back();
    std::vector<mpz_class> c(sf.size());
    for (size_t i = 0; i < sf.size(); ++i) {
        if (sf[i].get_den() != 1)
            throw Error("squarefree part of a monic integer polynomial must be integral");
        c[i] = sf[i].get_num();
    }
    return MonicIntPoly::from_coeffs(std::move(c));
}

// Isolate all distinct roots of p (via its squarefree part) into disjoint
// certified boxes at the given precision.
std::vector<RootRec> isolate_all(const MonicIntPoly& sf, Prec prec) {
    int dd = sf.degree();
    std::vector<RootRec> out;

    auto real_brackets = isolate_real_roots(sf);
    int r1 = static_cast<int>(real_brackets.size());
    for (auto& [lo, hi] : real_brackets) {
        auto iv = refine_real_root(sf, {lo, hi}, static_cast<unsigned>(prec));
        RootRec rec;
        rec.real = true;
        rec.riv_lo = iv.first;
        rec.riv_hi = iv.second;
        rec.box = ComplexBox(hull_rat(iv.first, iv.second, prec), RealInterval::zero(prec));
        out.push_back(std::move(rec));
    }

    int r2_needed = (dd - r1) / 2;
    if (r1 + 2 * r2_needed != dd)
        throw Error("real/complex root count parity violated"); // unreachable

    if (r2_needed > 0) {
        std::vector<mpz_class> pc = sf.coeffs;
        std::vector<mpz_class> dc = poly_derivative(pc);
        bool done = false;
        for (int attempt = 0; attempt < 8 && !done; ++attempt) {
            auto approx = durand_kerner(pc, attempt);
            std::vector<ComplexBox> reps;
            for (auto z : approx) {
                if (z.imag() >= -1e-12 * (1.0 + std::abs(z))) continue;
                auto cert = certify_root(pc, dc, z, prec, 4 - static_cast<long>(prec));
                if (!cert) continue;
                // representative must lie strictly below the real axis
                if (mpfr_sgn(cert->im().hi().get()) >= 0) continue;
                reps.push_back(*cert);
            }
            // deduplicate near-identical certifications (DK can converge two
            // iterates to the same root only transiently; boxes then overlap)
            std::vector<ComplexBox> uniq;
            for (auto& b : reps) {
                bool dup = false;
                for (auto& u : uniq)
                    if (!separated(b, u)) dup = true;
                if (!dup) uniq.push_back(b);
            }
            if (static_cast<int>(uniq.size()) != r2_needed) continue;
            int tag = 0;
            for (auto& b : uniq) {
                RootRec rep;
                rep.box = b;
                rep.pair_tag = tag;
                RootRec conj;
                conj.box = b.conj();
                conj.pair_tag = tag;
                ++tag;
                out.push_back(std::move(rep));
                out.push_back(std::move(conj));
            }
            done = true;
        }
        if (!done)
            throw PrecisionError("could not certify all complex roots (approximation failed)");
    }

    // pairwise disjointness of all enclosures (adjacent real brackets can
    // share an endpoint before refinement: narrow until separated)
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j) {
            Prec np = prec;
            while (!separated(out[i].box, out[j].box)) {
                np *= 2;
                if (np > kPrecCap)
                    throw PrecisionError("root enclosures not disjoint within precision cap");
                refine_rec(sf, out[i], np);
                refine_rec(sf, out[j], np);
            }
        }
    return out;
}

} // namespace

// --- NumberField ---------------------------------------------------------------

Enclosure NumberField::embedding(int index, Prec min_prec) const {
    if (index < 0 || index >= num_embeddings()) throw DomainError("embedding index out of range");
    std::lock_guard<std::mutex> lock(mu_);
    if (min_prec > 0) refine_locked(index, min_prec);
    const Root& r = roots_[index];
    return Enclosure{r.box, r.real, r.prec};
}

std::vector<Enclosure> NumberField::embeddings(Prec min_prec) const {
    std::vector<Enclosure> v;
    for (int i = 0; i < num_embeddings(); ++i) v.push_back(embedding(i, min_prec));
    return v;
}

bool NumberField::embedding_is_real(int index) const {
    if (index < 0 || index >= num_embeddings()) throw DomainError("embedding index out of range");
    return roots_[index].real;
}

std::vector<int> NumberField::contracting_indices() const {
    std::vector<int> v;
    for (int i = 0; i < num_embeddings(); ++i)
        if (i != expanding_index) v.push_back(i);
    return v;
}

FieldElement NumberField::zero() const { return from_int(0); }
FieldElement NumberField::one() const { return from_int(1); }

FieldElement NumberField::beta() const {
    std::vector<mpz_class> c(degree(), 0);
    if (degree() == 1)
        c[0] = -minimal_poly.coeffs[0]; // beta is rational: X - c0 root
    else
        c[1] = 1;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement NumberField::from_int(const mpz_class& n) const {
    std::vector<mpz_class> c(degree(), 0);
    c[0] = n;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement NumberField::element(std::vector<mpz_class> coords) const {
    return FieldElement(shared_from_this(), std::move(coords));
}

void NumberField::refine_locked(int index, Prec min_prec) const {
    Root& r = roots_[index];
    if (r.prec >= min_prec) return;
    if (min_prec > kPrecCap) throw PrecisionError("precision request exceeds the 4096-bit cap");
    if (r.conj_of >= 0 && !roots_[r.conj_of].real) {
        // derived conjugate: refine the representative, then mirror
        const Root& rep = roots_[r.conj_of];
        if (rep.prec < min_prec) refine_locked(r.conj_of, min_prec);
        r.box = roots_[r.conj_of].box.conj();
        r.prec = roots_[r.conj_of].prec;
        return;
    }
    if (r.real) {
        auto iv = refine_real_root(sf_, {r.riv_lo, r.riv_hi}, static_cast<unsigned>(min_prec));
        r.riv_lo = iv.first;
        r.riv_hi = iv.second;
        r.box = ComplexBox(hull_rat(iv.first, iv.second, min_prec), RealInterval::zero(min_prec));
        r.prec = min_prec;
        return;
    }
    // complex representative: Newton-contract the existing certified box at
    // increasing working precision until narrow enough
    std::vector<mpz_class> dc = poly_derivative(sf_.coeffs);
    Prec work = std::max<Prec>(2 * min_prec, 128);
    for (; work <= kPrecCap * 2; work *= 2) {
        ComplexBox X = contract(sf_.coeffs, dc, r.box, work, 4 - static_cast<long>(min_prec));
        if (box_narrower_than(X, 4 - static_cast<long>(min_prec))) {
            r.box = X;
            r.prec = min_prec;
            return;
        }
        r.box = X; // keep partial progress (still certified: contractions nest)
    }
    throw PrecisionError("root refinement did not reach requested width within precision cap");
}

Enclosure NumberField::evaluate(const FieldElement& x, int index, Prec min_prec) const {
    if (!x.field() || (x.field().get() != this && !(x.field()->minimal_poly == minimal_poly)))
        throw DomainError("element does not belong to this field");
    Enclosure root = embedding(index, std::max<Prec>(min_prec, 64));
    Prec prec = std::max<Prec>(root.precision, 64);
    ComplexBox acc = ComplexBox::from_real(RealInterval::from_int(x.coords().back(), prec));
    for (size_t i = x.coords().size() - 1; i-- > 0;) {
        acc = acc * root.box;
        acc = acc + ComplexBox::from_real(RealInterval::from_int(x.coords()[i], prec));
    }
    return Enclosure{acc, root.real, prec};
}

Enclosure NumberField::evaluate(const QFieldElement& x, int index, Prec min_prec) const {
    if (!x.field() || (x.field().get() != this && !(x.field()->minimal_poly == minimal_poly)))
        throw DomainError("element does not belong to this field");
    Enclosure root = embedding(index, std::max<Prec>(min_prec, 64));
    Prec prec = std::max<Prec>(root.precision, 64);
    ComplexBox acc = ComplexBox::from_real(RealInterval::from_rat(x.coords().back(), prec));
    for (size_t i = x.coords().size() - 1; i-- > 0;) {
        acc = acc * root.box;
        acc = acc + ComplexBox::from_real(RealInterval::from_rat(x.coords()[i], prec));
    }
    return Enclosure{acc, root.real, prec};
}

// --- make_field -----------------------------------------------------------------

FieldPtr make_field(const MonicIntPoly& p, Prec precision) {
    if (precision < 16) precision = 16;
    if (precision > kPrecCap) throw PrecisionError("requested precision exceeds the 4096-bit cap");

    auto nf = std::shared_ptr<NumberField>(new NumberField());
    nf->minimal_poly = p;
    nf->sf_ = squarefree_int(p);

    Prec p0 = std::max<Prec>(64, precision);
    std::vector<RootRec> recs = isolate_all(nf->sf_, p0);

    // Sort by (Re asc, Im asc), refining on demand until every needed
    // comparison is decisive. Distinct roots differ in Re or (for equal Re)
    // in Im, so separation is always reachable.
    auto cmp_exact = [&](RootRec& a, RootRec& b, Prec& cur) -> bool {
        for (;;) {
            if (mpfr_less_p(a.box.re().hi().get(), b.box.re().lo().get())) return true;
            if (mpfr_less_p(b.box.re().hi().get(), a.box.re().lo().get())) return false;
            if (mpfr_less_p(a.box.im().hi().get(), b.box.im().lo().get())) return true;
            if (mpfr_less_p(b.box.im().hi().get(), a.box.im().lo().get())) return false;
            cur *= 2;
            if (cur > kPrecCap) throw PrecisionError("could not order root enclosures");
            refine_rec(nf->sf_, a, cur);
            refine_rec(nf->sf_, b, cur);
        }
    };
    Prec cur = p0;
    std::vector<int> order(recs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return cmp_exact(recs[i], recs[j], cur); });

    nf->roots_.resize(recs.size());
    std::vector<int> tag_first(recs.size(), -1);
    for (size_t pos = 0; pos < order.size(); ++pos) {
        RootRec& src = recs[order[pos]];
        NumberField::Root& dst = nf->roots_[pos];
        dst.box = src.box;
        dst.prec = p0;
        dst.real = src.real;
        dst.riv_lo = src.riv_lo;
        dst.riv_hi = src.riv_hi;
        dst.conj_of = -1;
        if (src.pair_tag >= 0) {
            if (tag_first[src.pair_tag] < 0) {
                tag_first[src.pair_tag] = static_cast<int>(pos);
            } else {
                // Refinement always works on the Im < 0 representative; its
                // partner is derived by mirroring.
                int a = tag_first[src.pair_tag];
                int b = static_cast<int>(pos);
                int rep = mpfr_sgn(nf->roots_[a].box.im().hi().get()) < 0 ? a : b;
                int der = (rep == a) ? b : a;
                nf->roots_[der].conj_of = rep;
            }
        }
    }

    // expanding index: eliminate candidates whose modulus is provably below
    // another's; ties (non-Pisot inputs) break deterministically by index.
    {
        std::vector<int> cand;
        for (int i = 0; i < nf->num_embeddings(); ++i) cand.push_back(i);
        Prec mp = p0;
        while (cand.size() > 1 && mp <= 512) {
            std::vector<RealInterval> mags;
            for (int i : cand) mags.push_back(nf->roots_[i].box.mag_sq());
            std::vector<int> keep;
            for (size_t i = 0; i < cand.size(); ++i) {
                bool dominated = false;
                for (size_t j = 0; j < cand.size(); ++j) {
                    if (i == j) continue;
                    auto r = mags[i].lt(mags[j]);
                    if (r.has_value() && *r) dominated = true;
                }
                if (!dominated) keep.push_back(cand[i]);
            }
            if (keep.size() == cand.size()) {
                mp *= 2;
                std::lock_guard<std::mutex> lock(nf->mu_);
                for (int i : cand) {
                    nf->roots_[i].prec = 0; // force re-refinement
                    nf->refine_locked(i, mp);
                }
            }
            cand = std::move(keep);
        }
        nf->expanding_index = cand.front();
    }

    // refine everything to the requested precision
    {
        std::lock_guard<std::mutex> lock(nf->mu_);
        for (int i = 0; i < nf->num_embeddings(); ++i) nf->refine_locked(i, precision);
    }
    return nf;
}

// --- classify_polynomial ---------------------------------------------------------

namespace {

// True if g (monic, squarefree, inversion-closed root set) has a root on the
// unit circle; exact via the substitution y = z + 1/z.
bool has_unit_circle_root(QPoly g) {
    qpoly_trim(g);
    if (g.size() <= 1) return false;
    if (qpoly_eval(g, mpq_class(1)) == 0) return true;
    if (qpoly_eval(g, mpq_class(-1)) == 0) return true;
    int deg = static_cast<int>(g.size()) - 1;
    if (deg % 2 != 0) throw Error("inversion-closed polynomial without ±1 roots has even degree");
    int m = deg / 2;
    // z^{-m} g(z) = a_m + sum_{k>=1} a_{m+k} (z^k + z^{-k}); with y = z + 1/z,
    // z^k + z^{-k} = C_k(y) where C_0 = 2, C_1 = y, C_{k+1} = y C_k - C_{k-1}.
    std::vector<QPoly> C(m + 1);
    C[0] = {mpq_class(2)};
    if (m >= 1) C[1] = {mpq_class(0), mpq_class(1)};
    for (int k = 2; k <= m; ++k) {
        QPoly t(C[k - 1].size() + 1, mpq_class(0));
        for (size_t i = 0; i < C[k - 1].size(); ++i) t[i + 1] += C[k - 1][i];
        for (size_t i = 0; i < C[k - 2].size(); ++i) t[i] -= C[k - 2][i];
        C[k] = std::move(t);
    }
    QPoly h(m + 1, mpq_class(0));
    h[0] = g[m];
    for (int k = 1; k <= m; ++k)
        for (size_t i = 0; i < C[k].size(); ++i) h[i] += g[m + k] * C[k][i];
    qpoly_trim(h);
    if (h.empty()) return true; // cannot happen for squarefree g; be safe
    // real roots of h in (-2, 2) correspond exactly to conjugate pairs on the
    // circle (real z-pairs map to |y| >= 2, off-circle pairs to non-real y)
    auto chain = sturm_chain(h);
    return sturm_count(chain, mpq_class(-2), mpq_class(2)) > 0;
}

QPoly reciprocal_qpoly(const MonicIntPoly& p) {
    QPoly r(p.coeffs.size());
    for (size_t i = 0; i < p.coeffs.size(); ++i)
        r[i] = mpq_class(p.coeffs[p.coeffs.size() - 1 - i]);
    qpoly_trim(r);
    return r;
}

} // namespace

PolyClass classify_polynomial(const MonicIntPoly& p) {
    PolyClass out;
    out.irreducible = is_irreducible(p);
    out.unit = (abs(p.coeffs[0]) == 1);
    out.pisot = false;

    // Roots on the unit circle rule Pisot out; detect them exactly first so
    // the later modulus-vs-1 refinements are guaranteed to terminate.
    QPoly g = qpoly_gcd(qpoly_from(p), reciprocal_qpoly(p));
    if (g.size() > 1) {
        QPoly gsf = qpoly_squarefree_part(g);
        if (has_unit_circle_root(gsf)) return out;
    }

    MonicIntPoly sf = squarefree_int(p);
    QPoly sfq = qpoly_from(sf);
    auto chain = sturm_chain(sfq);
    mpq_class bound(root_bound(sf));
    if (sturm_count(chain, mpq_class(1), bound) != 1) return out; // need exactly one real root > 1

    // a repeated root > 1 would mean more than one expanding root
    QPoly rep_factor = qpoly_gcd(qpoly_from(p), qpoly_derivative(qpoly_from(p)));
    if (rep_factor.size() > 1) {
        auto rchain = sturm_chain(rep_factor);
        if (sturm_count(rchain, mpq_class(1), mpq_class(root_bound(p))) > 0) return out;
    }

    // All other roots must have modulus < 1; with circle roots excluded every
    // comparison below terminates.
    FieldPtr f = make_field(p, 64);
    const RealInterval one_iv = RealInterval::from_long(1, 64);
    for (int i = 0; i < f->num_embeddings(); ++i) {
        Enclosure e = f->embedding(i);
        if (e.real) {
            Prec prec = 64;
            std::optional<bool> gt1 = e.box.re().gt(one_iv);
            while (!gt1.has_value()) {
                prec *= 2;
                if (prec > kPrecCap)
                    throw PrecisionError("comparison with 1 not decisive within precision cap");
                e = f->embedding(i, prec);
                gt1 = e.box.re().gt(one_iv);
            }
            if (*gt1) continue; // the unique expanding root (count checked above)
        }
        Prec prec = 64;
        for (;;) {
            std::optional<bool> below = e.box.mag_sq().lt(one_iv);
            if (below.has_value()) {
                if (!*below) return out; // another expanding root
                break;
            }
            prec *= 2;
            if (prec > kPrecCap)
                throw PrecisionError("modulus comparison not decisive within precision cap");
            e = f->embedding(i, prec);
        }
    }
    out.pisot = true;
    return out;
}

} // namespace pisot
