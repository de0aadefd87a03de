#pragma once

#include "pisot/intpoly.hpp"
#include "pisot/interval.hpp"

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace pisot {

// Certified enclosure of one embedding value: the box is guaranteed to
// contain the exact algebraic value. `precision` is the MPFR bit count the
// endpoints were computed at; refinement at higher precision yields a box
// contained in every earlier one.
struct Enclosure {
    ComplexBox box;
    bool real = false; // imaginary part is exactly zero
    Prec precision = 0;

    double center_re() const { return box.re().mid_d(); }
    double center_im() const { return box.im().mid_d(); }
    double radius() const { return 0.5 * (box.re().wid_d() + box.im().wid_d()); }
};

struct PolyClass {
    bool irreducible = false;
    bool pisot = false;
    bool unit = false;
};

// Exact classification; total on monic integer polynomials. `pisot` holds
// iff p is irreducible with exactly one root of modulus > 1, that root real
// and > 1, and all other roots of modulus < 1 (decided exactly: roots on the
// unit circle are detected algebraically, never by refinement alone).
PolyClass classify_polynomial(const MonicIntPoly& p);

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldPtr field, std::vector<mpz_class> coords);

    const FieldPtr& field() const { return field_; }
    const std::vector<mpz_class>& coords() const { return coords_; }
    bool is_zero() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const; // reduced mod minimal_poly
    FieldElement operator*(const mpz_class& k) const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // x -> beta * x (coordinate shift + one reduction step); the hot path in
    // digit-expansion walks.
    FieldElement mul_beta() const;

    size_t hash() const;
    std::string str() const; // human-readable polynomial in beta

private:
    FieldPtr field_;
    std::vector<mpz_class> coords_;
};

FieldElement ring_mul(const FieldElement& x, const FieldElement& y);

// Element with rational power-basis coordinates: the field of fractions
// Q(beta). Used for solving eigenvector systems exactly; not part of the
// automaton state space.
class QFieldElement {
public:
    QFieldElement() = default;
    QFieldElement(FieldPtr field, std::vector<mpq_class> coords);
    static QFieldElement from(const FieldElement& x);

    const FieldPtr& field() const { return field_; }
    const std::vector<mpq_class>& coords() const { return coords_; }
    bool is_zero() const;

    QFieldElement operator+(const QFieldElement& o) const;
    QFieldElement operator-(const QFieldElement& o) const;
    QFieldElement operator-() const;
    QFieldElement operator*(const QFieldElement& o) const;
    QFieldElement operator*(const mpq_class& k) const;
    QFieldElement operator/(const QFieldElement& o) const; // exact field inverse
    bool operator==(const QFieldElement& o) const;

    // Least common denominator of the coordinates, and the integer element
    // den * this.
    mpz_class denominator() const;
    FieldElement scaled_to_integer() const;

private:
    FieldPtr field_;
    std::vector<mpq_class> coords_;
};

class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    MonicIntPoly minimal_poly;

    // Distinct roots, sorted by (Re ascending, Im ascending); a complex
    // conjugate pair appears with the Im < 0 representative first.
    int num_embeddings() const { return static_cast<int>(roots_.size()); }
    int expanding_index = -1; // root of maximal modulus

    int degree() const { return minimal_poly.degree(); }

    // Certified enclosure of root `index`, refined to at least `min_prec`
    // bits (box width at most 2^(4 - min_prec)). Thread-safe.
    Enclosure embedding(int index, Prec min_prec = 0) const;
    std::vector<Enclosure> embeddings(Prec min_prec = 0) const;
    bool embedding_is_real(int index) const;

    // Indices of all embeddings other than the expanding one (for a Pisot
    // field these are exactly the contracting embeddings).
    std::vector<int> contracting_indices() const;

    // Elements of this field.
    FieldElement zero() const;
    FieldElement one() const;
    FieldElement beta() const;
    FieldElement from_int(const mpz_class& n) const;
    FieldElement element(std::vector<mpz_class> coords) const;

    // Certified enclosure of the image of x under embedding `index`.
    Enclosure evaluate(const FieldElement& x, int index, Prec min_prec = 0) const;
    Enclosure evaluate(const QFieldElement& x, int index, Prec min_prec = 0) const;

private:
    friend FieldPtr make_field(const MonicIntPoly& p, Prec precision);

    struct Root {
        ComplexBox box;               // certified: contains exactly one root
        Prec prec = 0;                // bits the box was computed at
        bool real = false;
        mpq_class riv_lo, riv_hi;     // exact bracket (real roots only)
        int conj_of = -1;             // index of conjugate partner, -1 if none
    };

    NumberField() = default;
    void refine_locked(int index, Prec min_prec) const;

    MonicIntPoly sf_; // squarefree part of minimal_poly (refinement target)
    mutable std::mutex mu_;
    mutable std::vector<Root> roots_;
};

// Isolates all distinct roots of p into disjoint certified enclosures and
// refines them to `precision` bits. Throws PrecisionError if certification
// fails within the precision budget.
FieldPtr make_field(const MonicIntPoly& p, Prec precision = 64);

} // namespace pisot

template <>
struct std::hash<pisot::FieldElement> {
    size_t operator()(const pisot::FieldElement& x) const { return x.hash(); }
};
