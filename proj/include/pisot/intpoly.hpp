#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace pisot {

// Monic polynomial with integer coefficients, constant term first.
struct MonicIntPoly {
    std::vector<mpz_class> coeffs; // coeffs[i] multiplies X^i; coeffs.back() == 1

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    // Validates monicity and degree >= 1.
    static MonicIntPoly from_coeffs(std::vector<mpz_class> coeffs);
    // Accepts "X^3 - 2*X^2 - 1" or the coefficient list "[-1, 0, -2, 1]"
    // (constant term first).
    static MonicIntPoly parse(const std::string& text);

    std::string str() const;            // "X^3 - 2*X^2 - 1"
    std::string coeff_list_str() const; // "[-1, 0, -2, 1]"

    bool operator==(const MonicIntPoly&) const = default;
};

// Exact irreducibility over Q via bounded trial factorization (factor degrees
// up to degree/2, coefficients bounded by a Mignotte-type bound).
bool is_irreducible(const MonicIntPoly& p);

// --- exact rational-polynomial helpers (Sturm machinery) --------------------

using QPoly = std::vector<mpq_class>; // constant term first; empty = zero poly

QPoly qpoly_from(const MonicIntPoly& p);
void qpoly_trim(QPoly& p); // drop trailing zero coefficients
QPoly qpoly_derivative(const QPoly& p);
mpq_class qpoly_eval(const QPoly& p, const mpq_class& x);
QPoly qpoly_rem(QPoly a, const QPoly& b);
QPoly qpoly_gcd(QPoly a, QPoly b);
QPoly qpoly_squarefree_part(const QPoly& p);

// Sturm chain of the squarefree part, usable for exact root counting.
std::vector<QPoly> sturm_chain(const QPoly& p);
// Number of distinct real roots in the half-open interval (a, b].
int sturm_count(const std::vector<QPoly>& chain, const mpq_class& a, const mpq_class& b);

// Isolating intervals [lo, hi] (lo <= hi, rational endpoints) for all distinct
// real roots, in ascending order. A rational root may come back as the point
// interval [r, r]; otherwise the open interval contains exactly one root and
// the signs of p at lo and hi are nonzero and opposite.
std::vector<std::pair<mpq_class, mpq_class>> isolate_real_roots(const MonicIntPoly& p);

// Bisect an isolating interval until hi - lo <= 2^-bits (no-op for points).
std::pair<mpq_class, mpq_class> refine_real_root(const MonicIntPoly& p,
                                                 std::pair<mpq_class, mpq_class> iv,
                                                 unsigned bits);

// Cauchy bound: all complex roots have modulus < 1 + max |coefficient|.
mpz_class root_bound(const MonicIntPoly& p);

} // namespace pisot
