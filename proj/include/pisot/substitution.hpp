#pragma once

#include "pisot/automaton.hpp"

#include <string>
#include <vector>

namespace pisot {

using IntMat = std::vector<std::vector<mpz_class>>;

struct Substitution {
    std::vector<char> alphabet;           // first-appearance order of left-hand sides
    std::vector<std::vector<int>> images; // letter index -> image word (letter indices)

    int size() const { return static_cast<int>(alphabet.size()); }
    int index_of(char c) const;
    char letter(int i) const { return alphabet[i]; }
    std::string image_str(int a) const;
    std::string str() const; // "a->ab;b->ac;c->a"
};

// Parses "a->ab; b->ac; c->a" (single alphanumeric letters; alphabet order =
// first-appearance order of left-hand sides). Errors on empty images,
// duplicate left-hand sides, and image letters without a rule.
Substitution parse_substitution(const std::string& text);

// M[a][b] = number of occurrences of a in s(b).
IntMat incidence_matrix(const Substitution& s);

IntMat mat_identity(int d);
IntMat mat_mul(const IntMat& a, const IntMat& b);
// Exact inverse of a unimodular integer matrix; DomainError if |det| != 1.
IntMat mat_inverse_unimodular(const IntMat& m);
mpz_class mat_det(const IntMat& m);
AbVec apply_mat(const IntMat& m, const AbVec& v);

// det(X·I − M), computed exactly (Faddeev–LeVerrier).
MonicIntPoly char_poly(const IntMat& m);

struct ClassificationReport {
    bool primitive = false;
    bool irreducible = false;
    bool pisot = false;
    bool unit = false;
    int power_for_fixed_point = 1; // least k with s^k(seed) starting in seed
    int seed_letter = 0;           // letter index of the fixed-point seed
    MonicIntPoly characteristic;
};

// Primitivity via positivity of M^n for some n ≤ (d−1)²+1; the algebraic
// flags via the characteristic polynomial; the fixed-point power from the
// first-letter map's cycle through the earliest cycling letter.
ClassificationReport classify(const Substitution& s);

// s composed with itself k times (k ≥ 1).
Substitution substitution_power(const Substitution& s, int k);

// Left eigenvector map: psi(e_{a0}) = 1 for the first letter, psi linear,
// psi(M x) = beta psi(x). Entries live in Q(beta); `scaled` holds
// denominator * psi(e_a) as integer elements of Z[beta].
struct PsiMap {
    FieldPtr field;
    std::vector<QFieldElement> values;
    std::vector<FieldElement> scaled;
    mpz_class denominator = 1;
};

// Requires an irreducible characteristic polynomial.
PsiMap psi(const Substitution& s);

// Prefix automaton: states = letters; one transition c →t d per occurrence
// of d in s(c), where t = Ab(prefix before the occurrence). Digits carry
// both t and its (denominator-scaled) psi-image.
struct PrefixAutomaton {
    LabeledAutomaton automaton; // no initial/final distinguished
    DigitAlphabet sigma;        // the digit set Σ_s
    PsiMap psi;
};

PrefixAutomaton prefix_automaton(const Substitution& s);

// Abelianizations of the prefixes of s^{k·depth}(seed) that are followed by
// `letter` (k = classified fixed-point power): the depth-limited discrete
// line piece for that letter.
std::vector<AbVec> discrete_line_points(const Substitution& s, int letter, int depth,
                                        size_t budget = 1000000);

// One-step geometric substitution action on a tip (x, a):
// {(M x + t, b) : a →t b}.
std::vector<std::pair<AbVec, int>> e_one(const Substitution& s, const AbVec& x, int a);

// Dual action {(M⁻¹(y − t), a) : a →t b}; requires |det M| = 1.
std::vector<std::pair<AbVec, int>> e_one_star(const Substitution& s, const AbVec& y, int b);

} // namespace pisot
