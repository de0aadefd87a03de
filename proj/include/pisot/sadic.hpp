#pragma once

#include "pisot/interior.hpp"
#include "pisot/relations.hpp"
#include "pisot/substitution.hpp"

namespace pisot {

// Two-substitution directive system on {a,b,c}:
//   first:  a -> aab, b -> c, c -> a
//   second: a -> aba, b -> c, c -> a
// Both share the incidence matrix M = [[2,0,1],[1,0,0],[0,1,0]] with
// characteristic polynomial X^3 - 2X^2 - 1, so one eigenvector map psi serves
// every composition. Words are directed by an infinite tag sequence
// (tag 0 = first, tag 1 = second); the machinery below certifies that every
// directed limit word has a discrete-line piece containing a translate of the
// piece of the pure `first` fixed point.
struct SAdicSystem {
    Substitution first;
    Substitution second;
    PsiMap psi; // psi(e_a) = 1, psi(e_b) = beta-2, psi(e_c) = beta^2-2*beta

    // Pair-digit prefix automaton: states {a,b,c}; d -(x,tag)-> e whenever
    // tag's image of d factors as v' e v'' with psi(Ab(v')) = x. Exactly six
    // pair digits: (0,0), (1,0), (2,0), (0,1), (1,1), (beta-1,1).
    LabeledAutomaton pair_prefix;
    DigitAlphabet pair_digits; // scalar = x, components = {digit value index, tag}

    // Determinized mirror of pair_prefix from a to a: least-significant digit
    // first, 3 live states. Value set of its words with tag word matching a
    // directive = the psi-image of that directive's discrete-line piece.
    LabeledAutomaton expansion; // "L"

    // expansion restricted to tag-0 pairs (the pure `first` system), and its
    // projection to plain digits over {0,1,2}.
    LabeledAutomaton expansion_first;        // pair alphabet
    LabeledAutomaton expansion_first_digits; // digit alphabet {0,1,2}
    DigitAlphabet first_digits;              // scalars 0,1,2

    // Zero language over the closure of the digit differences that the
    // synchronizing product below can produce: {0,1,2} - {0,1,beta-1} union
    // {0,1,2} - {0,1,2} = {-2,-1,0,1,2,1-beta,2-beta,3-beta} (8 digits; the
    // pure cross-difference set misses -2). Least-significant first, minimal.
    LabeledAutomaton zero;
    DigitAlphabet difference_digits;

    // Synchronized product: pair words (x_i, tag_i) such that some expansion
    // word (y_i, tag_i) has sum (x_i - y_i) beta^i = 0 and x is a word of the
    // tag-0 digit language. Membership with tag word matching a directive
    // certifies that value(x) lies in the psi-image of that directive's
    // discrete-line piece. Minimal complete DFA.
    LabeledAutomaton product; // "L_*"
};

SAdicSystem build_sadic_system();

// Certificate that every directive starting with `prefix` (tags, length <= 6)
// admits t + beta^k * (value set of the pure-first piece) inside its own
// piece's value set, where t = sum shift_digits[j] beta^j (digits in {0,1,2}).
struct InclusionCertificate {
    std::vector<int> prefix;       // directive tags, length 6 (0 = first, 1 = second)
    std::vector<int> shift_digits; // length = power; values 0,1,2, beta^0 first
    FieldElement shift;
    int power = 0;
    bool found = false;
    bool language_verified = false; // forced-pair language subset of product
    bool value_verified = false;    // independent value-set inclusion check
};

// Language-level check: every pair word (t . v digits, tags) with v from the
// pure-first digit language and tags matching `prefix` positionally (free
// past position 5) belongs to the product language.
bool verify_inclusion_certificate(const SAdicSystem& sys, const std::vector<int>& prefix,
                                  const std::vector<int>& shift_digits);

// Independent value-set check via the relations machinery: the values of
// t . v words are contained in the values of product words whose tags are
// compatible with `prefix`.
bool value_check_certificate(const SAdicSystem& sys, const std::vector<int>& prefix,
                             const std::vector<int>& shift_digits, const ZeroOptions& opt = {});

// Smallest certificate (power ascending, then digit-lexicographic) for one
// directive prefix; found = false if none exists with power <= max_power.
InclusionCertificate find_inclusion_certificate(const SAdicSystem& sys,
                                                const std::vector<int>& prefix,
                                                int max_power = 6, bool run_value_check = false);

// Certificates for all 2^6 directive prefixes (tag order 000000, 000001, ...).
std::vector<InclusionCertificate> all_inclusion_certificates(const SAdicSystem& sys,
                                                             int max_power = 6,
                                                             bool run_value_check = false);

} // namespace pisot
