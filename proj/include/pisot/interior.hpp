#pragma once

#include "pisot/relations.hpp"
#include "pisot/substitution.hpp"

namespace pisot {

enum class SpectrumStatus { PURE_DISCRETE, NOT_DETECTED, PRECONDITION_FAILED };

std::string to_string(SpectrumStatus s);

// Σ' = Σ_s + S_r where S_r collects all sums of at most `radius` letter
// difference vectors ±(e_a − e_b), deduplicated by exact value. Always
// contains Σ_s (as the leading digits) and the zero digit.
DigitAlphabet default_extended_alphabet(const Substitution& s, int radius = 1);

// Intermediate stages of the interior pipeline (for property checks).
struct LIntPipeline {
    LabeledAutomaton projected_min; // minimized DFA of p1(Σ'* × L·0* ∩ L_rel)
    LabeledAutomaton after_z1;      // + zero-tail closure
    LabeledAutomaton after_s;       // + total-stabilizer restriction
    LabeledAutomaton after_z2;      // + zero-tail closure again
    LabeledAutomaton l_int;         // final, minimized
};

// The interior language machine over Σ': accepts u iff the value of u lies
// in the interior of Q_L (conditional on Σ' adequacy). Implements
// Z(S(Z(p1(Σ'* × L·0* ∩ L_rel)))) with one determinization, recoloring the
// minimal DFA in place for the Z/S/Z phases.
LabeledAutomaton compute_L_int(const LabeledAutomaton& l, const DigitAlphabet& sigma_prime,
                               const FieldPtr& field, const ZeroOptions& opt = {},
                               LIntPipeline* stages = nullptr);

struct InteriorLanguage {
    Substitution analyzed;     // the substitution whose prefix paths are analyzed (as given)
    int seed_letter = 0;       // a: first letter of the classified periodic point
    int letter = 0;            // b: tested letter
    FieldPtr field;
    DigitAlphabet sigma;       // Σ_s of the analyzed substitution
    DigitAlphabet sigma_prime; // Σ' used
    LabeledAutomaton l;        // minimized mirror of the a→b prefix-path language
    LabeledAutomaton l_int;    // over Σ'
    LabeledAutomaton l_ring;   // minimize(L ∩ L_int): the interior language L̊
};

// Full pipeline for one letter; requires s primitive, irreducible, Pisot, unit.
// s is analyzed as given: when its periodic point is not a fixed point, the
// language's value set covers the whole periodic orbit (one piece per power
// residue), which is the object the per-letter state counts refer to. Callers
// that need a single fixed point's piece should pass substitution_power first.
InteriorLanguage interior_language_full(const Substitution& s, int letter,
                                        const DigitAlphabet& sigma_prime,
                                        const ZeroOptions& opt = {});

// Spec'd convenience: just L̊ = minimize(L ∩ L_int).
LabeledAutomaton interior_language(const Substitution& s, int letter,
                                   const DigitAlphabet& sigma_prime, const ZeroOptions& opt = {});

struct LetterOutcome {
    int seed_letter = 0;
    int letter = 0;
    int l_states = 0;      // minimal state count of L
    int l_ring_states = 0; // minimal state count of L̊
    bool empty = true;
    std::vector<int> witness; // digit indices into Σ' (when non-empty)
    std::vector<std::string> witness_names;
    double seconds = 0;
};

struct DiscretenessOptions {
    int max_radius = 2;    // retry ladder 0..max_radius
    int fixed_radius = -1; // >= 0: use exactly this radius (no ladder)
    bool all_letters = false;
    ZeroOptions zero;
};

struct InteriorReport {
    SpectrumStatus status = SpectrumStatus::NOT_DETECTED;
    std::vector<std::string> precondition_failures;
    ClassificationReport classification;
    Substitution input;
    Substitution powered;
    int power_used = 1;
    int radius_used = -1;
    DigitAlphabet sigma_prime;
    std::vector<LetterOutcome> letters;
    std::vector<int> witness; // digit indices into sigma_prime
    std::vector<std::string> witness_names;
    std::string adequacy_assumption;
    std::string note;
    double seconds_total = 0;
};

// Decides pure discreteness of the substitution subshift's spectrum:
// PRECONDITION_FAILED unless primitive + irreducible + Pisot + unit;
// otherwise PURE_DISCRETE iff some letter's interior language is non-empty
// (witness re-verified by membership; verdict conditional on Σ' adequacy);
// NOT_DETECTED after the radius ladder is exhausted — never a negative claim.
// The analysis runs on s^k for the least k with a fixed point, so that each
// letter's language captures exactly one discrete-line piece of one infinite
// word (non-emptiness of the interior of an orbit-wide union would not hand
// an interior point to any single piece).
InteriorReport decide_pure_discreteness(const Substitution& s,
                                        const DiscretenessOptions& opt = {});

} // namespace pisot
