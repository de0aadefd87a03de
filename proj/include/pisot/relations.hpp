#pragma once

#include "pisot/automaton.hpp"

namespace pisot {

struct ZeroOptions {
    size_t state_budget = 1000000;
    // Certified-bound pruning of unusable remainders (keep on; the off switch
    // exists for equivalence testing on tiny instances).
    bool prune = true;
    // When the budget is hit: throw (default) or stop exploring and keep the
    // partial graph (testing only; combined with trimming this is sound on
    // instances whose useful part fits the budget).
    bool truncate_at_budget = false;
};

// Most-significant-first zero automaton: recognizes digit words d0 d1 ... dn
// with sum d_i beta^{n-i} = 0. States are exact remainders x in Z[beta],
// transitions x -> beta*x + d; a state is dropped only when one of the
// certified remainder bounds provably fails; finally trimmed to the states
// co-accessible to 0. Initial = final = {0}. Digits must carry scalar values.
LabeledAutomaton build_zero_automaton(const DigitAlphabet& digits, const FieldPtr& field,
                                      const ZeroOptions& opt = {});

// Least-significant-first zero language (the exported convention):
// minimize(mirror(build_zero_automaton)).
LabeledAutomaton zero_language_lsb(const DigitAlphabet& digits, const FieldPtr& field,
                                   const ZeroOptions& opt = {});

// Relations automaton over pair digits (s1[i], s2[j]) in row-major order:
// recognizes, least-significant digit first, exactly the equal-length pairs
// (u, v) with sum u_i beta^i = sum v_i beta^i. Built as the determinized
// mirror of the zero automaton over the difference digits value(i)-value(j).
LabeledAutomaton build_relations_automaton(const DigitAlphabet& s1, const DigitAlphabet& s2,
                                           const FieldPtr& field, const ZeroOptions& opt = {});

// Decides Q_{L1} ⊆ Q_{L2} for Q_L = {sum u_i beta^i : u in L}: checks
// L1 ⊆ Z(p1((L1·0* × L2·0*) ∩ L_rel)), i.e. every word of L1 admits a
// zero-padding whose value is attained by a zero-padded word of L2.
bool q_inclusion(const LabeledAutomaton& l1, const LabeledAutomaton& l2, const FieldPtr& field,
                 const ZeroOptions& opt = {});

// Returns a copy of `a` whose alphabet is guaranteed to contain (and index)
// a zero-valued digit; appends one if absent. Language unchanged.
LabeledAutomaton ensure_zero_digit(const LabeledAutomaton& a, const FieldPtr& field);

} // namespace pisot
