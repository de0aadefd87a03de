#pragma once

#include "pisot/numberfield.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pisot {

// Abelianized word: letter-occurrence counts in alphabet order.
using AbVec = std::vector<long>;

// One alphabet symbol. A digit can carry an abelianized prefix (vec), a
// number-field value (scalar, e.g. the psi-image of vec), component indices
// into other alphabets (pair/product digits), or any combination; identity is
// decided by whichever parts are present.
struct Digit {
    std::optional<AbVec> vec;
    std::optional<FieldElement> scalar;
    std::vector<int> components;
    std::string name;

    static Digit of_vec(AbVec v, std::string name = "");
    static Digit of_scalar(FieldElement s, std::string name = "");
    static Digit of_pair(int a, int b, std::string name = "");
};

bool same_representation(const Digit& a, const Digit& b);

struct DigitAlphabet {
    std::vector<Digit> digits;
    int zero_index = -1; // position of the zero digit, -1 if absent

    int size() const { return static_cast<int>(digits.size()); }
    // Index of a representation-equal digit, -1 if absent.
    int find(const Digit& d) const;
    // Append if not present; returns the digit's index either way.
    int add(Digit d);

    // Product alphabet: one digit per (a, b) pair, in row-major order
    // (a outer, b inner), each carrying component indices {a, b}.
    static DigitAlphabet pairs(const DigitAlphabet& A, const DigitAlphabet& B);
};

bool same_alphabet(const DigitAlphabet& a, const DigitAlphabet& b);

struct Transition {
    int from = 0;
    int digit = 0;
    int to = 0;

    bool operator==(const Transition& o) const = default;
    bool operator<(const Transition& o) const {
        if (from != o.from) return from < o.from;
        if (digit != o.digit) return digit < o.digit;
        return to < o.to;
    }
};

// Finite automaton over a digit alphabet. Deterministic instances are
// complete (every state has exactly one successor per digit, possibly a
// non-final sink).
struct LabeledAutomaton {
    DigitAlphabet alphabet;
    int num_states = 0;
    std::vector<Transition> transitions;
    std::vector<int> initial; // sorted, unique
    std::vector<int> final;   // sorted, unique
    bool deterministic = false;

    bool is_final(int q) const;
    bool is_initial(int q) const;
    void sort_canonical(); // order transitions, initial, final
    // successor lists indexed by state: (digit, to) pairs in digit order
    std::vector<std::vector<std::pair<int, int>>> adjacency() const;
};

// --- constructions ---------------------------------------------------------------

// Complete DFA via subset construction; states numbered in BFS discovery
// order (initial set first, digits scanned in alphabet order), so the result
// is canonical for the input automaton.
LabeledAutomaton determinize(const LabeledAutomaton& a);

// Minimal complete DFA (Hopcroft), states renumbered canonically by BFS from
// the initial state with digit-order tie-breaking. Accepts NFAs
// (determinizes first). Two automata recognize the same language iff their
// minimized forms are structurally identical.
LabeledAutomaton minimize(const LabeledAutomaton& a);

// Product automaton recognizing the intersection; alphabets must agree.
LabeledAutomaton intersect(const LabeledAutomaton& a, const LabeledAutomaton& b);

// Reverse all transitions and swap initial/final: recognizes mirrored words.
LabeledAutomaton mirror(const LabeledAutomaton& a);

// Relabel transitions through a partial digit map into a new alphabet;
// transitions whose digit maps to nullopt are deleted. Result is treated as
// nondeterministic.
LabeledAutomaton map_labels(const LabeledAutomaton& a, const DigitAlphabet& out,
                            const std::vector<std::optional<int>>& digit_map);

// General synchronized product: a joint step exists when every component has
// a transition and `combine` accepts the digit tuple, giving the result
// digit. Explores only tuples reachable from the initial tuples.
LabeledAutomaton product_map(const std::vector<const LabeledAutomaton*>& parts,
                             const DigitAlphabet& out,
                             const std::function<std::optional<int>(const std::vector<int>&)>& combine);

// Words of L followed by any number of zero digits (L · 0*).
LabeledAutomaton concat_zero_star(const LabeledAutomaton& a);

// Z(L) = { u : u 0^n ∈ L for some n ≥ 0 }. A recoloring: states with a
// zero-digit path into the final set become final. Valid for NFAs and DFAs.
LabeledAutomaton z_closure(const LabeledAutomaton& a);

// S(L) = { u : u v ∈ L for every word v }. Recolors a complete DFA: a state
// is final iff every state reachable from it is final. Determinizes first if
// needed.
LabeledAutomaton s_stabilizer(const LabeledAutomaton& a);

// Complete DFA for the complement language.
LabeledAutomaton complement(const LabeledAutomaton& a);

// Universal automaton: one final initial state looping on every digit.
LabeledAutomaton universal_automaton(const DigitAlphabet& alphabet);

// Drop states that are not both reachable from an initial state and
// co-reachable to a final state (the automaton trimmed to its core).
LabeledAutomaton trim(const LabeledAutomaton& a);

// --- queries ---------------------------------------------------------------------

bool is_empty(const LabeledAutomaton& a);

// L(a) ⊆ L(b); alphabets must agree.
bool is_subset(const LabeledAutomaton& a, const LabeledAutomaton& b);

// Same language (via canonical minimal forms).
bool same_language(const LabeledAutomaton& a, const LabeledAutomaton& b);

// All accepted words of length ≤ max_len as digit-index sequences, in
// (length, lexicographic-by-digit-order) order. Throws BudgetError past
// `budget` words.
std::vector<std::vector<int>> enumerate_words(const LabeledAutomaton& a, int max_len,
                                              size_t budget = 1000000);

// Shortest accepted word (digit indices), nullopt when the language is empty.
std::optional<std::vector<int>> shortest_witness(const LabeledAutomaton& a);

bool accepts(const LabeledAutomaton& a, const std::vector<int>& word);

// Number of states with the non-final all-self-loop sink elided (the
// conventional size of a complete DFA when quoted as a trim automaton).
int state_count(const LabeledAutomaton& a);

// --- export ----------------------------------------------------------------------

std::string to_dot(const LabeledAutomaton& a);

} // namespace pisot
