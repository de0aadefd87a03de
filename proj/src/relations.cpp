#include "pisot/relations.hpp"
#include "pisot/errors.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace pisot {

namespace {

constexpr Prec kBoundPrecCap = 4096;

RealInterval interval_max(const RealInterval& a, const RealInterval& b) {
    const Mpfr& lo = mpfr_cmp(a.lo().get(), b.lo().get()) >= 0 ? a.lo() : b.lo();
    const Mpfr& hi = mpfr_cmp(a.hi().get(), b.hi().get()) >= 0 ? a.hi() : b.hi();
    return RealInterval::from_endpoints(lo, hi);
}

// Squared remainder bounds, one per embedding: a state x can lie on an
// accepting path only if |sigma(x)| <= D_sigma / (1 - |sigma(beta)|) for each
// contracting embedding sigma and |sigma(x)| <= D / (beta - 1) at the
// expanding one (reading the remaining digits must be able to cancel x).
struct BoundSet {
    std::vector<int> embeddings;
    std::vector<RealInterval> b_sq;     // parallel to embeddings
    std::vector<char> usable;           // denominator provably positive
};

class Pruner {
public:
    Pruner(const FieldPtr& field, std::vector<FieldElement> values)
        : field_(field), values_(std::move(values)) {
        embeddings_.push_back(field->expanding_index);
        for (int e : field->contracting_indices()) embeddings_.push_back(e);
    }

    const FieldElement& value(size_t i) const { return values_[i]; }
    size_t num_values() const { return values_.size(); }

    // True when some remainder bound provably fails for x.
    bool provably_violating(const FieldElement& x) {
        for (Prec p = 64; p <= kBoundPrecCap; p *= 2) {
            const BoundSet& bs = bounds(p);
            bool all_decisive = true;
            for (size_t k = 0; k < bs.embeddings.size(); ++k) {
                if (!bs.usable[k]) {
                    all_decisive = false;
                    continue;
                }
                RealInterval v =
                    field_->evaluate(x, bs.embeddings[k], p).box.mag_sq();
                std::optional<bool> cmp = v.gt(bs.b_sq[k]);
                if (cmp.has_value() && *cmp) return true;
                if (!cmp.has_value()) all_decisive = false;
            }
            if (all_decisive) return false;
        }
        return false; // indecisive at the cap: keep the state (sound)
    }

private:
    const BoundSet& bounds(Prec p) {
        auto it = cache_.find(p);
        if (it != cache_.end()) return it->second;
        BoundSet bs;
        bs.embeddings = embeddings_;
        RealInterval one = RealInterval::from_long(1, p);
        for (int e : embeddings_) {
            RealInterval d_sq = RealInterval::zero(p);
            bool first = true;
            for (const FieldElement& v : values_) {
                RealInterval m = field_->evaluate(v, e, p).box.mag_sq();
                d_sq = first ? m : interval_max(d_sq, m);
                first = false;
            }
            RealInterval beta_mag =
                field_->evaluate(field_->beta(), e, p).box.mag_sq().sqrt();
            RealInterval denom = (e == field_->expanding_index) ? beta_mag - one
                                                                  : one - beta_mag;
            bool usable = mpfr_sgn(denom.lo().get()) > 0;
            if (usable)
                bs.b_sq.push_back(d_sq / denom.square());
            else
                bs.b_sq.push_back(RealInterval::zero(p));
            bs.usable.push_back(usable ? 1 : 0);
        }
        return cache_.emplace(p, std::move(bs)).first->second;
    }

    FieldPtr field_;
    std::vector<FieldElement> values_;
    std::vector<int> embeddings_;
    std::unordered_map<long, BoundSet> cache_;
};

// BFS over exact remainders from 0 with transition x -> beta*x + d.
LabeledAutomaton zero_msb_core(const DigitAlphabet& alpha, std::vector<FieldElement> values,
                               const FieldPtr& field, const ZeroOptions& opt) {
    if (static_cast<int>(values.size()) != alpha.size())
        throw DomainError("digit value list does not match the alphabet");
    Pruner pruner(field, std::move(values));

    std::unordered_map<FieldElement, int> ids;
    std::vector<FieldElement> states;
    std::unordered_set<FieldElement> rejected;
    FieldElement zero = field->zero();
    states.push_back(zero);
    ids.emplace(zero, 0);

    LabeledAutomaton out;
    out.alphabet = alpha;
    out.deterministic = false;

    std::deque<int> queue{0};
    bool truncated = false;
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        FieldElement bx = states[q].mul_beta();
        for (size_t i = 0; i < pruner.num_values(); ++i) {
            FieldElement y = bx + pruner.value(i);
            auto it = ids.find(y);
            int target = -1;
            if (it != ids.end()) {
                target = it->second;
            } else if (!rejected.count(y)) {
                if (opt.prune && pruner.provably_violating(y)) {
                    rejected.insert(y);
                } else if (states.size() >= opt.state_budget) {
                    if (!opt.truncate_at_budget)
                        throw BudgetError("zero automaton exceeded state budget of " +
                                          std::to_string(opt.state_budget));
                    truncated = true;
                } else {
                    target = static_cast<int>(states.size());
                    states.push_back(y);
                    ids.emplace(y, target);
                    queue.push_back(target);
                }
            }
            if (target >= 0)
                out.transitions.push_back({q, static_cast<int>(i), target});
        }
    }
    (void)truncated;
    out.num_states = static_cast<int>(states.size());
    out.initial = {0};
    out.final = {0};
    out.sort_canonical();
    return trim(out);
}

std::vector<FieldElement> scalar_values(const DigitAlphabet& alpha, const FieldPtr& field) {
    std::vector<FieldElement> values;
    values.reserve(alpha.size());
    for (const Digit& d : alpha.digits) {
        if (!d.scalar)
            throw DomainError("digit '" + d.name + "' has no scalar value");
        values.push_back(*d.scalar);
    }
    (void)field;
    return values;
}

} // namespace

LabeledAutomaton build_zero_automaton(const DigitAlphabet& digits, const FieldPtr& field,
                                      const ZeroOptions& opt) {
    return zero_msb_core(digits, scalar_values(digits, field), field, opt);
}

LabeledAutomaton zero_language_lsb(const DigitAlphabet& digits, const FieldPtr& field,
                                   const ZeroOptions& opt) {
    return minimize(mirror(build_zero_automaton(digits, field, opt)));
}

LabeledAutomaton build_relations_automaton(const DigitAlphabet& s1, const DigitAlphabet& s2,
                                           const FieldPtr& field, const ZeroOptions& opt) {
    std::vector<FieldElement> v1 = scalar_values(s1, field);
    std::vector<FieldElement> v2 = scalar_values(s2, field);
    DigitAlphabet pair_alpha = DigitAlphabet::pairs(s1, s2);
    std::vector<FieldElement> diff;
    diff.reserve(v1.size() * v2.size());
    for (const FieldElement& a : v1)
        for (const FieldElement& b : v2) diff.push_back(a - b);
    LabeledAutomaton msb = zero_msb_core(pair_alpha, std::move(diff), field, opt);
    return determinize(mirror(msb));
}

LabeledAutomaton ensure_zero_digit(const LabeledAutomaton& a, const FieldPtr& field) {
    LabeledAutomaton out = a;
    if (out.alphabet.zero_index >= 0) return out;
    FieldElement zero = field->zero();
    for (int i = 0; i < out.alphabet.size(); ++i) {
        const Digit& d = out.alphabet.digits[i];
        if (d.scalar && *d.scalar == zero) {
            out.alphabet.zero_index = i;
            return out;
        }
    }
    Digit z = Digit::of_scalar(zero, "0");
    out.alphabet.zero_index = out.alphabet.size();
    out.alphabet.digits.push_back(std::move(z));
    return out;
}

bool q_inclusion(const LabeledAutomaton& l1, const LabeledAutomaton& l2, const FieldPtr& field,
                 const ZeroOptions& opt) {
    LabeledAutomaton a = ensure_zero_digit(l1, field);
    LabeledAutomaton b = ensure_zero_digit(l2, field);
    const DigitAlphabet& sa = a.alphabet;
    const DigitAlphabet& sb = b.alphabet;

    LabeledAutomaton a_pad = concat_zero_star(a);
    LabeledAutomaton b_pad = concat_zero_star(b);

    LabeledAutomaton rel = build_relations_automaton(sa, sb, field, opt);

    DigitAlphabet pair_alpha = DigitAlphabet::pairs(sa, sb);
    int nb = sb.size();
    LabeledAutomaton prod = product_map(
        {&a_pad, &b_pad}, pair_alpha,
        [&](const std::vector<int>& d) -> std::optional<int> { return d[0] * nb + d[1]; });

    LabeledAutomaton joint = intersect(prod, rel);

    std::vector<std::optional<int>> first_of(pair_alpha.size());
    for (int i = 0; i < sa.size(); ++i)
        for (int j = 0; j < nb; ++j) first_of[i * nb + j] = i;
    LabeledAutomaton projected = map_labels(joint, sa, first_of);

    LabeledAutomaton reachable = z_closure(minimize(projected));
    return is_subset(a, reachable);
}

} // namespace pisot
