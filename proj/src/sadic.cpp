#include "pisot/sadic.hpp"

#include "pisot/errors.hpp"

#include <algorithm>
#include <map>

namespace pisot {

namespace {

// Pair digit (value, tag): scalar carries the value, components = {tag}.
Digit pair_digit(const FieldElement& value, int tag, const std::string& name) {
    Digit d = Digit::of_scalar(value, name);
    d.components = {tag};
    return d;
}

std::string tag_name(int tag) { return tag == 0 ? "s" : "t"; }

} // namespace

SAdicSystem build_sadic_system() {
    SAdicSystem sys;
    sys.first = parse_substitution("a->aab;b->c;c->a");
    sys.second = parse_substitution("a->aba;b->c;c->a");
    if (incidence_matrix(sys.first) != incidence_matrix(sys.second))
        throw DomainError("directive substitutions must share an incidence matrix");
    sys.psi = psi(sys.first);
    if (sys.psi.denominator != 1)
        throw DomainError("directive system expects an integral eigenvector map");
    const FieldPtr& F = sys.psi.field;
    const int nletters = sys.first.size();

    // Pair-digit prefix automaton over both substitutions.
    const Substitution* subs[2] = {&sys.first, &sys.second};
    LabeledAutomaton ap;
    ap.num_states = nletters;
    ap.deterministic = false;
    for (int tag = 0; tag < 2; ++tag) {
        const Substitution& s = *subs[tag];
        for (int c = 0; c < nletters; ++c) {
            FieldElement acc = F->from_int(0);
            for (int pos = 0; pos < (int)s.images[c].size(); ++pos) {
                int dst = s.images[c][pos];
                Digit dg = pair_digit(acc, tag, acc.str() + "|" + tag_name(tag));
                int di = sys.pair_digits.add(dg);
                ap.transitions.push_back({c, di, dst});
                acc = acc + sys.psi.scaled[dst];
            }
        }
    }
    {
        Digit z = pair_digit(F->from_int(0), 0, "0|s");
        sys.pair_digits.zero_index = sys.pair_digits.find(z);
    }
    ap.alphabet = sys.pair_digits;
    ap.sort_canonical();
    sys.pair_prefix = ap;

    // Least-significant-first expansion language: mirror the seed-to-seed
    // path language (seed = letter a = index 0).
    LabeledAutomaton path = ap;
    path.initial = {0};
    path.final = {0};
    sys.expansion = minimize(mirror(path));

    // Tag-0 restriction, as pairs and as plain digits.
    {
        std::vector<std::optional<int>> keep(sys.pair_digits.size());
        for (int i = 0; i < sys.pair_digits.size(); ++i)
            if (sys.pair_digits.digits[i].components[0] == 0) keep[i] = i;
        sys.expansion_first = minimize(map_labels(sys.expansion, sys.pair_digits, keep));
    }
    for (int v = 0; v <= 2; ++v)
        sys.first_digits.add(Digit::of_scalar(F->from_int(v), std::to_string(v)));
    sys.first_digits.zero_index = 0;
    {
        std::vector<std::optional<int>> proj(sys.pair_digits.size());
        for (int i = 0; i < sys.pair_digits.size(); ++i) {
            const Digit& dg = sys.pair_digits.digits[i];
            if (dg.components[0] != 0) continue;
            int vi = sys.first_digits.find(Digit::of_scalar(*dg.scalar));
            if (vi >= 0) proj[i] = vi;
        }
        sys.expansion_first_digits =
            minimize(map_labels(sys.expansion_first, sys.first_digits, proj));
    }

    // Zero language over every difference the synchronized product can probe:
    // tag-0 values minus values of either tag.
    {
        std::vector<FieldElement> left, right;
        for (int v = 0; v <= 2; ++v) left.push_back(F->from_int(v));
        right = left;
        for (int i = 0; i < sys.pair_digits.size(); ++i)
            right.push_back(*sys.pair_digits.digits[i].scalar);
        for (const FieldElement& x : left)
            for (const FieldElement& y : right) {
                FieldElement dv = x - y;
                Digit dg = Digit::of_scalar(dv, dv.str());
                sys.difference_digits.add(dg);
            }
        sys.difference_digits.zero_index =
            sys.difference_digits.find(Digit::of_scalar(F->from_int(0)));
        sys.zero = zero_language_lsb(sys.difference_digits, F);
    }

    // Output alphabet: ({0,1,2} x {tag}) with components = {value, tag}.
    DigitAlphabet out;
    for (int v = 0; v <= 2; ++v)
        for (int tag = 0; tag < 2; ++tag) {
            Digit dg = pair_digit(F->from_int(v), tag,
                                  std::to_string(v) + "|" + tag_name(tag));
            dg.components = {v, tag};
            out.add(dg);
        }
    out.zero_index = 0;

    // Synchronize zero + tag-0 word + expansion word position by position:
    // admit (x_i, tag_i) when x_i - y_i = t_i for the expansion digit y_i.
    const DigitAlphabet& pd = sys.pair_digits;
    const DigitAlphabet& dd = sys.difference_digits;
    const DigitAlphabet& fd = sys.first_digits;
    auto combine = [&](const std::vector<int>& idx) -> std::optional<int> {
        const FieldElement& t = *dd.digits[idx[0]].scalar;
        const Digit& x = pd.digits[idx[1]];
        const Digit& y = pd.digits[idx[2]];
        if (x.components[0] != 0) return std::nullopt; // x ranges over tag-0 digits
        if (!(*x.scalar - *y.scalar == t)) return std::nullopt;
        int v = fd.find(Digit::of_scalar(*x.scalar));
        if (v < 0) return std::nullopt;
        return v * 2 + y.components[0];
    };
    sys.product = minimize(product_map({&sys.zero, &sys.expansion_first, &sys.expansion},
                                       out, combine));
    return sys;
}

namespace {

// Forced-pair automaton: shift digits with the prefix's tags, then any word
// of the tag-0 digit language with tags forced by the prefix up to position
// 5 and free afterwards.
LabeledAutomaton certificate_language(const SAdicSystem& sys, const std::vector<int>& prefix,
                                      const std::vector<int>& shift_digits) {
    if (prefix.size() > 6) throw DomainError("directive prefix longer than 6");
    const int k = (int)shift_digits.size();
    if (k > 6) throw DomainError("shift longer than 6 digits");
    for (int d : shift_digits)
        if (d < 0 || d > 2) throw DomainError("shift digit out of range");
    auto tag_at = [&](int j) -> int {
        return j < (int)prefix.size() ? prefix[j] : -1; // -1 = free
    };
    const DigitAlphabet& out = sys.product.alphabet;
    auto out_index = [&](int value, int tag) {
        for (int i = 0; i < out.size(); ++i)
            if (out.digits[i].components[0] == value && out.digits[i].components[1] == tag)
                return i;
        throw DomainError("missing pair digit");
    };

    LabeledAutomaton lsd = trim(sys.expansion_first_digits);
    const int nq = lsd.num_states;
    const int cap = 6; // positions beyond the prefix window behave identically
    LabeledAutomaton c;
    c.alphabet = out;
    c.deterministic = false;
    // States: chain positions 0..k-1, then (position j in [k..cap]) x lsd state.
    auto block = [&](int j, int q) { return k + (j - k) * nq + q; };
    c.num_states = k + (cap - k + 1) * nq;
    for (int j = 0; j < k; ++j) {
        int tg = tag_at(j);
        std::vector<int> tags = tg < 0 ? std::vector<int>{0, 1} : std::vector<int>{tg};
        for (int tag : tags) {
            int di = out_index(shift_digits[j], tag);
            if (j + 1 < k) {
                c.transitions.push_back({j, di, j + 1});
            } else {
                for (int q0 : lsd.initial) c.transitions.push_back({j, di, block(k, q0)});
            }
        }
    }
    for (int j = k; j <= cap; ++j) {
        int tg = tag_at(j);
        std::vector<int> tags = tg < 0 ? std::vector<int>{0, 1} : std::vector<int>{tg};
        int jn = std::min(j + 1, cap);
        for (const Transition& tr : lsd.transitions) {
            int value = -1;
            const Digit& dg = lsd.alphabet.digits[tr.digit];
            for (int v = 0; v <= 2; ++v)
                if (*dg.scalar == *sys.first_digits.digits[v].scalar) value = v;
            if (value < 0) throw DomainError("unexpected digit in tag-0 language");
            for (int tag : tags)
                c.transitions.push_back({block(j, tr.from), out_index(value, tag),
                                         block(jn, tr.to)});
        }
    }
    if (k > 0)
        c.initial = {0};
    else
        for (int q0 : lsd.initial) c.initial.push_back(block(k, q0));
    for (int j = k; j <= cap; ++j)
        for (int q = 0; q < nq; ++q)
            if (lsd.is_final(q)) c.final.push_back(block(j, q));
    c.sort_canonical();
    return c;
}

} // namespace

bool verify_inclusion_certificate(const SAdicSystem& sys, const std::vector<int>& prefix,
                                  const std::vector<int>& shift_digits) {
    return is_subset(certificate_language(sys, prefix, shift_digits), sys.product);
}

bool value_check_certificate(const SAdicSystem& sys, const std::vector<int>& prefix,
                             const std::vector<int>& shift_digits, const ZeroOptions& opt) {
    const FieldPtr& F = sys.psi.field;
    const int k = (int)shift_digits.size();

    // Left side: shift digits then the tag-0 digit language, plain digits.
    LabeledAutomaton lsd = trim(sys.expansion_first_digits);
    const int nq = lsd.num_states;
    LabeledAutomaton lhs;
    lhs.alphabet = sys.first_digits;
    lhs.deterministic = false;
    lhs.num_states = k + nq;
    for (int j = 0; j < k; ++j) {
        if (j + 1 < k) {
            lhs.transitions.push_back({j, shift_digits[j], j + 1});
        } else {
            for (int q0 : lsd.initial) lhs.transitions.push_back({j, shift_digits[j], k + q0});
        }
    }
    for (const Transition& tr : lsd.transitions) {
        int value = -1;
        const Digit& dg = lsd.alphabet.digits[tr.digit];
        for (int v = 0; v <= 2; ++v)
            if (*dg.scalar == *sys.first_digits.digits[v].scalar) value = v;
        lhs.transitions.push_back({k + tr.from, value, k + tr.to});
    }
    if (k > 0)
        lhs.initial = {0};
    else
        for (int q0 : lsd.initial) lhs.initial.push_back(k + q0);
    for (int q = 0; q < nq; ++q)
        if (lsd.is_final(q)) lhs.final.push_back(k + q);
    lhs.sort_canonical();

    // Right side: product words whose tags are compatible with the prefix,
    // projected to plain digits.
    const DigitAlphabet& out = sys.product.alphabet;
    LabeledAutomaton tags;
    tags.alphabet = out;
    tags.deterministic = false;
    const int cap = (int)prefix.size();
    tags.num_states = cap + 1;
    for (int j = 0; j <= cap; ++j) {
        for (int i = 0; i < out.size(); ++i) {
            int tg = out.digits[i].components[1];
            if (j < cap) {
                if (tg == prefix[j]) tags.transitions.push_back({j, i, j + 1});
            } else {
                tags.transitions.push_back({j, i, j});
            }
        }
        tags.final.push_back(j);
    }
    tags.initial = {0};
    tags.sort_canonical();
    LabeledAutomaton constrained = intersect(determinize(tags), sys.product);
    std::vector<std::optional<int>> proj(out.size());
    for (int i = 0; i < out.size(); ++i) proj[i] = out.digits[i].components[0];
    LabeledAutomaton rhs = map_labels(constrained, sys.first_digits, proj);

    return q_inclusion(ensure_zero_digit(minimize(lhs), F),
                       ensure_zero_digit(minimize(rhs), F), F, opt);
}

InclusionCertificate find_inclusion_certificate(const SAdicSystem& sys,
                                                const std::vector<int>& prefix, int max_power,
                                                bool run_value_check) {
    InclusionCertificate cert;
    cert.prefix = prefix;
    cert.shift = sys.psi.field->from_int(0);
    for (int k = 0; k <= max_power; ++k) {
        std::vector<int> digits(k, 0);
        while (true) {
            if (verify_inclusion_certificate(sys, prefix, digits)) {
                cert.found = true;
                cert.language_verified = true;
                cert.power = k;
                cert.shift_digits = digits;
                FieldElement t = sys.psi.field->from_int(0);
                for (int j = k - 1; j >= 0; --j)
                    t = t.mul_beta() + sys.psi.field->from_int(digits[j]);
                cert.shift = t;
                if (run_value_check)
                    cert.value_verified = value_check_certificate(sys, prefix, digits);
                return cert;
            }
            int j = 0;
            while (j < k && digits[j] == 2) digits[j++] = 0;
            if (j == k) break;
            ++digits[j];
        }
        if (k == 0 && max_power == 0) break;
    }
    return cert;
}

std::vector<InclusionCertificate> all_inclusion_certificates(const SAdicSystem& sys,
                                                             int max_power,
                                                             bool run_value_check) {
    std::vector<InclusionCertificate> out;
    for (int mask = 0; mask < 64; ++mask) {
        std::vector<int> prefix(6);
        for (int j = 0; j < 6; ++j) prefix[j] = (mask >> j) & 1;
        out.push_back(find_inclusion_certificate(sys, prefix, max_power, run_value_check));
    }
    return out;
}

} // namespace pisot
