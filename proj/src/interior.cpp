#include "pisot/interior.hpp"
#include "pisot/errors.hpp"

#include <chrono>
#include <set>

namespace pisot {

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string vec_name(const AbVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

// Remaps L's digits onto Σ' by exact scalar value; the language is unchanged.
LabeledAutomaton extend_alphabet_by_value(const LabeledAutomaton& l,
                                          const DigitAlphabet& sigma_prime) {
    std::vector<std::optional<int>> map(l.alphabet.size());
    for (int i = 0; i < l.alphabet.size(); ++i) {
        const Digit& d = l.alphabet.digits[i];
        if (!d.scalar) throw DomainError("digit '" + d.name + "' has no scalar value");
        int hit = -1;
        for (int j = 0; j < sigma_prime.size(); ++j) {
            const Digit& e = sigma_prime.digits[j];
            if (e.scalar && *e.scalar == *d.scalar) {
                hit = j;
                break;
            }
        }
        if (hit < 0)
            throw DomainError("digit '" + d.name + "' is missing from the extended alphabet");
        map[i] = hit;
    }
    return map_labels(l, sigma_prime, map);
}

void require_analyzable(const ClassificationReport& c, const Substitution& s) {
    std::string why;
    if (!c.primitive) why = "not primitive";
    else if (!c.irreducible) why = "characteristic polynomial is not irreducible";
    else if (!c.pisot) why = "characteristic polynomial is not Pisot";
    else if (!c.unit) why = "incidence matrix is not unimodular";
    if (!why.empty())
        throw DomainError("substitution '" + s.str() + "' is " + why);
}

} // namespace

std::string to_string(SpectrumStatus s) {
    switch (s) {
        case SpectrumStatus::PURE_DISCRETE: return "PURE_DISCRETE";
        case SpectrumStatus::NOT_DETECTED: return "NOT_DETECTED";
        case SpectrumStatus::PRECONDITION_FAILED: return "PRECONDITION_FAILED";
    }
    return "?";
}

DigitAlphabet default_extended_alphabet(const Substitution& s, int radius) {
    if (radius < 0) throw DomainError("radius must be >= 0");
    ClassificationReport cls = classify(s);
    require_analyzable(cls, s);
    PrefixAutomaton pa = prefix_automaton(s);
    int d = s.size();

    // S_r: BFS levels of sums of difference vectors e_a - e_b, 0 first.
    std::vector<AbVec> sphere{AbVec(d, 0)};
    std::set<AbVec> seen{AbVec(d, 0)};
    size_t level_begin = 0;
    for (int level = 1; level <= radius; ++level) {
        size_t level_end = sphere.size();
        for (size_t i = level_begin; i < level_end; ++i)
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    if (a == b) continue;
                    AbVec v = sphere[i];
                    v[a] += 1;
                    v[b] -= 1;
                    if (seen.insert(v).second) sphere.push_back(v);
                }
        level_begin = level_end;
    }

    DigitAlphabet out;
    for (const AbVec& rho : sphere)
        for (const Digit& base : pa.sigma.digits) {
            AbVec t = *base.vec;
            for (int i = 0; i < d; ++i) t[i] += rho[i];
            FieldElement val = pa.psi.field->zero();
            for (int i = 0; i < d; ++i)
                if (t[i] != 0) val = val + pa.psi.scaled[i] * mpz_class(t[i]);
            Digit dig = Digit::of_vec(t);
            dig.scalar = val;
            dig.name = vec_name(t) + "=" + val.str();
            out.add(std::move(dig));
        }
    FieldElement zero_val = pa.psi.field->zero();
    for (int i = 0; i < out.size(); ++i)
        if (*out.digits[i].scalar == zero_val) {
            out.zero_index = i;
            break;
        }
    return out;
}

LabeledAutomaton compute_L_int(const LabeledAutomaton& l, const DigitAlphabet& sigma_prime,
                               const FieldPtr& field, const ZeroOptions& opt,
                               LIntPipeline* stages) {
    if (sigma_prime.zero_index < 0)
        throw DomainError("extended alphabet must contain the zero digit");
    LabeledAutomaton base = ensure_zero_digit(l, field);
    const DigitAlphabet& sigma = base.alphabet;

    LabeledAutomaton padded = concat_zero_star(base);
    LabeledAutomaton top = universal_automaton(sigma_prime);
    LabeledAutomaton rel = build_relations_automaton(sigma_prime, sigma, field, opt);

    DigitAlphabet pair_alpha = DigitAlphabet::pairs(sigma_prime, sigma);
    int nb = sigma.size();
    LabeledAutomaton prod = product_map(
        {&top, &padded}, pair_alpha,
        [&](const std::vector<int>& d) -> std::optional<int> { return d[0] * nb + d[1]; });
    LabeledAutomaton joint = intersect(prod, rel);

    std::vector<std::optional<int>> first_of(pair_alpha.size());
    for (int i = 0; i < sigma_prime.size(); ++i)
        for (int j = 0; j < nb; ++j) first_of[i * nb + j] = i;
    LabeledAutomaton projected = map_labels(joint, sigma_prime, first_of);

    LabeledAutomaton dmin = minimize(projected);
    LabeledAutomaton z1 = z_closure(dmin);
    LabeledAutomaton stab = s_stabilizer(z1);
    LabeledAutomaton z2 = z_closure(stab);
    LabeledAutomaton l_int = minimize(z2);
    if (stages) {
        stages->projected_min = dmin;
        stages->after_z1 = z1;
        stages->after_s = stab;
        stages->after_z2 = z2;
        stages->l_int = l_int;
    }
    return l_int;
}

InteriorLanguage interior_language_full(const Substitution& s, int letter,
                                        const DigitAlphabet& sigma_prime,
                                        const ZeroOptions& opt) {
    if (letter < 0 || letter >= s.size()) throw DomainError("letter index out of range");
    ClassificationReport cls = classify(s);
    require_analyzable(cls, s);

    InteriorLanguage out;
    out.analyzed = s;
    out.seed_letter = cls.seed_letter;
    out.letter = letter;

    PrefixAutomaton pa = prefix_automaton(out.analyzed);
    out.field = pa.psi.field;
    out.sigma = pa.sigma;
    out.sigma_prime = sigma_prime;

    LabeledAutomaton path = pa.automaton;
    path.initial = {cls.seed_letter};
    path.final = {letter};
    out.l = minimize(mirror(path)); // least-significant digit first

    out.l_int = compute_L_int(out.l, sigma_prime, out.field, opt);
    LabeledAutomaton l_ext = extend_alphabet_by_value(out.l, sigma_prime);
    out.l_ring = minimize(intersect(l_ext, out.l_int));
    return out;
}

LabeledAutomaton interior_language(const Substitution& s, int letter,
                                   const DigitAlphabet& sigma_prime, const ZeroOptions& opt) {
    return interior_language_full(s, letter, sigma_prime, opt).l_ring;
}

InteriorReport decide_pure_discreteness(const Substitution& s, const DiscretenessOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    InteriorReport rep;
    rep.input = s;
    rep.classification = classify(s);
    rep.adequacy_assumption =
        "PURE_DISCRETE is conditional on adequacy of the extended digit set "
        "(zero interior to the values of Σ'*); adequacy is assumed, not verified";

    if (!rep.classification.primitive) rep.precondition_failures.push_back("not primitive");
    if (!rep.classification.irreducible)
        rep.precondition_failures.push_back("characteristic polynomial " +
                                            rep.classification.characteristic.str() +
                                            " is not irreducible");
    if (!rep.classification.pisot)
        rep.precondition_failures.push_back("characteristic polynomial " +
                                            rep.classification.characteristic.str() +
                                            " is not Pisot");
    if (!rep.classification.unit)
        rep.precondition_failures.push_back("incidence matrix is not unimodular");
    if (!rep.precondition_failures.empty()) {
        rep.status = SpectrumStatus::PRECONDITION_FAILED;
        rep.seconds_total = seconds_since(t0);
        return rep;
    }

    rep.power_used = rep.classification.power_for_fixed_point;
    rep.powered = substitution_power(s, rep.power_used);

    std::vector<int> radii;
    if (opt.fixed_radius >= 0) radii.push_back(opt.fixed_radius);
    else
        for (int r = 0; r <= opt.max_radius; ++r) radii.push_back(r);

    std::vector<int> letters;
    if (opt.all_letters)
        for (int b = 0; b < s.size(); ++b) letters.push_back(b);
    else
        letters.push_back(0);

    for (int r : radii) {
        std::vector<LetterOutcome> outcomes;
        int nonempty_count = 0;
        try {
            DigitAlphabet sigma_prime = default_extended_alphabet(rep.powered, r);
            for (int b : letters) {
                auto tl = std::chrono::steady_clock::now();
                InteriorLanguage full =
                    interior_language_full(rep.powered, b, sigma_prime, opt.zero);
                LetterOutcome o;
                o.seed_letter = full.seed_letter;
                o.letter = b;
                o.l_states = state_count(full.l);
                o.l_ring_states = state_count(full.l_ring);
                o.empty = is_empty(full.l_ring);
                if (!o.empty) {
                    std::optional<std::vector<int>> w = shortest_witness(full.l_ring);
                    if (!w || !accepts(full.l_ring, *w))
                        throw Error("interior witness failed re-verification");
                    o.witness = *w;
                    for (int d : o.witness)
                        o.witness_names.push_back(sigma_prime.digits[d].name);
                    ++nonempty_count;
                }
                o.seconds = seconds_since(tl);
                outcomes.push_back(std::move(o));
            }
            rep.sigma_prime = sigma_prime;
            rep.letters = outcomes;
            rep.radius_used = r;
        } catch (const Error& e) {
            rep.note = std::string("computation stopped at radius ") + std::to_string(r) +
                       ": " + e.what();
            break;
        }
        if (nonempty_count > 0) {
            rep.status = SpectrumStatus::PURE_DISCRETE;
            for (const LetterOutcome& o : rep.letters)
                if (!o.empty) {
                    rep.witness = o.witness;
                    rep.witness_names = o.witness_names;
                    break;
                }
            if (opt.all_letters && nonempty_count != static_cast<int>(letters.size())) {
                rep.note =
                    "letter interiors disagree on emptiness — inconsistent with the "
                    "all-or-none lemma; the extended digit set may be inadequate";
            }
            break;
        }
    }
    if (rep.status != SpectrumStatus::PURE_DISCRETE) {
        rep.status = SpectrumStatus::NOT_DETECTED;
        std::string tail = "no interior witness found up to radius " +
                           std::to_string(rep.radius_used) +
                           "; retry with a larger --radius (this is never a negative verdict)";
        rep.note = rep.note.empty() ? tail : rep.note + "; " + tail;
    }
    rep.seconds_total = seconds_since(t0);
    return rep;
}

} // namespace pisot
