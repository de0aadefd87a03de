#include "pisot/families.hpp"

#include "pisot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pisot {

namespace {

Substitution make_abc(std::vector<std::vector<int>> images) {
    Substitution s;
    s.alphabet = {'a', 'b', 'c'};
    s.images = std::move(images);
    return s;
}

constexpr Prec kPrecLadder[] = {96, 256, 1024};

RealInterval riq(const mpz_class& num, const mpz_class& den, Prec p) {
    mpq_class q(num, den);
    q.canonicalize();
    return RealInterval::from_rat(q, p);
}

// Contracting complex embedding with certified negative imaginary part.
int lower_complex_embedding(const FieldPtr& field, Prec prec) {
    for (int idx : field->contracting_indices()) {
        if (field->embedding_is_real(idx)) continue;
        if (field->embedding(idx, prec).box.im().hi_d() < 0) return idx;
    }
    throw DomainError("field has no contracting complex embedding below the real axis");
}

// Accumulates one named group of certified comparisons; any comparison that
// stays undecided at the working precision marks the group indecisive, which
// sends the whole attempt back for a higher-precision pass.
struct Group {
    DiskCheck check;
    bool indecisive = false;

    explicit Group(std::string name) {
        check.name = std::move(name);
        check.passed = true;
        check.margin = std::numeric_limits<double>::infinity();
    }

    void note(std::optional<bool> holds, double margin_lo) {
        ++check.comparisons;
        if (!holds) {
            indecisive = true;
            return;
        }
        if (!*holds) check.passed = false;
        check.margin = std::min(check.margin, margin_lo);
    }

    // Certified "center stays farther than the radius", compared on squares.
    void note_distance(const ComplexBox& offset, const RealInterval& radius_sq, double radius_hi) {
        RealInterval d2 = offset.mag_sq();
        double lo = d2.lo_d();
        note(d2.gt(radius_sq), (lo > 0 ? std::sqrt(lo) : 0.0) - radius_hi);
    }

    void note_greater(const RealInterval& lhs, const RealInterval& rhs) {
        note(lhs.gt(rhs), (lhs - rhs).lo_d());
    }

    void note_less(const RealInterval& lhs, const RealInterval& rhs) {
        note(lhs.lt(rhs), (rhs - lhs).lo_d());
    }
};

// The four eigenvalue bound pairs for the contracting complex root (Im < 0)
// of X^3 - kX^2 - X - 1, each side compared with certified enclosures.
Group eigenvalue_group(const FieldPtr& field, int k, Prec p) {
    Group g("eigenvalue enclosure bounds");
    int pi = lower_complex_embedding(field, p);
    ComplexBox beta = field->embedding(pi, p).box;
    mpz_class kk = mpz_class(k) * k + 2; // k^2 + 2; k + 2/k = kk / k
    RealInterval one = RealInterval::from_long(1, p);
    RealInterval sk = RealInterval::from_long(k, p).sqrt();
    RealInterval skk = riq(kk, k, p).sqrt();

    RealInterval m2 = beta.mag_sq();
    g.note_greater(m2, riq(k, kk, p)); // |beta|^2 > 1/(k + 2/k)
    g.note_less(m2, riq(1, k, p));     // |beta|^2 < 1/k

    // gamma = beta - 1/beta = -beta^2 + (k+1) beta + 1
    ComplexBox gamma = field->evaluate(field->element({1, k + 1, -1}), pi, p).box;
    RealInterval gm = gamma.mag();
    g.note_greater(gm, sk - one / sk);
    g.note_less(gm, skk + one / sk);

    // Re(beta) = -1/(2r) - 1/(2r^2) for the expanding real root r in
    // [k, k + 2/k], so -1/k < Re(beta) < -1/(2(k + 2/k)).
    g.note_greater(beta.re(), riq(-1, k, p));
    g.note_less(beta.re(), riq(-k, 2 * kk, p));

    g.note_greater(beta.im(), -(one / sk));
    g.note_less(beta.im(), riq(1, k, p) - one / skk);
    return g;
}

// One full certificate pass at a fixed working precision. Returns false when
// some comparison stayed indecisive (caller retries with more bits).
bool certificate_attempt(DiskCertificate& cert, const FieldPtr& field, Prec p) {
    cert.checks.clear();
    const int k = cert.k;
    const int w = cert.window;
    int pi = lower_complex_embedding(field, p);
    cert.embedding = pi;
    cert.precision = p;

    RealInterval one = RealInterval::from_long(1, p);
    RealInterval sk = RealInterval::from_long(k, p).sqrt();
    RealInterval radius = one / (one - one / sk);
    RealInterval radius_sq = radius.square();
    double radius_hi = radius.hi_d();
    cert.radius = radius_hi;

    // Target point k/2 - (sqrt(k)/2) i.
    ComplexBox tk(riq(k, 2, p), -(sk * riq(1, 2, p)));
    cert.target = tk;

    auto offsets = [&](const std::vector<FieldElement>& centers) {
        std::vector<ComplexBox> out;
        out.reserve(centers.size());
        for (const FieldElement& t : centers) out.push_back(field->evaluate(t, pi, p).box - tk);
        return out;
    };
    std::vector<ComplexBox> off_a = offsets(cert.centers_a);
    std::vector<ComplexBox> off_b = offsets(cert.centers_b);
    std::vector<ComplexBox> off_c = offsets(cert.centers_c);

    std::vector<Group> groups;

    {
        Group g("letter-b centers, untranslated");
        for (const ComplexBox& z : off_b) g.note_distance(z, radius_sq, radius_hi);
        groups.push_back(std::move(g));
    }
    {
        Group g("letter-c centers, untranslated");
        for (const ComplexBox& z : off_c) g.note_distance(z, radius_sq, radius_hi);
        groups.push_back(std::move(g));
    }
    {
        // Every center of every letter, shifted by each nonzero lattice
        // translate c(beta - k - 2) + d(beta^2 - k beta - 2) in the window.
        Group g("all centers, translated within the window");
        FieldElement gen_c = field->element({-(k + 2), 1, 0});
        FieldElement gen_d = field->element({-2, -k, 1});
        for (int c = -w; c <= w; ++c)
            for (int d = -w; d <= w; ++d) {
                if (c == 0 && d == 0) continue;
                FieldElement tcd = gen_c * mpz_class(c) + gen_d * mpz_class(d);
                ComplexBox t = field->evaluate(tcd, pi, p).box;
                for (const ComplexBox& z : off_a) g.note_distance(z + t, radius_sq, radius_hi);
                for (const ComplexBox& z : off_b) g.note_distance(z + t, radius_sq, radius_hi);
                for (const ComplexBox& z : off_c) g.note_distance(z + t, radius_sq, radius_hi);
            }
        groups.push_back(std::move(g));
    }

    RealInterval skk = riq(mpz_class(k) * k + 2, k, p).sqrt(); // sqrt(k + 2/k)
    {
        // Translates with c != 0 and 2|c| >= |d| keep every translated copy
        // at least k/2 - (9/2)sqrt(k) - sqrt(k + 2/k) - 1/k away.
        Group g("tail bound, radial zone");
        RealInterval b = riq(k, 2, p) - riq(9, 2, p) * sk - skk - riq(1, k, p);
        g.note_greater(b, radius);
        groups.push_back(std::move(g));
    }
    {
        // Translates with |d| >= 3 and |c| <= |d| keep every translated copy
        // at least (3/2)sqrt(k) - 5 - sqrt(k + 2/k) - 1/k away. This is the
        // binding constraint: it first clears the radius at k = 149.
        Group g("tail bound, imaginary zone");
        RealInterval b = riq(3, 2, p) * sk - RealInterval::from_long(5, p) - skk - riq(1, k, p);
        g.note_greater(b, radius);
        groups.push_back(std::move(g));
    }
    {
        // Translates with |d| = 2, |c| <= 2 keep centers off the gamma row
        // at least (1/2)sqrt(k) - 3 away; the window checks already settle
        // this zone exactly whenever window >= 2, so the bound is evaluated
        // for the report only.
        Group g("tail bound, imaginary band");
        RealInterval b = riq(1, 2, p) * sk - RealInterval::from_long(3, p);
        g.note_greater(b, radius);
        groups.push_back(std::move(g));
    }

    groups.push_back(eigenvalue_group(field, k, p));

    bool all_passed = true;
    for (Group& g : groups) {
        if (g.indecisive) return false;
        if (!g.check.passed) all_passed = false;
        if (!std::isfinite(g.check.margin)) g.check.margin = 0;
        cert.checks.push_back(std::move(g.check));
    }
    cert.verdict = all_passed;
    return true;
}

// Mirrored letter-a prefix-path language (least-significant digit first):
// the digit words whose values make up the letter-a line of the fixed point.
LabeledAutomaton letter_a_value_language(const PrefixAutomaton& pa) {
    LabeledAutomaton path = pa.automaton;
    path.initial = {0};
    path.final = {0};
    return minimize(mirror(path));
}

// 0 0 u for u in L: forcing the two lowest-significance digits to zero
// multiplies every value by beta^2 (the squared incidence matrix on the
// lattice side).
LabeledAutomaton prepend_two_zero_digits(const LabeledAutomaton& in, const FieldPtr& field) {
    LabeledAutomaton a = ensure_zero_digit(in, field);
    int z = a.alphabet.zero_index;
    LabeledAutomaton out;
    out.alphabet = a.alphabet;
    out.num_states = a.num_states + 2;
    out.transitions.reserve(a.transitions.size() + 1 + a.initial.size());
    out.transitions.push_back({0, z, 1});
    for (int q : a.initial) out.transitions.push_back({1, z, q + 2});
    for (const Transition& t : a.transitions)
        out.transitions.push_back({t.from + 2, t.digit, t.to + 2});
    out.initial = {0};
    out.final.reserve(a.final.size());
    for (int f : a.final) out.final.push_back(f + 2);
    out.deterministic = false;
    out.sort_canonical();
    return out;
}

} // namespace

Substitution sk_substitution(int k) {
    if (k < 0) throw DomainError("family index k must be nonnegative");
    std::vector<int> ia(static_cast<size_t>(k), 0);
    ia.push_back(1);
    ia.push_back(2);
    return make_abc({std::move(ia), {2}, {0}});
}

Substitution slk_substitution(int l, int k) {
    if (k < 1 || l < 0 || l > k)
        throw DomainError("family indices must satisfy 0 <= l <= k with k >= 1");
    std::vector<int> ia(static_cast<size_t>(l), 0);
    ia.push_back(1);
    ia.insert(ia.end(), static_cast<size_t>(k - l), 0);
    return make_abc({std::move(ia), {2}, {0}});
}

DiskCertificate verify_sk_certificate(int k, int window) {
    if (k < 3)
        throw DomainError("disk certificate requires k >= 3 (the covering radius needs "
                          "|beta| < 1/sqrt(k))");
    if (window < 2)
        throw DomainError("translate window must be at least 2; smaller windows leave "
                          "translates that no tail bound covers");

    MonicIntPoly chi = MonicIntPoly::from_coeffs({-1, -1, mpz_class(-k), 1});
    FieldPtr field = make_field(chi, 96);

    DiskCertificate cert;
    cert.k = k;
    cert.window = window;
    cert.centers_a.reserve(static_cast<size_t>(k) * k + 1);
    cert.centers_a.push_back(field->element({-1, 0, 1})); // gamma * beta = beta^2 - 1
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) cert.centers_a.push_back(field->element({i, j, 0}));
    cert.centers_b.reserve(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) cert.centers_b.push_back(field->element({k, i, 0}));
    cert.centers_c.reserve(static_cast<size_t>(k) + 1);
    cert.centers_c.push_back(field->element({0, k, 0}));
    for (int i = 0; i < k; ++i)
        cert.centers_c.push_back(field->element({1, k + 1 + i, -1})); // gamma + i beta

    for (Prec p : kPrecLadder)
        if (certificate_attempt(cert, field, p)) return cert;
    throw PrecisionError("disk certificate comparison stayed indecisive at the precision cap");
}

bool eigenvalue_bounds_check(int k) {
    if (k < 1) throw DomainError("eigenvalue bounds require k >= 1");
    MonicIntPoly chi = MonicIntPoly::from_coeffs({-1, -1, mpz_class(-k), 1});
    FieldPtr field = make_field(chi, 96);
    for (Prec p : kPrecLadder) {
        Group g = eigenvalue_group(field, k, p);
        if (!g.indecisive) return g.check.passed;
    }
    throw PrecisionError("eigenvalue bound comparison stayed indecisive at the precision cap");
}

bool verify_slk_inclusion(int l, int k) {
    if (k < 1 || l < 0 || l > k)
        throw DomainError("family indices must satisfy 0 <= l <= k with k >= 1");
    int m = std::min(l, k - l); // word reversal conjugates l and k - l
    if (m != 0 && m > k - 2)
        throw DomainError("inclusion argument needs 1 <= l <= k-2 after word-reversal "
                          "normalization");
    PrefixAutomaton base = prefix_automaton(slk_substitution(k, k));
    const FieldPtr& field = base.psi.field;
    LabeledAutomaton lk = letter_a_value_language(base);
    LabeledAutomaton scaled = prepend_two_zero_digits(lk, field);
    if (m == 0) return q_inclusion(scaled, lk, field);
    PrefixAutomaton target = prefix_automaton(slk_substitution(m, k));
    return q_inclusion(scaled, letter_a_value_language(target), field);
}

bool zero_language_check(int l, int k, int maxlen) {
    if (k < 3 || l < 1 || l > k - 2)
        throw DomainError("zero-language check needs 1 <= l <= k-2");
    if (maxlen < 0) throw DomainError("maxlen must be nonnegative");
    PrefixAutomaton beta_sub = prefix_automaton(slk_substitution(k, k));
    PrefixAutomaton target = prefix_automaton(slk_substitution(l, k));
    const FieldPtr& field = beta_sub.psi.field;

    DigitAlphabet diff;
    for (const Digit& x : beta_sub.sigma.digits)
        for (const Digit& y : target.sigma.digits) {
            FieldElement v = *x.scalar - *y.scalar;
            diff.add(Digit::of_scalar(v, v.str()));
        }
    diff.zero_index = diff.find(Digit::of_scalar(field->zero()));

    // Trim to the useful core so enumeration only walks completable prefixes.
    LabeledAutomaton zero_lang = trim(zero_language_lsb(diff, field));
    for (const std::vector<int>& word : enumerate_words(zero_lang, maxlen)) {
        FieldElement acc = field->zero();
        FieldElement power = field->one();
        for (int digit : word) {
            acc = acc + *zero_lang.alphabet.digits[digit].scalar * power;
            power = power.mul_beta();
        }
        if (!acc.is_zero()) return false;
    }
    return true;
}

} // namespace pisot
