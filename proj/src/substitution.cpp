#include "pisot/substitution.hpp"
#include "pisot/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace pisot {

int Substitution::index_of(char c) const {
    for (size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == c) return static_cast<int>(i);
    return -1;
}

std::string Substitution::image_str(int a) const {
    std::string out;
    for (int b : images[a]) out.push_back(alphabet[b]);
    return out;
}

std::string Substitution::str() const {
    std::string out;
    for (int a = 0; a < size(); ++a) {
        if (a) out.push_back(';');
        out.push_back(alphabet[a]);
        out += "->";
        out += image_str(a);
    }
    return out;
}

Substitution parse_substitution(const std::string& text) {
    // Split on ';', parse each rule "x -> word".
    std::vector<std::pair<char, std::string>> rules;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t semi = text.find(';', pos);
        std::string entry = text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        pos = (semi == std::string::npos) ? text.size() + 1 : semi + 1;

        size_t i = 0;
        auto skip_ws = [&] { while (i < entry.size() && std::isspace(static_cast<unsigned char>(entry[i]))) ++i; };
        skip_ws();
        if (i == entry.size()) {
            if (rules.empty() && pos > text.size()) break; // wholly empty input caught below
            continue;                                      // tolerate empty segments / trailing ';'
        }
        char lhs = entry[i];
        if (!std::isalnum(static_cast<unsigned char>(lhs)))
            throw ParseError("substitution rule must start with an alphanumeric letter: '" + entry + "'");
        ++i;
        skip_ws();
        if (i + 1 >= entry.size() || entry[i] != '-' || entry[i + 1] != '>')
            throw ParseError("expected '->' in substitution rule: '" + entry + "'");
        i += 2;
        std::string image;
        while (i < entry.size()) {
            char c = entry[i++];
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            if (!std::isalnum(static_cast<unsigned char>(c)))
                throw ParseError(std::string("invalid letter '") + c + "' in substitution image");
            image.push_back(c);
        }
        if (image.empty())
            throw ParseError(std::string("empty image for letter '") + lhs + "'");
        rules.emplace_back(lhs, image);
    }
    if (rules.empty()) throw ParseError("empty substitution");

    Substitution s;
    for (auto& [lhs, image] : rules) {
        if (s.index_of(lhs) >= 0)
            throw ParseError(std::string("duplicate rule for letter '") + lhs + "'");
        s.alphabet.push_back(lhs);
        (void)image;
    }
    for (auto& [lhs, image] : rules) {
        std::vector<int> img;
        for (char c : image) {
            int b = s.index_of(c);
            if (b < 0)
                throw ParseError(std::string("image letter '") + c + "' has no rule");
            img.push_back(b);
        }
        s.images.push_back(std::move(img));
        (void)lhs;
    }
    return s;
}

IntMat incidence_matrix(const Substitution& s) {
    int d = s.size();
    IntMat m(d, std::vector<mpz_class>(d, 0));
    for (int b = 0; b < d; ++b)
        for (int a : s.images[b]) m[a][b] += 1;
    return m;
}

IntMat mat_identity(int d) {
    IntMat m(d, std::vector<mpz_class>(d, 0));
    for (int i = 0; i < d; ++i) m[i][i] = 1;
    return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    int n = static_cast<int>(a.size());
    int k = static_cast<int>(b.size());
    int m = static_cast<int>(b[0].size());
    IntMat out(n, std::vector<mpz_class>(m, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) {
            if (a[i][j] == 0) continue;
            for (int l = 0; l < m; ++l) out[i][l] += a[i][j] * b[j][l];
        }
    return out;
}

mpz_class mat_det(const IntMat& m) {
    // Bareiss fraction-free elimination (exact).
    int d = static_cast<int>(m.size());
    IntMat a = m;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < d - 1; ++k) {
        if (a[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < d; ++i)
                if (a[i][k] != 0) { p = i; break; }
            if (p < 0) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < d; ++i)
            for (int j = k + 1; j < d; ++j) {
                mpz_class num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    return sign * a[d - 1][d - 1];
}

IntMat mat_inverse_unimodular(const IntMat& m) {
    int d = static_cast<int>(m.size());
    mpz_class det = mat_det(m);
    if (det != 1 && det != -1)
        throw DomainError("matrix is not unimodular (|det| = " + mpz_class(abs(det)).get_str() + ")");
    // Gauss-Jordan over Q; with |det| = 1 the result is integral.
    std::vector<std::vector<mpq_class>> a(d, std::vector<mpq_class>(2 * d, 0));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) a[i][j] = mpq_class(m[i][j]);
        a[i][d + i] = 1;
    }
    for (int col = 0; col < d; ++col) {
        int p = -1;
        for (int i = col; i < d; ++i)
            if (a[i][col] != 0) { p = i; break; }
        std::swap(a[col], a[p]);
        mpq_class inv = 1 / a[col][col];
        for (int j = 0; j < 2 * d; ++j) a[col][j] *= inv;
        for (int i = 0; i < d; ++i) {
            if (i == col || a[i][col] == 0) continue;
            mpq_class f = a[i][col];
            for (int j = 0; j < 2 * d; ++j) a[i][j] -= f * a[col][j];
        }
    }
    IntMat out(d, std::vector<mpz_class>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            mpq_class v = a[i][d + j];
            v.canonicalize();
            if (v.get_den() != 1) throw DomainError("unimodular inverse was not integral");
            out[i][j] = v.get_num();
        }
    return out;
}

AbVec apply_mat(const IntMat& m, const AbVec& v) {
    int d = static_cast<int>(m.size());
    AbVec out(d, 0);
    for (int i = 0; i < d; ++i) {
        mpz_class acc = 0;
        for (int j = 0; j < d; ++j)
            if (v[j] != 0) acc += m[i][j] * static_cast<long>(v[j]);
        if (!acc.fits_slong_p()) throw BudgetError("integer overflow applying incidence matrix");
        out[i] = acc.get_si();
    }
    return out;
}

MonicIntPoly char_poly(const IntMat& m) {
    // Faddeev–LeVerrier: exact integer recurrence for det(X·I − M).
    int d = static_cast<int>(m.size());
    std::vector<mpz_class> c(d + 1, 0);
    c[d] = 1;
    IntMat n = mat_identity(d);
    for (int k = 1; k <= d; ++k) {
        IntMat mn = mat_mul(m, n);
        mpz_class tr = 0;
        for (int i = 0; i < d; ++i) tr += mn[i][i];
        mpz_class ck;
        mpz_class neg_tr = -tr;
        mpz_class kk = k;
        mpz_divexact(ck.get_mpz_t(), neg_tr.get_mpz_t(), kk.get_mpz_t());
        c[d - k] = ck;
        if (k < d) {
            n = mn;
            for (int i = 0; i < d; ++i) n[i][i] += ck;
        }
    }
    return MonicIntPoly::from_coeffs(c);
}

namespace {

// First-letter map cycle: returns (seed letter, cycle length) for the
// earliest letter (alphabet order) lying on a cycle of a -> first(s(a)).
std::pair<int, int> fixed_point_cycle(const Substitution& s) {
    int d = s.size();
    std::vector<int> f(d);
    for (int a = 0; a < d; ++a) f[a] = s.images[a][0];
    for (int a = 0; a < d; ++a) {
        int x = a;
        for (int step = 1; step <= d; ++step) {
            x = f[x];
            if (x == a) return {a, step};
        }
    }
    throw DomainError("first-letter map has no cycle"); // unreachable: finite map
}

} // namespace

ClassificationReport classify(const Substitution& s) {
    ClassificationReport rep;
    int d = s.size();
    IntMat m = incidence_matrix(s);

    int bound = (d - 1) * (d - 1) + 1;
    IntMat p = m;
    for (int n = 1; n <= bound && !rep.primitive; ++n) {
        bool positive = true;
        for (int i = 0; i < d && positive; ++i)
            for (int j = 0; j < d && positive; ++j)
                if (p[i][j] <= 0) positive = false;
        if (positive) rep.primitive = true;
        else if (n < bound) p = mat_mul(p, m);
    }

    rep.characteristic = char_poly(m);
    PolyClass pc = classify_polynomial(rep.characteristic);
    rep.irreducible = pc.irreducible;
    rep.pisot = pc.pisot;
    rep.unit = pc.unit;

    auto [seed, k] = fixed_point_cycle(s);
    rep.seed_letter = seed;
    rep.power_for_fixed_point = k;
    return rep;
}

Substitution substitution_power(const Substitution& s, int k) {
    if (k < 1) throw DomainError("substitution power must be >= 1");
    Substitution out = s;
    for (int step = 1; step < k; ++step) {
        std::vector<std::vector<int>> next(s.size());
        for (int a = 0; a < s.size(); ++a)
            for (int b : out.images[a])
                next[a].insert(next[a].end(), s.images[b].begin(), s.images[b].end());
        out.images = std::move(next);
    }
    return out;
}

PsiMap psi(const Substitution& s) {
    int d = s.size();
    IntMat m = incidence_matrix(s);
    MonicIntPoly chi = char_poly(m);
    PolyClass pc = classify_polynomial(chi);
    if (!pc.irreducible)
        throw DomainError("left-eigenvector map needs an irreducible characteristic polynomial, got " +
                          chi.str());
    FieldPtr field = make_field(chi);

    // Solve l·M = beta·l with l_0 = 1 over Q(beta): for each column b,
    // sum_a l_a M[a][b] = beta l_b. Unknowns l_1..l_{d-1}; d equations of
    // rank d-1 (beta is a simple eigenvalue).
    QFieldElement beta = QFieldElement::from(field->beta());
    int n_unknown = d - 1;
    // rows[b][j] = coefficient of l_{j+1} in equation b; rhs[b] = constant.
    std::vector<std::vector<QFieldElement>> rows(d);
    std::vector<QFieldElement> rhs;
    auto q_of_z = [&](const mpz_class& z) {
        return QFieldElement::from(field->from_int(z));
    };
    for (int b = 0; b < d; ++b) {
        rows[b].reserve(n_unknown);
        for (int a = 1; a < d; ++a) {
            QFieldElement coef = q_of_z(m[a][b]);
            if (a == b) coef = coef - beta;
            rows[b].push_back(coef);
        }
        // Move the l_0 = 1 contribution to the right-hand side.
        QFieldElement c0 = q_of_z(m[0][b]);
        if (b == 0) c0 = c0 - beta;
        rhs.push_back(QFieldElement::from(field->zero()) - c0);
    }

    std::vector<QFieldElement> sol(n_unknown, QFieldElement::from(field->zero()));
    if (n_unknown > 0) {
        // Gaussian elimination with exact pivots.
        int row = 0;
        std::vector<int> pivot_row(n_unknown, -1);
        for (int col = 0; col < n_unknown && row < d; ++col) {
            int p = -1;
            for (int i = row; i < d; ++i)
                if (!rows[i][col].is_zero()) { p = i; break; }
            if (p < 0) continue;
            std::swap(rows[p], rows[row]);
            std::swap(rhs[p], rhs[row]);
            QFieldElement inv_pivot = QFieldElement::from(field->one()) / rows[row][col];
            for (int j = col; j < n_unknown; ++j) rows[row][j] = rows[row][j] * inv_pivot;
            rhs[row] = rhs[row] * inv_pivot;
            for (int i = 0; i < d; ++i) {
                if (i == row || rows[i][col].is_zero()) continue;
                QFieldElement f = rows[i][col];
                for (int j = col; j < n_unknown; ++j)
                    rows[i][j] = rows[i][j] - f * rows[row][j];
                rhs[i] = rhs[i] - f * rhs[row];
            }
            pivot_row[col] = row;
            ++row;
        }
        for (int col = 0; col < n_unknown; ++col) {
            if (pivot_row[col] < 0)
                throw DomainError("eigenvector system is singular");
            sol[col] = rhs[pivot_row[col]];
        }
        // Consistency of the leftover equations.
        for (int i = row; i < d; ++i)
            if (!rhs[i].is_zero())
                throw DomainError("eigenvector system is inconsistent");
    }

    PsiMap out;
    out.field = field;
    out.values.reserve(d);
    out.values.push_back(QFieldElement::from(field->one()));
    for (int a = 1; a < d; ++a) out.values.push_back(sol[a - 1]);

    mpz_class den = 1;
    for (const QFieldElement& v : out.values) {
        mpz_class dv = v.denominator();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), dv.get_mpz_t());
        den = den / g * dv;
    }
    out.denominator = den;
    QFieldElement qden = QFieldElement::from(field->from_int(den));
    for (const QFieldElement& v : out.values)
        out.scaled.push_back((v * qden).scaled_to_integer());
    return out;
}

PrefixAutomaton prefix_automaton(const Substitution& s) {
    PrefixAutomaton out;
    out.psi = psi(s);
    int d = s.size();

    auto digit_of = [&](const AbVec& t) {
        FieldElement val = out.psi.field->zero();
        for (int a = 0; a < d; ++a)
            if (t[a] != 0) val = val + out.psi.scaled[a] * mpz_class(t[a]);
        Digit dig = Digit::of_vec(t);
        dig.scalar = val;
        std::string name = "(";
        for (int a = 0; a < d; ++a) {
            if (a) name += ",";
            name += std::to_string(t[a]);
        }
        name += ")=" + val.str();
        dig.name = name;
        return dig;
    };

    LabeledAutomaton& aut = out.automaton;
    aut.num_states = d;
    aut.deterministic = false;
    for (int c = 0; c < d; ++c) {
        AbVec t(d, 0);
        for (int b : s.images[c]) {
            int idx = out.sigma.add(digit_of(t));
            aut.transitions.push_back({c, idx, b});
            t[b] += 1;
        }
    }
    AbVec zero_vec(d, 0);
    out.sigma.zero_index = out.sigma.find(digit_of(zero_vec));
    if (out.sigma.zero_index < 0) {
        // Cannot happen: every image is non-empty, so the empty prefix occurs.
        throw DomainError("digit alphabet is missing the zero digit");
    }
    aut.alphabet = out.sigma;
    aut.sort_canonical();
    return out;
}

std::vector<AbVec> discrete_line_points(const Substitution& s, int letter, int depth,
                                        size_t budget) {
    if (letter < 0 || letter >= s.size()) throw DomainError("letter index out of range");
    ClassificationReport rep = classify(s);
    if (!rep.primitive) throw DomainError("discrete line needs a primitive substitution");
    int steps = rep.power_for_fixed_point * depth;
    std::vector<int> word = {rep.seed_letter};
    for (int i = 0; i < steps; ++i) {
        size_t next_len = 0;
        for (int c : word) next_len += s.images[c].size();
        if (next_len > budget)
            throw BudgetError("discrete line word exceeds budget of " + std::to_string(budget) +
                              " letters");
        std::vector<int> next;
        next.reserve(next_len);
        for (int c : word)
            next.insert(next.end(), s.images[c].begin(), s.images[c].end());
        word = std::move(next);
    }
    std::vector<AbVec> pts;
    AbVec x(s.size(), 0);
    for (int c : word) {
        if (c == letter) pts.push_back(x);
        x[c] += 1;
    }
    return pts;
}

std::vector<std::pair<AbVec, int>> e_one(const Substitution& s, const AbVec& x, int a) {
    if (a < 0 || a >= s.size()) throw DomainError("letter index out of range");
    if (static_cast<int>(x.size()) != s.size()) throw DomainError("vector dimension mismatch");
    IntMat m = incidence_matrix(s);
    AbVec mx = apply_mat(m, x);
    std::vector<std::pair<AbVec, int>> out;
    AbVec t(s.size(), 0);
    for (int b : s.images[a]) {
        AbVec y = mx;
        for (int i = 0; i < s.size(); ++i) y[i] += t[i];
        out.emplace_back(std::move(y), b);
        t[b] += 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::pair<AbVec, int>> e_one_star(const Substitution& s, const AbVec& y, int b) {
    if (b < 0 || b >= s.size()) throw DomainError("letter index out of range");
    if (static_cast<int>(y.size()) != s.size()) throw DomainError("vector dimension mismatch");
    IntMat m = incidence_matrix(s);
    IntMat minv = mat_inverse_unimodular(m);
    std::vector<std::pair<AbVec, int>> out;
    for (int a = 0; a < s.size(); ++a) {
        AbVec t(s.size(), 0);
        for (int c : s.images[a]) {
            if (c == b) {
                AbVec diff(s.size());
                for (int i = 0; i < s.size(); ++i) diff[i] = y[i] - t[i];
                out.emplace_back(apply_mat(minv, diff), a);
            }
            t[c] += 1;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace pisot
