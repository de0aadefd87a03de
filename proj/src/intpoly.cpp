#include "pisot/intpoly.hpp"

#include "pisot/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace pisot {

MonicIntPoly MonicIntPoly::from_coeffs(std::vector<mpz_class> coeffs) {
    if (coeffs.size() < 2) throw ParseError("polynomial degree must be at least 1");
    if (coeffs.back() != 1) throw ParseError("polynomial must be monic (leading coefficient 1)");
    MonicIntPoly p;
    p.coeffs = std::move(coeffs);
    return p;
}

namespace {

MonicIntPoly parse_coeff_list(const std::string& text) {
    std::vector<mpz_class> cs;
    std::string cur;
    for (size_t i = 1; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == ',' || ch == ']') {
            std::string t;
            for (char c : cur)
                if (!std::isspace(static_cast<unsigned char>(c))) t += c;
            if (t.empty()) throw ParseError("empty coefficient in list");
            try {
                cs.emplace_back(t);
            } catch (const std::invalid_argument&) {
                throw ParseError("bad integer coefficient: " + t);
            }
            cur.clear();
            if (ch == ']') {
                for (size_t j = i + 1; j < text.size(); ++j)
                    if (!std::isspace(static_cast<unsigned char>(text[j])))
                        throw ParseError("trailing characters after ']'");
                return MonicIntPoly::from_coeffs(std::move(cs));
            }
        } else {
            cur += ch;
        }
    }
    throw ParseError("unterminated coefficient list");
}

// One term of the symbolic format: [sign] [integer] ['*'] ['X' ['^' exp]]
struct Term {
    mpz_class coef;
    int exp = 0;
};

MonicIntPoly parse_symbolic(const std::string& text) {
    std::vector<Term> terms;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        if (!first || text[i] == '+' || text[i] == '-') {
            if (i >= text.size() || (text[i] != '+' && text[i] != '-'))
                throw ParseError("expected '+' or '-' between polynomial terms");
            if (text[i] == '-') sign = -1;
            ++i;
            skip_ws();
        }
        first = false;
        Term t;
        t.coef = 1;
        bool have_digits = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::string num;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) num += text[i++];
            t.coef = mpz_class(num);
            have_digits = true;
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip_ws();
            }
        }
        if (i < text.size() && (text[i] == 'X' || text[i] == 'x')) {
            ++i;
            t.exp = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                    throw ParseError("expected exponent after '^'");
                std::string num;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) num += text[i++];
                t.exp = std::stoi(num);
            }
        } else if (!have_digits) {
            throw ParseError("expected a coefficient or X in polynomial term");
        }
        t.coef *= sign;
        terms.push_back(t);
        skip_ws();
    }
    if (terms.empty()) throw ParseError("empty polynomial");
    int deg = 0;
    for (const Term& t : terms) deg = std::max(deg, t.exp);
    std::vector<mpz_class> cs(deg + 1, 0);
    for (const Term& t : terms) cs[t.exp] += t.coef;
    return MonicIntPoly::from_coeffs(std::move(cs));
}

} // namespace

MonicIntPoly MonicIntPoly::parse(const std::string& text) {
    size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) throw ParseError("empty polynomial");
    if (text[i] == '[') return parse_coeff_list(text.substr(i));
    return parse_symbolic(text);
}

std::string MonicIntPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (int e = degree(); e >= 0; --e) {
        const mpz_class& c = coeffs[e];
        if (c == 0) continue;
        mpz_class a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (e == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "X";
            if (e > 1) os << "^" << e;
        }
    }
    if (first) os << "0";
    return os.str();
}

std::string MonicIntPoly::coeff_list_str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (i) os << ", ";
        os << coeffs[i].get_str();
    }
    os << "]";
    return os.str();
}

namespace {

// Exact division of p by the monic integer polynomial g; returns true and the
// quotient when the remainder vanishes.
bool divides_exactly(const std::vector<mpz_class>& p, const std::vector<mpz_class>& g,
                     std::vector<mpz_class>* quotient = nullptr) {
    int dp = static_cast<int>(p.size()) - 1;
    int dg = static_cast<int>(g.size()) - 1;
    if (dg > dp) return false;
    std::vector<mpz_class> r = p;
    std::vector<mpz_class> q(dp - dg + 1, 0);
    for (int k = dp - dg; k >= 0; --k) {
        mpz_class f = r[k + dg]; // g is monic
        q[k] = f;
        if (f == 0) continue;
        for (int j = 0; j <= dg; ++j) r[k + j] -= f * g[j];
    }
    for (int j = 0; j < dg; ++j)
        if (r[j] != 0) return false;
    if (quotient) *quotient = std::move(q);
    return true;
}

std::vector<mpz_class> signed_divisors(const mpz_class& n) {
    std::vector<mpz_class> out;
    mpz_class a = abs(n);
    for (mpz_class d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            out.push_back(d);
            out.push_back(-d);
            mpz_class e = a / d;
            if (e != d) {
                out.push_back(e);
                out.push_back(-e);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

mpz_class binomial(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// ceil of the 2-norm of the coefficient vector (Landau bound on the Mahler
// measure), used in the Mignotte factor-coefficient bound.
mpz_class norm2_ceil(const std::vector<mpz_class>& p) {
    mpz_class s = 0;
    for (const mpz_class& c : p) s += c * c;
    mpz_class r = sqrt(s);
    if (r * r < s) r += 1;
    return r;
}

// Enumerate monic integer factor candidates of degree m and test division.
bool has_factor_of_degree(const MonicIntPoly& p, int m) {
    const mpz_class bound = norm2_ceil(p.coeffs) + 1;
    std::vector<mpz_class> divs = signed_divisors(p.coeffs[0]);
    std::vector<mpz_class> g(m + 1);
    g[m] = 1;
    // odometer over middle coefficients g[1..m-1] in [-B_i, B_i]
    std::vector<mpz_class> hi(m);
    for (int i2 = 1; i2 < m; ++i2) hi[i2] = binomial(m, i2) * bound;
    std::vector<mpz_class> cur(m);
    for (const mpz_class& a0 : divs) {
        g[0] = a0;
        for (int i2 = 1; i2 < m; ++i2) cur[i2] = -hi[i2];
        while (true) {
            for (int i2 = 1; i2 < m; ++i2) g[i2] = cur[i2];
            if (divides_exactly(p.coeffs, g)) return true;
            int pos = 1;
            while (pos < m && cur[pos] == hi[pos]) {
                cur[pos] = -hi[pos];
                ++pos;
            }
            if (pos >= m) break;
            cur[pos] += 1;
        }
        if (m == 1 && divides_exactly(p.coeffs, g)) return true;
    }
    return false;
}

} // namespace

bool is_irreducible(const MonicIntPoly& p) {
    int d = p.degree();
    if (d == 1) return true;
    if (p.coeffs[0] == 0) return false; // X divides
    for (int m = 1; m <= d / 2; ++m)
        if (has_factor_of_degree(p, m)) return false;
    return true;
}

// --- rational polynomial helpers ---------------------------------------------

void qpoly_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qpoly_from(const MonicIntPoly& p) {
    QPoly q(p.coeffs.size());
    for (size_t i = 0; i < p.coeffs.size(); ++i) q[i] = mpq_class(p.coeffs[i]);
    return q;
}

QPoly qpoly_derivative(const QPoly& p) {
    QPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    qpoly_trim(d);
    return d;
}

mpq_class qpoly_eval(const QPoly& p, const mpq_class& x) {
    mpq_class v = 0;
    for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

QPoly qpoly_rem(QPoly a, const QPoly& b) {
    qpoly_trim(a);
    if (b.empty()) throw DomainError("polynomial remainder by zero");
    while (a.size() >= b.size()) {
        mpq_class f = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        a.pop_back();
        qpoly_trim(a);
    }
    return a;
}

QPoly qpoly_gcd(QPoly a, QPoly b) {
    qpoly_trim(a);
    qpoly_trim(b);
    while (!b.empty()) {
        QPoly r = qpoly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        mpq_class lead = a.back();
        for (mpq_class& c : a) c /= lead;
    }
    return a;
}

QPoly qpoly_squarefree_part(const QPoly& p) {
    QPoly g = qpoly_gcd(p, qpoly_derivative(p));
    if (g.size() <= 1) return p;
    // exact division p / g
    QPoly a = p;
    qpoly_trim(a);
    QPoly q(a.size() - g.size() + 1, mpq_class(0));
    while (a.size() >= g.size()) {
        mpq_class f = a.back() / g.back();
        q[a.size() - g.size()] = f;
        size_t off = a.size() - g.size();
        for (size_t i = 0; i < g.size(); ++i) a[off + i] -= f * g[i];
        qpoly_trim(a);
        if (a.size() < g.size()) break;
    }
    return q;
}

std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain;
    QPoly p0 = qpoly_squarefree_part(p);
    qpoly_trim(p0);
    if (p0.empty()) throw DomainError("Sturm chain of the zero polynomial");
    chain.push_back(p0);
    QPoly p1 = qpoly_derivative(p0);
    while (!p1.empty()) {
        chain.push_back(p1);
        QPoly r = qpoly_rem(chain[chain.size() - 2], p1);
        for (mpq_class& c : r) c = -c;
        p1 = std::move(r);
    }
    return chain;
}

namespace {
int sign_changes_at(const std::vector<QPoly>& chain, const mpq_class& x) {
    int changes = 0, prev = 0;
    for (const QPoly& p : chain) {
        int s = sgn(qpoly_eval(p, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}
} // namespace

int sturm_count(const std::vector<QPoly>& chain, const mpq_class& a, const mpq_class& b) {
    return sign_changes_at(chain, a) - sign_changes_at(chain, b);
}

namespace {

// Exact synthetic division of g by (X - r); g(r) must be zero.
QPoly qpoly_deflate(const QPoly& g, const mpq_class& r) {
    QPoly q(g.size() - 1);
    mpq_class carry = g.back();
    for (size_t i = g.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = g[i] + carry * r;
    }
    return q;
}

} // namespace

std::vector<std::pair<mpq_class, mpq_class>> isolate_real_roots(const MonicIntPoly& p) {
    QPoly g = qpoly_squarefree_part(qpoly_from(p));
    qpoly_trim(g);

    // A monic integer polynomial has only integer rational roots; peel them
    // off first so the remaining bisection never lands on a root exactly.
    std::vector<mpq_class> point_roots;
    if (g.size() >= 2 && g[0] == 0) { // factor X (squarefree: at most once)
        point_roots.emplace_back(0);
        g.erase(g.begin());
    }
    if (g.size() >= 2) {
        mpz_class c0_num = g[0].get_num() * g[0].get_den(); // integer candidates divide |g(0)|
        for (const mpz_class& r : signed_divisors(c0_num)) {
            mpq_class rq(r);
            if (g.size() >= 2 && qpoly_eval(g, rq) == 0) {
                point_roots.push_back(rq);
                g = qpoly_deflate(g, rq);
            }
        }
    }

    std::vector<std::pair<mpq_class, mpq_class>> result;
    for (const mpq_class& r : point_roots) result.emplace_back(r, r);

    if (g.size() >= 2) {
        std::vector<QPoly> chain = sturm_chain(g);
        mpq_class bound(root_bound(p));
        std::vector<std::pair<mpq_class, mpq_class>> stack;
        stack.emplace_back(-bound, bound);
        while (!stack.empty()) {
            auto [lo, hi] = stack.back();
            stack.pop_back();
            int n = sturm_count(chain, lo, hi);
            if (n == 0) continue;
            // Keep splitting until the bracket neither contains nor touches a
            // rational root, so its endpoints are sign-definite for p itself.
            bool contains_point = false;
            for (const mpq_class& r : point_roots)
                if (lo <= r && r <= hi) contains_point = true;
            if (n == 1 && !contains_point) {
                // one simple irrational root: endpoints have opposite nonzero signs
                result.emplace_back(lo, hi);
                continue;
            }
            mpq_class mid = (lo + hi) / 2;
            stack.emplace_back(lo, mid);
            stack.emplace_back(mid, hi);
        }
    }

    std::sort(result.begin(), result.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return result;
}

std::pair<mpq_class, mpq_class> refine_real_root(const MonicIntPoly& p,
                                                 std::pair<mpq_class, mpq_class> iv,
                                                 unsigned bits) {
    if (iv.first == iv.second) return iv;
    QPoly q = qpoly_from(p);
    QPoly sf = qpoly_squarefree_part(q);
    mpq_class width_target(mpz_class(1), mpz_class(1) << bits);
    int slo = sgn(qpoly_eval(sf, iv.first));
    if (slo == 0) return {iv.first, iv.first};
    while (iv.second - iv.first > width_target) {
        mpq_class mid = (iv.first + iv.second) / 2;
        int sm = sgn(qpoly_eval(sf, mid));
        if (sm == 0) return {mid, mid};
        if (sm == slo)
            iv.first = mid;
        else
            iv.second = mid;
    }
    return iv;
}

mpz_class root_bound(const MonicIntPoly& p) {
    mpz_class m = 0;
    for (const mpz_class& c : p.coeffs) m = std::max(m, mpz_class(abs(c)));
    return m + 1;
}

} // namespace pisot
