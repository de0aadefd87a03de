#include "pisot/geometry.hpp"
#include "pisot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>

namespace pisot {

namespace {

void require_projectable(const ClassificationReport& c, const Substitution& s) {
    std::string why;
    if (!c.primitive) why = "not primitive";
    else if (!c.irreducible) why = "characteristic polynomial is not irreducible";
    else if (!c.pisot) why = "characteristic polynomial is not Pisot";
    if (!why.empty()) throw DomainError("substitution '" + s.str() + "' is " + why);
}

// Contracting embeddings with conjugate pairs deduplicated to the Im < 0
// representative, ascending index order.
struct EmbeddingSelection {
    std::vector<int> indices;
    std::vector<char> real;
};

EmbeddingSelection select_embeddings(const FieldPtr& field) {
    EmbeddingSelection sel;
    for (int idx : field->contracting_indices()) {
        if (field->embedding_is_real(idx)) {
            sel.indices.push_back(idx);
            sel.real.push_back(1);
        } else if (field->embedding(idx, 96).center_im() < 0) {
            sel.indices.push_back(idx);
            sel.real.push_back(0);
        }
    }
    return sel;
}

// Certified upper bound of the contracting root's modulus, strictly < 1.
double contracting_modulus_hi(const FieldPtr& field, int idx) {
    for (Prec prec = 96; prec <= 4096; prec *= 2) {
        double hi = field->embedding(idx, prec).box.mag().hi_d();
        if (hi < 1.0) return hi;
    }
    throw PrecisionError("could not certify a contracting embedding below modulus 1");
}

// ψ(e_a) per selected embedding, as float coordinates (Re or Re,Im).
std::vector<std::vector<double>> letter_increments(const PsiMap& psi,
                                                   const EmbeddingSelection& sel) {
    int d = static_cast<int>(psi.values.size());
    std::vector<std::vector<double>> inc(d);
    for (int a = 0; a < d; ++a)
        for (size_t e = 0; e < sel.indices.size(); ++e) {
            Enclosure enc = psi.field->evaluate(psi.values[a], sel.indices[e], 96);
            inc[a].push_back(enc.center_re());
            if (!sel.real[e]) inc[a].push_back(enc.center_im());
        }
    return inc;
}

mpz_class word_length(const Substitution& s, int seed, int depth) {
    int d = s.size();
    std::vector<mpz_class> len(d, 1);
    for (int l = 0; l < depth; ++l) {
        std::vector<mpz_class> next(d, 0);
        for (int a = 0; a < d; ++a)
            for (int b : s.images[a]) next[a] += len[b];
        len = next;
    }
    return len[seed];
}

struct RingTable {
    std::vector<int> next; // state*alpha + digit -> state
    std::vector<char> fin;
    int alpha = 0;
    int start = 0;
};

RingTable make_ring_table(const LabeledAutomaton& ring_in) {
    LabeledAutomaton ring = ring_in.deterministic ? ring_in : minimize(ring_in);
    if (ring.initial.empty()) throw DomainError("interior language automaton has no initial state");
    RingTable t;
    t.alpha = ring.alphabet.size();
    t.start = ring.initial[0];
    t.next.assign(static_cast<size_t>(ring.num_states) * t.alpha, -1);
    for (const Transition& tr : ring.transitions)
        t.next[static_cast<size_t>(tr.from) * t.alpha + tr.digit] = tr.to;
    t.fin.assign(ring.num_states, 0);
    for (int q : ring.final) t.fin[q] = 1;
    return t;
}

struct CloudBuilder {
    const Substitution* s = nullptr;
    const std::vector<std::vector<double>>* inc = nullptr;
    int depth = 0;
    int coords = 0;
    PointCloud* out = nullptr;

    // interior flagging (optional)
    bool flags = false;
    std::vector<RingTable> rings;                 // per letter
    std::vector<std::vector<int>> ring_digit;     // [letter][occurrence] -> Σ' index
    std::vector<int> digit_stack;                 // most significant first

    std::vector<double> acc; // running projection of the prefix abelianization

    void emit(int letter) {
        CloudPoint p;
        p.proj = acc;
        p.letter = letter;
        if (flags) {
            const RingTable& rt = rings[letter];
            int q = rt.start;
            // the automaton reads least significant digit first
            for (int l = depth - 1; l >= 0 && q >= 0; --l)
                q = rt.next[static_cast<size_t>(q) * rt.alpha + digit_stack[l]];
            p.interior = q >= 0 && rt.fin[q];
        }
        out->points.push_back(std::move(p));
        const std::vector<double>& v = (*inc)[letter];
        for (int i = 0; i < coords; ++i) acc[i] += v[i];
    }

    void rec(int letter, int level) {
        if (level == depth) {
            emit(letter);
            return;
        }
        const std::vector<int>& img = s->images[letter];
        for (size_t j = 0; j < img.size(); ++j) {
            if (flags) digit_stack[level] = ring_digit[letter][j];
            rec(img[j], level + 1);
        }
    }
};

PointCloud build_cloud(const Substitution& s_in, int depth,
                       const std::vector<LabeledAutomaton>* interior_rings,
                       size_t max_points) {
    if (depth < 0) throw DomainError("depth must be >= 0");
    ClassificationReport cls = classify(s_in);
    require_projectable(cls, s_in);
    Substitution s = substitution_power(s_in, cls.power_for_fixed_point);
    int seed = cls.seed_letter;

    mpz_class total = word_length(s, seed, depth);
    if (total > static_cast<long>(max_points))
        throw BudgetError("cloud would contain " + total.get_str() + " points, over the budget of " +
                          std::to_string(max_points));

    PrefixAutomaton pa = prefix_automaton(s);
    EmbeddingSelection sel = select_embeddings(pa.psi.field);
    std::vector<std::vector<double>> inc = letter_increments(pa.psi, sel);

    PointCloud cloud;
    cloud.analyzed = s;
    cloud.seed_letter = seed;
    cloud.depth = depth;
    cloud.embedding_indices = sel.indices;
    cloud.embedding_real = sel.real;

    // Geometric-series bound per embedding: max |embedded digit| / (1 − |root|).
    for (size_t e = 0; e < sel.indices.size(); ++e) {
        double g_hi = contracting_modulus_hi(pa.psi.field, sel.indices[e]);
        double maxdig = 0;
        for (const Digit& dig : pa.sigma.digits) {
            QFieldElement q(pa.psi.field, std::vector<mpq_class>(pa.psi.field->degree(), 0));
            for (int a = 0; a < s.size(); ++a)
                if ((*dig.vec)[a] != 0) q = q + pa.psi.values[a] * mpq_class((*dig.vec)[a]);
            maxdig = std::max(maxdig,
                              pa.psi.field->evaluate(q, sel.indices[e], 96).box.mag().hi_d());
        }
        cloud.bounds.push_back(maxdig / (1.0 - g_hi) * (1.0 + 1e-12));
    }

    CloudBuilder b;
    b.s = &s;
    b.inc = &inc;
    b.depth = depth;
    b.coords = cloud.coords_per_point();
    b.out = &cloud;
    b.acc.assign(b.coords, 0.0);

    if (interior_rings) {
        if (interior_rings->size() != static_cast<size_t>(s.size()))
            throw DomainError("need one interior language per letter");
        b.flags = true;
        cloud.has_interior_flags = true;
        for (const LabeledAutomaton& r : *interior_rings) b.rings.push_back(make_ring_table(r));
        const DigitAlphabet& sp = (*interior_rings)[0].alphabet;
        b.ring_digit.resize(s.size());
        for (int a = 0; a < s.size(); ++a) {
            AbVec prefix(s.size(), 0);
            for (size_t j = 0; j < s.images[a].size(); ++j) {
                FieldElement val = pa.psi.field->zero();
                for (int x = 0; x < s.size(); ++x)
                    if (prefix[x] != 0) val = val + pa.psi.scaled[x] * mpz_class(prefix[x]);
                int hit = -1;
                for (int k = 0; k < sp.size(); ++k)
                    if (sp.digits[k].scalar && *sp.digits[k].scalar == val) {
                        hit = k;
                        break;
                    }
                if (hit < 0)
                    throw DomainError(
                        "interior language alphabet is missing a digit of the substitution");
                b.ring_digit[a].push_back(hit);
                prefix[s.images[a][j]] += 1;
            }
        }
        b.digit_stack.assign(std::max(depth, 1), 0);
    }

    cloud.points.reserve(total.get_ui());
    b.rec(seed, 0);
    return cloud;
}

std::string format_double(double v, const char* fmt) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

const char* const kPalette[10] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
const char* const kHighlight = "#000000";

struct CanvasMap {
    double plo_x, phi_x, plo_y, phi_y;
    int width, height;

    double x(double v) const { return (v - plo_x) / (phi_x - plo_x) * (width - 1); }
    double y(double v) const { return (height - 1) - (v - plo_y) / (phi_y - plo_y) * (height - 1); }
};

CanvasMap fit_canvas(const PointCloud& cloud, int width, int height) {
    int dim = cloud.coords_per_point();
    double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    bool first = true;
    for (const CloudPoint& p : cloud.points) {
        double px = p.proj.empty() ? 0.0 : p.proj[0];
        double py = dim >= 2 ? p.proj[1] : 0.0;
        if (first) {
            lo_x = hi_x = px;
            lo_y = hi_y = py;
            first = false;
        } else {
            lo_x = std::min(lo_x, px);
            hi_x = std::max(hi_x, px);
            lo_y = std::min(lo_y, py);
            hi_y = std::max(hi_y, py);
        }
    }
    auto widen = [](double& lo, double& hi) {
        double span = hi - lo;
        if (span < 1e-12) {
            double mid = 0.5 * (lo + hi);
            lo = mid - 0.5;
            hi = mid + 0.5;
            span = 1.0;
        }
        lo -= 0.05 * span;
        hi += 0.05 * span;
    };
    widen(lo_x, hi_x);
    widen(lo_y, hi_y);
    return CanvasMap{lo_x, hi_x, lo_y, hi_y, width, height};
}

void render_svg(const PointCloud& cloud, const std::string& path) {
    CanvasMap m = fit_canvas(cloud, 1000, 1000);
    int dim = cloud.coords_per_point();
    std::string out;
    out.reserve(128 + cloud.points.size() * 64);
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
           "viewBox=\"0 0 1000 1000\">\n";
    out += "<rect width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n";
    for (const CloudPoint& p : cloud.points) {
        double px = p.proj.empty() ? 0.0 : p.proj[0];
        double py = dim >= 2 ? p.proj[1] : 0.0;
        const char* color = p.interior ? kHighlight : kPalette[p.letter % 10];
        out += "<circle cx=\"" + format_double(m.x(px), "%.2f") + "\" cy=\"" +
               format_double(m.y(py), "%.2f") + "\" r=\"1.2\" fill=\"" + color + "\"/>\n";
    }
    out += "</svg>\n";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw Error("failed writing '" + path + "'");
}

void render_ppm(const PointCloud& cloud, const std::string& path) {
    const int W = 1000, H = 1000;
    CanvasMap m = fit_canvas(cloud, W, H);
    int dim = cloud.coords_per_point();
    std::vector<unsigned char> buf(static_cast<size_t>(3) * W * H, 255);
    auto put = [&](int x, int y, const char* hex) {
        if (x < 0 || x >= W || y < 0 || y >= H) return;
        unsigned rgb = static_cast<unsigned>(std::strtoul(hex + 1, nullptr, 16));
        size_t at = (static_cast<size_t>(y) * W + x) * 3;
        buf[at] = static_cast<unsigned char>(rgb >> 16);
        buf[at + 1] = static_cast<unsigned char>((rgb >> 8) & 0xff);
        buf[at + 2] = static_cast<unsigned char>(rgb & 0xff);
    };
    for (const CloudPoint& p : cloud.points) {
        double px = p.proj.empty() ? 0.0 : p.proj[0];
        double py = dim >= 2 ? p.proj[1] : 0.0;
        const char* color = p.interior ? kHighlight : kPalette[p.letter % 10];
        put(static_cast<int>(std::lround(m.x(px))), static_cast<int>(std::lround(m.y(py))), color);
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    std::string header = "P6\n1000 1000\n255\n";
    f.write(header.data(), static_cast<std::streamsize>(header.size()));
    f.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!f) throw Error("failed writing '" + path + "'");
}

// Spatial hash on ε-cells for near-pair counting.
struct PointGrid {
    double cell = 1;
    std::map<std::vector<long>, std::vector<int>> cells;
    const std::vector<std::vector<double>>* pts = nullptr;

    void build(const std::vector<std::vector<double>>& points, double eps) {
        cell = eps;
        pts = &points;
        for (size_t i = 0; i < points.size(); ++i)
            cells[key(points[i])].push_back(static_cast<int>(i));
    }

    std::vector<long> key(const std::vector<double>& p) const {
        std::vector<long> k(p.size());
        for (size_t i = 0; i < p.size(); ++i) k[i] = static_cast<long>(std::floor(p[i] / cell));
        return k;
    }

    // All stored indices within eps of q (Euclidean).
    void near(const std::vector<double>& q, double eps,
              const std::function<void(int)>& visit) const {
        std::vector<long> base = key(q);
        std::vector<long> k(base.size());
        scan(base, k, 0, q, eps, visit);
    }

private:
    void scan(const std::vector<long>& base, std::vector<long>& k, size_t dim,
              const std::vector<double>& q, double eps,
              const std::function<void(int)>& visit) const {
        if (dim == base.size()) {
            auto it = cells.find(k);
            if (it == cells.end()) return;
            for (int i : it->second) {
                double d2 = 0;
                const std::vector<double>& p = (*pts)[i];
                for (size_t c = 0; c < p.size(); ++c) d2 += (p[c] - q[c]) * (p[c] - q[c]);
                if (d2 < eps * eps) visit(i);
            }
            return;
        }
        for (long off = -1; off <= 1; ++off) {
            k[dim] = base[dim] + off;
            scan(base, k, dim + 1, q, eps, visit);
        }
    }
};

} // namespace

int PointCloud::coords_per_point() const {
    int n = 0;
    for (char r : embedding_real) n += r ? 1 : 2;
    return n;
}

PointCloud project_cloud(const Substitution& s, int depth, size_t max_points) {
    return build_cloud(s, depth, nullptr, max_points);
}

PointCloud project_cloud(const Substitution& s, int depth,
                         const std::vector<LabeledAutomaton>& interior_rings,
                         size_t max_points) {
    return build_cloud(s, depth, &interior_rings, max_points);
}

OverlapReport sample_disjointness(const Substitution& s, int depth, double epsilon,
                                  size_t max_points) {
    if (epsilon <= 0) throw DomainError("epsilon must be positive");
    PointCloud cloud = project_cloud(s, depth, max_points);
    int d = cloud.analyzed.size();
    PrefixAutomaton pa = prefix_automaton(cloud.analyzed);
    EmbeddingSelection sel;
    sel.indices = cloud.embedding_indices;
    sel.real.assign(cloud.embedding_real.begin(), cloud.embedding_real.end());
    std::vector<std::vector<double>> inc = letter_increments(pa.psi, sel);
    int dim = cloud.coords_per_point();

    OverlapReport rep;
    rep.depth = depth;
    rep.epsilon = epsilon;
    rep.point_count = cloud.points.size();
    rep.note =
        "sampled near-coincidence statistic on a finite depth cloud; heuristic report, "
        "not a verdict";

    std::vector<long> letter_count(d, 0);
    for (const CloudPoint& p : cloud.points) ++letter_count[p.letter];

    // Exchange images: each piece shifted by its own letter vector.
    std::vector<std::vector<double>> shifted(cloud.points.size());
    std::vector<int> letter_of(cloud.points.size());
    for (size_t i = 0; i < cloud.points.size(); ++i) {
        shifted[i] = cloud.points[i].proj;
        for (int c = 0; c < dim; ++c) shifted[i][c] += inc[cloud.points[i].letter][c];
        letter_of[i] = cloud.points[i].letter;
    }
    PointGrid grid;
    grid.build(shifted, epsilon);
    size_t close = 0;
    for (size_t i = 0; i < shifted.size(); ++i)
        grid.near(shifted[i], epsilon, [&](int j) {
            if (static_cast<size_t>(j) > i && letter_of[j] != letter_of[i]) ++close;
        });
    rep.exchange_close = close;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
            rep.exchange_pairs += static_cast<size_t>(letter_count[a]) * letter_count[b];
    rep.exchange_fraction =
        rep.exchange_pairs ? static_cast<double>(rep.exchange_close) / rep.exchange_pairs : 0;

    // Nonzero lattice translates: generators e_a − e_b.
    std::vector<std::vector<double>> original(cloud.points.size());
    for (size_t i = 0; i < cloud.points.size(); ++i) original[i] = cloud.points[i].proj;
    PointGrid ogrid;
    ogrid.build(original, epsilon);
    size_t tclose = 0, tpairs = 0;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
            std::vector<double> g(dim);
            for (int c = 0; c < dim; ++c) g[c] = inc[a][c] - inc[b][c];
            for (size_t i = 0; i < original.size(); ++i) {
                std::vector<double> q = original[i];
                for (int c = 0; c < dim; ++c) q[c] += g[c];
                ogrid.near(q, epsilon, [&](int) { ++tclose; });
            }
            tpairs += original.size() * original.size();
        }
    rep.translate_close = tclose;
    rep.translate_pairs = tpairs;
    rep.translate_fraction = tpairs ? static_cast<double>(tclose) / tpairs : 0;
    return rep;
}

ExchangeOrbit exchange_orbit(const Substitution& s_in, int steps) {
    if (steps < 0) throw DomainError("steps must be >= 0");
    ClassificationReport cls = classify(s_in);
    if (!cls.primitive) throw DomainError("substitution '" + s_in.str() + "' is not primitive");
    Substitution s = substitution_power(s_in, cls.power_for_fixed_point);
    int seed = cls.seed_letter;

    std::vector<int> word{seed};
    while (word.size() < static_cast<size_t>(steps)) {
        std::vector<int> next;
        next.reserve(word.size() * 2);
        for (int a : word) {
            for (int b : s.images[a]) {
                next.push_back(b);
                if (next.size() >= static_cast<size_t>(steps)) break;
            }
            if (next.size() >= static_cast<size_t>(steps)) break;
        }
        if (next.size() <= word.size()) {
            // non-growing expansion: the fixed point is the single repeated seed
            while (next.size() < static_cast<size_t>(steps)) next.push_back(seed);
        }
        word = std::move(next);
    }
    word.resize(steps);

    ExchangeOrbit orbit;
    orbit.analyzed = s;
    orbit.seed_letter = seed;
    orbit.letters = word;
    AbVec x(s.size(), 0);
    orbit.points.push_back(x);
    for (int a : word) {
        x[a] += 1;
        orbit.points.push_back(x);
    }
    return orbit;
}

CutProjectResult cut_and_project_word(const std::vector<double>& direction,
                                      const std::vector<double>& offset, int steps) {
    size_t d = direction.size();
    if (d == 0 || offset.size() != d) throw DomainError("direction and offset must have equal, positive dimension");
    if (steps < 0) throw DomainError("steps must be >= 0");
    long double vsum = 0;
    for (double v : direction) {
        if (!(v > 0)) throw DomainError("direction must be strictly positive componentwise");
        vsum += v;
    }

    std::vector<long double> next(d), step(d);
    for (size_t j = 0; j < d; ++j) {
        step[j] = 1.0L / direction[j];
        next[j] = (std::floor(offset[j]) + 1 - static_cast<long double>(offset[j])) / direction[j];
    }

    CutProjectResult res;
    res.word.reserve(steps);
    for (size_t j = 0; j < d; ++j)
        res.frequencies.push_back(static_cast<double>(direction[j] / vsum));
    std::vector<long> counts(d, 0);

    for (int n = 0; n < steps; ++n) {
        size_t best = 0;
        for (size_t j = 1; j < d; ++j)
            if (next[j] < next[best]) best = j;
        for (size_t j = 0; j < d; ++j) {
            if (j == best) continue;
            long double gap = next[j] - next[best];
            if (gap <= 1e-12L * std::max<long double>(1.0L, next[best]))
                throw DomainError("degenerate line: two hyperplane crossings coincide at step " +
                                  std::to_string(n));
        }
        res.word.push_back(static_cast<int>(best) + 1);
        counts[best] += 1;
        next[best] += step[best];
        for (size_t j = 0; j < d; ++j) {
            double dev = std::fabs(static_cast<double>(counts[j]) -
                                   static_cast<double>(n + 1) * res.frequencies[j]);
            res.max_discrepancy = std::max(res.max_discrepancy, dev);
        }
    }
    return res;
}

void render(const PointCloud& cloud, const std::string& out_path, ImageFormat format) {
    if (cloud.points.empty()) throw DomainError("cannot render an empty cloud");
    if (format == ImageFormat::SVG) render_svg(cloud, out_path);
    else render_ppm(cloud, out_path);
}

} // namespace pisot
