#include "pisot/automaton.hpp"

#include "pisot/errors.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace pisot {

// --- Digit / DigitAlphabet -------------------------------------------------------

Digit Digit::of_vec(AbVec v, std::string name) {
    Digit d;
    d.vec = std::move(v);
    d.name = std::move(name);
    return d;
}

Digit Digit::of_scalar(FieldElement s, std::string name) {
    Digit d;
    d.scalar = std::move(s);
    d.name = std::move(name);
    return d;
}

Digit Digit::of_pair(int a, int b, std::string name) {
    Digit d;
    d.components = {a, b};
    d.name = std::move(name);
    return d;
}

bool same_representation(const Digit& a, const Digit& b) {
    if (a.vec.has_value() != b.vec.has_value()) return false;
    if (a.vec && !(*a.vec == *b.vec)) return false;
    if (a.scalar.has_value() != b.scalar.has_value()) return false;
    if (a.scalar && !(*a.scalar == *b.scalar)) return false;
    if (a.components != b.components) return false;
    if (!a.vec && !a.scalar && a.components.empty()) return a.name == b.name;
    return true;
}

int DigitAlphabet::find(const Digit& d) const {
    for (int i = 0; i < size(); ++i)
        if (same_representation(digits[i], d)) return i;
    return -1;
}

int DigitAlphabet::add(Digit d) {
    int i = find(d);
    if (i >= 0) return i;
    digits.push_back(std::move(d));
    return size() - 1;
}

DigitAlphabet DigitAlphabet::pairs(const DigitAlphabet& A, const DigitAlphabet& B) {
    DigitAlphabet out;
    for (int i = 0; i < A.size(); ++i)
        for (int j = 0; j < B.size(); ++j) {
            Digit d = Digit::of_pair(i, j, "(" + A.digits[i].name + "," + B.digits[j].name + ")");
            if (i == A.zero_index && j == B.zero_index) out.zero_index = out.size();
            out.digits.push_back(std::move(d));
        }
    return out;
}

bool same_alphabet(const DigitAlphabet& a, const DigitAlphabet& b) {
    if (a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i)
        if (!same_representation(a.digits[i], b.digits[i])) return false;
    return true;
}

// --- LabeledAutomaton basics -----------------------------------------------------

bool LabeledAutomaton::is_final(int q) const {
    return std::binary_search(final.begin(), final.end(), q);
}

bool LabeledAutomaton::is_initial(int q) const {
    return std::binary_search(initial.begin(), initial.end(), q);
}

void LabeledAutomaton::sort_canonical() {
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
    std::sort(initial.begin(), initial.end());
    initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
    std::sort(final.begin(), final.end());
    final.erase(std::unique(final.begin(), final.end()), final.end());
}

std::vector<std::vector<std::pair<int, int>>> LabeledAutomaton::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(num_states);
    for (const Transition& t : transitions) adj[t.from].emplace_back(t.digit, t.to);
    for (auto& v : adj) std::sort(v.begin(), v.end());
    return adj;
}

namespace {

struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ULL;
        for (int x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 1099511628211ULL;
        }
        return h;
    }
};

// BFS renumbering from the initial states, scanning successors in
// (digit, target) order; unreachable states are dropped. Language-preserving
// and canonical given the transition structure.
LabeledAutomaton bfs_renumber(const LabeledAutomaton& a) {
    auto adj = a.adjacency();
    std::vector<int> id(a.num_states, -1);
    std::deque<int> queue;
    int next = 0;
    for (int q : a.initial)
        if (id[q] < 0) {
            id[q] = next++;
            queue.push_back(q);
        }
    std::vector<int> order;
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        order.push_back(q);
        for (auto [d, to] : adj[q])
            if (id[to] < 0) {
                id[to] = next++;
                queue.push_back(to);
            }
    }
    LabeledAutomaton out;
    out.alphabet = a.alphabet;
    out.num_states = next;
    out.deterministic = a.deterministic;
    for (const Transition& t : a.transitions)
        if (id[t.from] >= 0 && id[t.to] >= 0)
            out.transitions.push_back({id[t.from], t.digit, id[t.to]});
    for (int q : a.initial) out.initial.push_back(id[q]);
    for (int q : a.final)
        if (id[q] >= 0) out.final.push_back(id[q]);
    out.sort_canonical();
    return out;
}

} // namespace

// --- determinize -------------------------------------------------------------------

LabeledAutomaton determinize(const LabeledAutomaton& a) {
    int nd = a.alphabet.size();
    auto adj = a.adjacency();

    std::unordered_map<std::vector<int>, int, VecHash> ids;
    std::vector<std::vector<int>> subsets;
    auto intern = [&](std::vector<int> s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(subsets.size());
        ids.emplace(s, id);
        subsets.push_back(std::move(s));
        return id;
    };

    std::vector<int> start(a.initial);
    std::sort(start.begin(), start.end());
    start.erase(std::unique(start.begin(), start.end()), start.end());
    intern(start);

    LabeledAutomaton out;
    out.alphabet = a.alphabet;
    out.deterministic = true;
    out.initial = {0};

    for (size_t cur = 0; cur < subsets.size(); ++cur) {
        // successors per digit (subsets indexed by value; copy to avoid
        // invalidation as `subsets` grows)
        std::vector<int> members = subsets[cur];
        std::vector<std::vector<int>> succ(nd);
        for (int q : members)
            for (auto [d, to] : adj[q]) succ[d].push_back(to);
        bool fin = false;
        for (int q : members)
            if (a.is_final(q)) fin = true;
        if (fin) out.final.push_back(static_cast<int>(cur));
        for (int d = 0; d < nd; ++d) {
            std::vector<int>& s = succ[d];
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            int to = intern(std::move(s));
            out.transitions.push_back({static_cast<int>(cur), d, to});
        }
    }
    out.num_states = static_cast<int>(subsets.size());
    out.sort_canonical();
    return out;
}

// --- minimize (Hopcroft) -------------------------------------------------------------

namespace {

// Partition refinement on a complete DFA; returns the block id of each state.
std::vector<int> hopcroft_blocks(int n, int nd, const std::vector<int>& delta,
                                 const std::vector<char>& fin) {
    // inverse transitions, CSR per digit
    std::vector<std::vector<int>> inv_off(nd, std::vector<int>(n + 1, 0));
    std::vector<std::vector<int>> inv_dat(nd, std::vector<int>(n));
    for (int d = 0; d < nd; ++d) {
        auto& off = inv_off[d];
        for (int q = 0; q < n; ++q) off[delta[q * nd + d] + 1]++;
        for (int i = 0; i < n; ++i) off[i + 1] += off[i];
        std::vector<int> w = off;
        for (int q = 0; q < n; ++q) inv_dat[d][w[delta[q * nd + d]]++] = q;
    }

    // partition: states grouped contiguously in `elems`
    std::vector<int> elems(n), loc(n), blk(n), bfirst, blen;
    std::vector<int> marked; // per block: count of marked elements
    {
        int nf = 0;
        for (int q = 0; q < n; ++q)
            if (fin[q]) ++nf;
        int i0 = 0, i1 = nf; // finals first
        for (int q = 0; q < n; ++q) {
            int pos = fin[q] ? i0++ : i1++;
            elems[pos] = q;
            loc[q] = pos;
        }
        if (nf > 0) {
            bfirst.push_back(0);
            blen.push_back(nf);
        }
        if (nf < n) {
            bfirst.push_back(nf);
            blen.push_back(n - nf);
        }
        for (int b = 0; b < static_cast<int>(bfirst.size()); ++b)
            for (int i = bfirst[b]; i < bfirst[b] + blen[b]; ++i) blk[elems[i]] = b;
        marked.assign(bfirst.size(), 0);
    }

    std::vector<int> worklist;
    std::vector<char> in_work(bfirst.size(), 0);
    // seed with the smaller of the two starting blocks (or the only one)
    if (bfirst.size() == 2) {
        int w = (blen[0] <= blen[1]) ? 0 : 1;
        worklist.push_back(w);
        in_work[w] = 1;
    } else if (bfirst.size() == 1) {
        worklist.push_back(0);
        in_work[0] = 1;
    }

    std::vector<int> touched;
    while (!worklist.empty()) {
        int A = worklist.back();
        worklist.pop_back();
        in_work[A] = 0;
        // copy splitter members (refinement may reorder inside blocks)
        std::vector<int> splitter(elems.begin() + bfirst[A], elems.begin() + bfirst[A] + blen[A]);
        for (int d = 0; d < nd; ++d) {
            touched.clear();
            for (int t : splitter) {
                const auto& off = inv_off[d];
                const auto& dat = inv_dat[d];
                for (int i = off[t]; i < off[t + 1]; ++i) {
                    int q = dat[i];
                    int b = blk[q];
                    if (marked[b] == 0) touched.push_back(b);
                    int mpos = bfirst[b] + marked[b];
                    int qpos = loc[q];
                    if (qpos >= mpos) { // not yet marked
                        std::swap(elems[mpos], elems[qpos]);
                        loc[elems[mpos]] = mpos;
                        loc[elems[qpos]] = qpos;
                        marked[b]++;
                    }
                }
            }
            for (int b : touched) {
                if (marked[b] == blen[b]) {
                    marked[b] = 0;
                    continue; // whole block hit: no split
                }
                // split off the marked prefix as a new block
                int nb = static_cast<int>(bfirst.size());
                int m = marked[b];
                bfirst.push_back(bfirst[b]);
                blen.push_back(m);
                bfirst[b] += m;
                blen[b] -= m;
                marked[b] = 0;
                marked.push_back(0);
                in_work.push_back(0);
                for (int i = bfirst[nb]; i < bfirst[nb] + blen[nb]; ++i) blk[elems[i]] = nb;
                if (in_work[b]) {
                    worklist.push_back(nb);
                    in_work[nb] = 1;
                } else {
                    int smaller = (blen[nb] <= blen[b]) ? nb : b;
                    worklist.push_back(smaller);
                    in_work[smaller] = 1;
                }
            }
        }
    }
    return blk;
}

} // namespace

LabeledAutomaton minimize(const LabeledAutomaton& a) {
    LabeledAutomaton d = a.deterministic ? a : determinize(a);
    int n = d.num_states, nd = d.alphabet.size();
    if (n == 0) return determinize(d); // normalize the degenerate case
    // dense delta; an incomplete transition table routes back through
    // determinize, which completes with a sink
    std::vector<int> delta(static_cast<size_t>(n) * nd, -1);
    bool complete = d.initial.size() == 1;
    for (const Transition& t : d.transitions) delta[static_cast<size_t>(t.from) * nd + t.digit] = t.to;
    for (size_t i = 0; complete && i < delta.size(); ++i)
        if (delta[i] < 0) complete = false;
    if (!complete) {
        d = determinize(d);
        n = d.num_states;
        delta.assign(static_cast<size_t>(n) * nd, -1);
        for (const Transition& t : d.transitions)
            delta[static_cast<size_t>(t.from) * nd + t.digit] = t.to;
    }
    std::vector<char> fin(n, 0);
    for (int q : d.final) fin[q] = 1;

    std::vector<int> blk = hopcroft_blocks(n, nd, delta, fin);
    int nb = *std::max_element(blk.begin(), blk.end()) + 1;

    LabeledAutomaton q;
    q.alphabet = d.alphabet;
    q.num_states = nb;
    q.deterministic = true;
    q.initial = {blk[d.initial[0]]};
    std::vector<char> qfin(nb, 0), seen(nb, 0);
    for (int s = 0; s < n; ++s) {
        if (fin[s]) qfin[blk[s]] = 1;
        if (seen[blk[s]]) continue;
        seen[blk[s]] = 1;
        for (int dd = 0; dd < nd; ++dd)
            q.transitions.push_back({blk[s], dd, blk[delta[static_cast<size_t>(s) * nd + dd]]});
    }
    for (int b = 0; b < nb; ++b)
        if (qfin[b]) q.final.push_back(b);
    q.sort_canonical();
    return bfs_renumber(q);
}

// --- products ---------------------------------------------------------------------

LabeledAutomaton product_map(const std::vector<const LabeledAutomaton*>& parts,
                             const DigitAlphabet& out_alpha,
                             const std::function<std::optional<int>(const std::vector<int>&)>& combine) {
    size_t m = parts.size();
    std::vector<std::vector<std::vector<std::pair<int, int>>>> adj;
    for (auto* p : parts) adj.push_back(p->adjacency());

    std::unordered_map<std::vector<int>, int, VecHash> ids;
    std::vector<std::vector<int>> tuples;
    auto intern = [&](std::vector<int> t) {
        auto it = ids.find(t);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(tuples.size());
        ids.emplace(t, id);
        tuples.push_back(std::move(t));
        return id;
    };

    LabeledAutomaton out;
    out.alphabet = out_alpha;
    out.deterministic = false;

    // initial tuples: cartesian product of initial sets
    {
        std::vector<int> idx(m, 0);
        for (;;) {
            std::vector<int> t(m);
            bool valid = true;
            for (size_t i = 0; i < m; ++i) {
                if (parts[i]->initial.empty()) { valid = false; break; }
                t[i] = parts[i]->initial[idx[i]];
            }
            if (!valid) break;
            out.initial.push_back(intern(std::move(t)));
            size_t pos = 0;
            while (pos < m && ++idx[pos] >= parts[pos]->initial.size()) {
                idx[pos] = 0;
                ++pos;
            }
            if (pos >= m) break;
        }
    }

    std::vector<int> dtuple(m), ttuple(m);
    for (size_t cur = 0; cur < tuples.size(); ++cur) {
        std::vector<int> tup = tuples[cur];
        // joint edges: nested scan over component out-edges
        std::function<void(size_t)> rec = [&](size_t i) {
            if (i == m) {
                std::optional<int> od = combine(dtuple);
                if (!od) return;
                int to = intern(ttuple);
                out.transitions.push_back({static_cast<int>(cur), *od, to});
                return;
            }
            for (auto [dg, to] : adj[i][tup[i]]) {
                dtuple[i] = dg;
                ttuple[i] = to;
                rec(i + 1);
            }
        };
        rec(0);
        bool fin = true;
        for (size_t i = 0; i < m; ++i)
            if (!parts[i]->is_final(tup[i])) fin = false;
        if (fin) out.final.push_back(static_cast<int>(cur));
    }
    out.num_states = static_cast<int>(tuples.size());
    out.sort_canonical();
    return out;
}

LabeledAutomaton intersect(const LabeledAutomaton& a, const LabeledAutomaton& b) {
    if (!same_alphabet(a.alphabet, b.alphabet))
        throw DomainError("intersection requires identical alphabets");
    // dedicated product join on equal digits (adjacency is (digit, to)-sorted,
    // so matching edges merge in linear time per state pair)
    auto adj_a = a.adjacency();
    auto adj_b = b.adjacency();
    std::unordered_map<std::vector<int>, int, VecHash> ids;
    std::vector<std::vector<int>> tuples;
    auto intern = [&](std::vector<int> t) {
        auto it = ids.find(t);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(tuples.size());
        ids.emplace(t, id);
        tuples.push_back(std::move(t));
        return id;
    };
    LabeledAutomaton out;
    out.alphabet = a.alphabet;
    for (int p : a.initial)
        for (int q : b.initial) out.initial.push_back(intern({p, q}));
    for (size_t cur = 0; cur < tuples.size(); ++cur) {
        int p = tuples[cur][0], q = tuples[cur][1];
        const auto& ea = adj_a[p];
        const auto& eb = adj_b[q];
        size_t i = 0, j = 0;
        while (i < ea.size() && j < eb.size()) {
            if (ea[i].first < eb[j].first) {
                ++i;
            } else if (eb[j].first < ea[i].first) {
                ++j;
            } else {
                int d = ea[i].first;
                size_t i2 = i, j2 = j;
                while (i2 < ea.size() && ea[i2].first == d) ++i2;
                while (j2 < eb.size() && eb[j2].first == d) ++j2;
                for (size_t x = i; x < i2; ++x)
                    for (size_t y = j; y < j2; ++y) {
                        int to = intern({ea[x].second, eb[y].second});
                        out.transitions.push_back({static_cast<int>(cur), d, to});
                    }
                i = i2;
                j = j2;
            }
        }
        if (a.is_final(p) && b.is_final(q)) out.final.push_back(static_cast<int>(cur));
    }
    out.num_states = static_cast<int>(tuples.size());
    out.deterministic = a.deterministic && b.deterministic;
    out.sort_canonical();
    return out;
}

// --- simple constructions ------------------------------------------------------------

LabeledAutomaton mirror(const LabeledAutomaton& a) {
    LabeledAutomaton out;
    out.alphabet = a.alphabet;
    out.num_states = a.num_states;
    out.deterministic = false;
    for (const Transition& t : a.transitions) out.transitions.push_back({t.to, t.digit, t.from});
    out.initial = a.final;
    out.final = a.initial;
    out.sort_canonical();
    return out;
}

LabeledAutomaton map_labels(const LabeledAutomaton& a, const DigitAlphabet& out_alpha,
                            const std::vector<std::optional<int>>& digit_map) {
    if (static_cast<int>(digit_map.size()) != a.alphabet.size())
        throw DomainError("digit map must cover the input alphabet");
    LabeledAutomaton out;
    out.alphabet = out_alpha;
    out.num_states = a.num_states;
    out.deterministic = false;
    for (const Transition& t : a.transitions) {
        const std::optional<int>& d = digit_map[t.digit];
        if (!d) continue;
        if (*d < 0 || *d >= out_alpha.size()) throw DomainError("digit map target out of range");
        out.transitions.push_back({t.from, *d, t.to});
    }
    out.initial = a.initial;
    out.final = a.final;
    out.sort_canonical();
    return out;
}

LabeledAutomaton concat_zero_star(const LabeledAutomaton& a) {
    if (a.alphabet.zero_index < 0) throw DomainError("alphabet has no zero digit");
    LabeledAutomaton out = a;
    int z = out.num_states++;
    out.deterministic = false;
    out.transitions.push_back({z, a.alphabet.zero_index, z});
    for (int f : a.final) out.transitions.push_back({f, a.alphabet.zero_index, z});
    out.final.push_back(z);
    out.sort_canonical();
    return out;
}

LabeledAutomaton z_closure(const LabeledAutomaton& a) {
    if (a.alphabet.zero_index < 0) throw DomainError("alphabet has no zero digit");
    // states with a zero-digit path into the final set become final
    std::vector<std::vector<int>> back(a.num_states);
    for (const Transition& t : a.transitions)
        if (t.digit == a.alphabet.zero_index) back[t.to].push_back(t.from);
    std::vector<char> fin(a.num_states, 0);
    std::deque<int> queue;
    for (int f : a.final) {
        fin[f] = 1;
        queue.push_back(f);
    }
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int p : back[q])
            if (!fin[p]) {
                fin[p] = 1;
                queue.push_back(p);
            }
    }
    LabeledAutomaton out = a;
    out.final.clear();
    for (int q = 0; q < a.num_states; ++q)
        if (fin[q]) out.final.push_back(q);
    out.sort_canonical();
    return out;
}

LabeledAutomaton s_stabilizer(const LabeledAutomaton& a) {
    LabeledAutomaton d = a.deterministic ? a : determinize(a);
    // a state stays final iff it cannot reach any non-final state
    std::vector<std::vector<int>> back(d.num_states);
    for (const Transition& t : d.transitions) back[t.to].push_back(t.from);
    std::vector<char> bad(d.num_states, 0);
    std::deque<int> queue;
    for (int q = 0; q < d.num_states; ++q)
        if (!d.is_final(q)) {
            bad[q] = 1;
            queue.push_back(q);
        }
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int p : back[q])
            if (!bad[p]) {
                bad[p] = 1;
                queue.push_back(p);
            }
    }
    LabeledAutomaton out = d;
    out.final.clear();
    for (int q = 0; q < d.num_states; ++q)
        if (!bad[q]) out.final.push_back(q);
    out.sort_canonical();
    return out;
}

LabeledAutomaton complement(const LabeledAutomaton& a) {
    LabeledAutomaton d = a.deterministic ? a : determinize(a);
    std::vector<int> nf;
    for (int q = 0; q < d.num_states; ++q)
        if (!d.is_final(q)) nf.push_back(q);
    d.final = std::move(nf);
    return d;
}

LabeledAutomaton universal_automaton(const DigitAlphabet& alphabet) {
    LabeledAutomaton out;
    out.alphabet = alphabet;
    out.num_states = 1;
    out.initial = {0};
    out.final = {0};
    out.deterministic = true;
    for (int d = 0; d < alphabet.size(); ++d) out.transitions.push_back({0, d, 0});
    out.sort_canonical();
    return out;
}

LabeledAutomaton trim(const LabeledAutomaton& a) {
    std::vector<char> fwd(a.num_states, 0), bwd(a.num_states, 0);
    {
        std::deque<int> queue;
        for (int q : a.initial) {
            fwd[q] = 1;
            queue.push_back(q);
        }
        std::vector<std::vector<int>> succ(a.num_states);
        for (const Transition& t : a.transitions) succ[t.from].push_back(t.to);
        while (!queue.empty()) {
            int q = queue.front();
            queue.pop_front();
            for (int to : succ[q])
                if (!fwd[to]) {
                    fwd[to] = 1;
                    queue.push_back(to);
                }
        }
    }
    {
        std::deque<int> queue;
        for (int q : a.final) {
            bwd[q] = 1;
            queue.push_back(q);
        }
        std::vector<std::vector<int>> pred(a.num_states);
        for (const Transition& t : a.transitions) pred[t.to].push_back(t.from);
        while (!queue.empty()) {
            int q = queue.front();
            queue.pop_front();
            for (int p : pred[q])
                if (!bwd[p]) {
                    bwd[p] = 1;
                    queue.push_back(p);
                }
        }
    }
    std::vector<int> id(a.num_states, -1);
    int next = 0;
    for (int q = 0; q < a.num_states; ++q)
        if (fwd[q] && bwd[q]) id[q] = next++;
    LabeledAutomaton out;
    out.alphabet = a.alphabet;
    out.num_states = next;
    out.deterministic = false; // completeness may be lost
    for (const Transition& t : a.transitions)
        if (id[t.from] >= 0 && id[t.to] >= 0) out.transitions.push_back({id[t.from], t.digit, id[t.to]});
    for (int q : a.initial)
        if (id[q] >= 0) out.initial.push_back(id[q]);
    for (int q : a.final)
        if (id[q] >= 0) out.final.push_back(id[q]);
    out.sort_canonical();
    return bfs_renumber(out);
}

// --- queries ---------------------------------------------------------------------

bool is_empty(const LabeledAutomaton& a) {
    std::vector<char> seen(a.num_states, 0);
    std::deque<int> queue;
    for (int q : a.initial) {
        if (a.is_final(q)) return false;
        seen[q] = 1;
        queue.push_back(q);
    }
    std::vector<std::vector<int>> succ(a.num_states);
    for (const Transition& t : a.transitions) succ[t.from].push_back(t.to);
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int to : succ[q]) {
            if (seen[to]) continue;
            if (a.is_final(to)) return false;
            seen[to] = 1;
            queue.push_back(to);
        }
    }
    return true;
}

bool is_subset(const LabeledAutomaton& a, const LabeledAutomaton& b) {
    if (!same_alphabet(a.alphabet, b.alphabet))
        throw DomainError("subset check requires identical alphabets");
    return is_empty(intersect(a, complement(b)));
}

bool same_language(const LabeledAutomaton& a, const LabeledAutomaton& b) {
    if (!same_alphabet(a.alphabet, b.alphabet)) return false;
    LabeledAutomaton ma = minimize(a), mb = minimize(b);
    return ma.num_states == mb.num_states && ma.transitions == mb.transitions &&
           ma.initial == mb.initial && ma.final == mb.final;
}

std::vector<std::vector<int>> enumerate_words(const LabeledAutomaton& a, int max_len,
                                              size_t budget) {
    auto adj = a.adjacency();
    std::vector<std::vector<int>> out;
    // layered BFS over subset states, words in (length, lex) order
    struct Node {
        std::vector<int> states; // sorted subset
        std::vector<int> word;
    };
    std::vector<int> start(a.initial);
    std::sort(start.begin(), start.end());
    std::vector<Node> layer{{start, {}}};
    auto accepting = [&](const std::vector<int>& s) {
        for (int q : s)
            if (a.is_final(q)) return true;
        return false;
    };
    if (accepting(start)) out.push_back({});
    for (int len = 1; len <= max_len && !layer.empty(); ++len) {
        std::vector<Node> next_layer;
        for (const Node& node : layer) {
            std::vector<std::vector<int>> succ(a.alphabet.size());
            for (int q : node.states)
                for (auto [d, to] : adj[q]) succ[d].push_back(to);
            for (int d = 0; d < a.alphabet.size(); ++d) {
                std::vector<int>& s = succ[d];
                if (s.empty()) continue;
                std::sort(s.begin(), s.end());
                s.erase(std::unique(s.begin(), s.end()), s.end());
                Node nn;
                nn.states = std::move(s);
                nn.word = node.word;
                nn.word.push_back(d);
                if (accepting(nn.states)) {
                    out.push_back(nn.word);
                    if (out.size() > budget) throw BudgetError("word enumeration exceeded budget");
                }
                next_layer.push_back(std::move(nn));
                if (next_layer.size() > budget)
                    throw BudgetError("word enumeration frontier exceeded budget");
            }
        }
        layer = std::move(next_layer);
    }
    return out;
}

std::optional<std::vector<int>> shortest_witness(const LabeledAutomaton& a) {
    // BFS over states; in an NFA any initial→final path spells an accepted word
    std::vector<int> pred_state(a.num_states, -1), pred_digit(a.num_states, -1);
    std::vector<char> seen(a.num_states, 0);
    std::deque<int> queue;
    for (int q : a.initial) {
        seen[q] = 1;
        queue.push_back(q);
    }
    auto adj = a.adjacency();
    int hit = -1;
    for (int q : a.initial)
        if (a.is_final(q)) hit = q;
    while (hit < 0 && !queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (auto [d, to] : adj[q]) {
            if (seen[to]) continue;
            seen[to] = 1;
            pred_state[to] = q;
            pred_digit[to] = d;
            if (a.is_final(to)) {
                hit = to;
                break;
            }
            queue.push_back(to);
        }
    }
    if (hit < 0) return std::nullopt;
    std::vector<int> word;
    for (int q = hit; pred_state[q] >= 0; q = pred_state[q]) word.push_back(pred_digit[q]);
    std::reverse(word.begin(), word.end());
    return word;
}

bool accepts(const LabeledAutomaton& a, const std::vector<int>& word) {
    auto adj = a.adjacency();
    std::vector<int> cur(a.initial);
    std::sort(cur.begin(), cur.end());
    for (int d : word) {
        std::vector<int> next;
        for (int q : cur)
            for (auto [dg, to] : adj[q])
                if (dg == d) next.push_back(to);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
        if (cur.empty()) return false;
    }
    for (int q : cur)
        if (a.is_final(q)) return true;
    return false;
}

int state_count(const LabeledAutomaton& a) {
    // elide dead sinks: non-initial, non-final states whose outgoing
    // transitions (if any) all self-loop
    std::vector<char> self_only(a.num_states, 1);
    for (const Transition& t : a.transitions)
        if (t.to != t.from) self_only[t.from] = 0;
    int n = a.num_states;
    for (int q = 0; q < a.num_states; ++q)
        if (self_only[q] && !a.is_final(q) && !a.is_initial(q)) --n;
    return n;
}

std::string to_dot(const LabeledAutomaton& a) {
    std::ostringstream os;
    os << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (int q : a.final) os << "  " << q << " [shape=doublecircle];\n";
    os << "  __start [shape=point];\n";
    for (int q : a.initial) os << "  __start -> " << q << ";\n";
    for (const Transition& t : a.transitions) {
        const Digit& d = a.alphabet.digits[t.digit];
        std::string label = d.name.empty() ? std::to_string(t.digit) : d.name;
        os << "  " << t.from << " -> " << t.to << " [label=\"" << label << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace pisot
