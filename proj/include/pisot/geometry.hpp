#pragma once

#include "pisot/interior.hpp"

#include <string>
#include <vector>

namespace pisot {

// One projected prefix position of the unfolded word.
struct CloudPoint {
    std::vector<double> proj; // contracting-embedding coordinates (see PointCloud)
    int letter = 0;           // letter at this position (piece membership)
    bool interior = false;    // digit word accepted by the supplied interior language
};

// Float sample of a discrete-line projection: one point per prefix position
// of s_eff^depth(seed), where s_eff is the least power of the substitution
// with a fixed point. Coordinates concatenate, per contracting embedding in
// index order (complex conjugate pairs deduplicated to their Im < 0
// representative), one value for a real embedding and (Re, Im) for a complex
// one.
struct PointCloud {
    Substitution analyzed; // s_eff: the power actually unfolded
    int seed_letter = 0;
    int depth = 0;
    bool has_interior_flags = false;
    std::vector<int> embedding_indices; // selected contracting embeddings
    std::vector<char> embedding_real;   // parallel: 1 = real root (one coordinate)
    std::vector<double> bounds;         // parallel: certified modulus bound per embedding
    std::vector<CloudPoint> points;     // in word-position order

    int coords_per_point() const;
};

// Unfolds the fixed-point prefix to `depth` applications of s_eff and maps
// every prefix abelianization through the contracting embeddings of ψ.
// Requires primitive + irreducible + Pisot. Every projected point is
// guaranteed within `bounds` of the origin per embedding (geometric series
// over certified digit enclosures). Throws BudgetError when the unfolded
// word exceeds max_points positions.
PointCloud project_cloud(const Substitution& s, int depth, size_t max_points = 2000000);

// Same cloud with interior flags: interior_rings[b] is a DFA over an
// extended digit alphabet (scalar ψ-values covering Σ of s_eff) accepting
// least-significant-digit-first expansions whose value is an interior point,
// as produced by interior_language_full(s_eff, b, Σ').l_ring.
PointCloud project_cloud(const Substitution& s, int depth,
                         const std::vector<LabeledAutomaton>& interior_rings,
                         size_t max_points = 2000000);

// Sampled near-coincidence statistics for the two disjointness hypotheses of
// the torus-conjugacy theorem. Never a verdict: a heuristic report only.
struct OverlapReport {
    int depth = 0;
    double epsilon = 0;
    size_t point_count = 0;
    // Pairs of points from distinct letter pieces, each piece shifted by its
    // own letter vector (the one-step exchange images).
    size_t exchange_pairs = 0;
    size_t exchange_close = 0;
    double exchange_fraction = 0;
    // Pairs of points compared across nonzero lattice translates generated
    // by the letter-difference vectors.
    size_t translate_pairs = 0;
    size_t translate_close = 0;
    double translate_fraction = 0;
    std::string note; // fixed heuristic disclaimer
};

OverlapReport sample_disjointness(const Substitution& s, int depth, double epsilon,
                                  size_t max_points = 2000000);

// Orbit of 0 under the domain exchange E: x ↦ x + e_a for the piece a
// containing x, with membership resolved by position lookup in the fixed
// point; satisfies E^n(0) = Ab(u_1…u_n) exactly.
struct ExchangeOrbit {
    Substitution analyzed; // the power with a fixed point
    int seed_letter = 0;
    std::vector<int> letters; // u_1..u_n: the piece used at each step
    std::vector<AbVec> points; // E^0(0) .. E^n(0): n+1 entries
};

// Requires s primitive (and a well-defined fixed point of some power).
ExchangeOrbit exchange_orbit(const Substitution& s, int steps);

// Cutting word of the line c + t·v through the unit-hypercube grid: the
// sequence of coordinate hyperplanes crossed, as letters 1..d. Requires v
// strictly positive; throws DomainError when two crossings coincide within
// working tolerance (degenerate line).
struct CutProjectResult {
    std::vector<int> word;           // letters in {1..d}
    std::vector<double> frequencies; // target letter frequencies v_j / Σv
    // max over prefixes m and letters j of |count_j(m) − m·v_j/Σv|
    double max_discrepancy = 0;
};

CutProjectResult cut_and_project_word(const std::vector<double>& direction,
                                      const std::vector<double>& offset, int steps);

enum class ImageFormat { SVG, PPM };

// Writes the first two projection coordinates to a 1000×1000 canvas with a
// 5% margin: SVG (one circle per point) or binary PPM (one pixel per point).
// One color per letter; interior-flagged points drawn in a highlight color.
// Output bytes are deterministic for a fixed cloud and format.
void render(const PointCloud& cloud, const std::string& out_path, ImageFormat format);

} // namespace pisot
