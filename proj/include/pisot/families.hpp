#pragma once

#include "pisot/interior.hpp"

namespace pisot {

// a -> a^k b c, b -> c, c -> a  (k >= 0). Characteristic polynomial
// X^3 - k X^2 - X - 1; primitive, irreducible, Pisot, and unit for all k >= 0.
Substitution sk_substitution(int k);

// a -> a^l b a^(k-l), b -> c, c -> a  (k >= 1, 0 <= l <= k). The incidence
// matrix does not depend on l; characteristic polynomial X^3 - k X^2 - 1.
// slk_substitution(k, k) is the beta-substitution a -> a^k b, b -> c, c -> a.
Substitution slk_substitution(int l, int k);

// One named group of certified inequalities inside a disk certificate.
struct DiskCheck {
    std::string name;
    bool passed = false;
    // Certified lower bound of min(lhs - rhs) over the group, in distance
    // units; positive iff the whole group holds.
    double margin = 0;
    // Number of individual certified comparisons in the group.
    std::size_t comparisons = 0;
};

// Certificate that the target point t_k = k/2 - (sqrt(k)/2) i lies outside
// every disk of radius 1/(1 - 1/sqrt(k)) centered at the points that cover
// the other letters' projected lines and every lattice-translated copy of
// all three lines. Finitely many disks (the untranslated b- and c-centers
// and every center translated by t_{c,d} with 0 < max(|c|,|d|) <= window)
// are excluded by exact enclosure arithmetic; the infinitely many remaining
// translates are excluded by evaluated closed-form tail bounds, one per
// lattice zone. A true verdict certifies that the letter-a line's projection
// closure contains a disk around t_k, hence has nonempty interior.
struct DiskCertificate {
    int k = 0;
    int window = 3;     // finite translate range checked: |c|, |d| <= window
    int embedding = -1; // index of the contracting complex embedding used (Im < 0)
    ComplexBox target;  // certified enclosure of t_k
    double radius = 0;  // upper bound of the covering radius 1/(1 - 1/sqrt(k))
    std::vector<FieldElement> centers_a, centers_b, centers_c;
    Prec precision = 0; // bits at which every comparison became decisive
    std::vector<DiskCheck> checks;
    bool verdict = false; // conjunction of all checks
};

// Runs the full certificate for sk_substitution(k). Requires k >= 3 (the
// covering-radius bound needs |beta| < 1/sqrt(k)) and window >= 2 (smaller
// windows leave translates covered by no tail bound). The tail bounds only
// reach the covering radius for large k (the radial zone from k = 126 on,
// the imaginary zone from k = 149 on), so a complete true verdict first
// appears at k = 149; below that the certificate reports which groups fail
// and the interior pipeline takes over. Throws PrecisionError if a
// comparison stays indecisive at the precision cap.
DiskCertificate verify_sk_certificate(int k, int window = 3);

// Certified enclosure check of the eigenvalue bounds used by the tail
// arguments, for the contracting complex root beta (Im < 0) of
// X^3 - k X^2 - X - 1, k >= 1:
//   1/sqrt(k + 2/k) < |beta| < 1/sqrt(k)
//   sqrt(k) - 1/sqrt(k) < |beta - 1/beta| < sqrt(k + 2/k) + 1/sqrt(k)
//   -1/k < Re(beta) < -1/(k + 2/k)
//   -1/sqrt(k) < Im(beta) < -1/sqrt(k + 2/k) + 1/k
bool eigenvalue_bounds_check(int k);

// Decides the value-set inclusion that transfers an interior point from the
// beta-substitution a -> a^k b, b -> c, c -> a to a -> a^l b a^(k-l):
// prepending two zero digits to the first language (multiplication by
// beta^2, i.e. by the squared incidence matrix on the lattice side) must
// land inside the value set of the second. Word reversal conjugates the
// l and k-l systems, so l is normalized to min(l, k-l) first; l = 0 then
// degenerates to the beta-substitution itself. After normalization
// 1 <= l <= k-2 is required (k >= 3). True means the letter-a line of the
// second substitution inherits nonempty interior from the first.
bool verify_slk_inclusion(int l, int k);

// Independent soundness check of the digit-difference zero language used by
// the inclusion argument: builds the zero language over all differences
// x - y with x in {0..k} (digits of a -> a^k b) and y in
// {0..l, beta-k+l .. beta-1} (digits of a -> a^l b a^(k-l)), enumerates
// every accepted word of length <= maxlen, and evaluates each exactly in
// Z[beta]; returns true iff every value is exactly zero. Requires
// 1 <= l <= k-2.
bool zero_language_check(int l, int k, int maxlen);

} // namespace pisot
