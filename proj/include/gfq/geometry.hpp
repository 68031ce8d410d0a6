#ifndef GFQ_GEOMETRY_HPP
#define GFQ_GEOMETRY_HPP

#include <optional>
#include <vector>

#include "gfq/algebra.hpp"
#include "gfq/matroid.hpp"

namespace gfq {

enum class FamilyKind { PG, AG, HAT, BAR, OBSTRUCTION };

/// A generated family matrix with its distinguished columns. Every generator
/// runs its structural verifier before returning.
struct FamilyMatrix {
    FamilyKind kind = FamilyKind::PG;
    int n = 0;  // rank (PG/HAT/BAR) or h (AG)
    int q = 0;
    Mat mat;
    std::vector<int> x_set;  // BAR: the line points X; OBSTRUCTION: the triple
    int x_l0 = -1;           // BAR only
    int f_col = -1;          // BAR only
    int base_col = -1;       // HAT: the rational base point
};

/// GF(q) for a prime power q.
const Field& field_for_order(int q);

/// PG(n-1,q): one normalized column (first nonzero entry 1) per projective
/// point, in lexicographic order; contains every standard basis vector.
FamilyMatrix pg_matrix(int n, int q, const Bounds& bounds = Bounds::global());

/// AG(h,q): the q^h columns of PG(h,q)'s rank-(h+1) matrix with first
/// coordinate 1.
FamilyMatrix ag_matrix(int h, int q, const Bounds& bounds = Bounds::global());

/// The rank-n hat family over GF(q^2): the rational base point b1 followed by
/// one column ((s + t*omega), a) per (s,t) in GF(q)^2 and projective point a
/// of PG(n-2,q). Every vector whose entries below the first row lie in GF(q)
/// is parallel to a column.
FamilyMatrix hat_matrix(int n, int q, const Bounds& bounds = Bounds::global());

/// The rank-n bar family over GF(q^2): the q^2 points
/// {e1 + omega e2} u {alpha (e1 + omega e2) + e3} on one line, followed by a
/// full PG(n-1,q) block; f is the block column equal to e3.
FamilyMatrix bar_matrix(int n, int q, const Bounds& bounds = Bounds::global());

/// Canonical obstruction member M(A | G3): for q = 2 the fixed triple
/// (1,w,0), (0,1,w), (1,0,w); otherwise the enumerator's first hit.
FamilyMatrix obstruction_member(int q, const Bounds& bounds = Bounds::global());

/// All 3x3 extension matrices A (columns normalized, i.e. up to column
/// scaling) of rank 3 whose three L-subspaces have dimension 2 and trivial
/// common intersection. q in {2, 3}.
std::vector<Mat> obstruction_enumerate(int q, const Bounds& bounds = Bounds::global());

/// Kind-specific structural verifier; throws VerificationError on failure.
void verify_family(const FamilyMatrix& fm);

struct ObstructionWitness {
    std::vector<int> x_cols;  // the three extension columns
    Mat row_transform;        // confinement transform for the plane block
};

/// Structural membership test for the rank-3 obstruction class: searches a
/// 3-column split whose complement confines to a PG(2,q) block and whose own
/// L-subspaces are 2-dimensional with trivial intersection.
std::optional<ObstructionWitness> verify_obstruction(const Mat& w);

/// The hat family built abstractly: append a point on the line {b1, b2} of an
/// embedded PG(n,q), contract it, simplify. Used as a cross-check against
/// hat_matrix.
Mat hat_abstract_route(int n, int q);

}  // namespace gfq

#endif
