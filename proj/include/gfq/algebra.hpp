#ifndef GFQ_ALGEBRA_HPP
#define GFQ_ALGEBRA_HPP

#include <optional>
#include <utility>
#include <vector>

#include "gfq/linalg.hpp"
#include "gfq/matroid.hpp"

namespace gfq {

/// Utilities for a fixed tower GF(q) < GF(q)(omega).
struct TowerContext {
    const Field* ext = nullptr;

    explicit TowerContext(const Field& e) : ext(&e) {
        if (!e.is_quadratic_extension()) throw std::invalid_argument("not a quadratic extension");
    }
    const Field& base() const { return ext->base(); }
    code_t omega() const { return code_t(base().size()); }  // encodes (0, 1)
    /// A + omega*B for base-field matrices of equal shape.
    Mat combine(const Mat& a, const Mat& b) const;
    /// Entry-wise (u, v) parts of an extension matrix.
    std::pair<Mat, Mat> split(const Mat& w) const;
};

/// Span over GF(q) of the two decomposition components of an extension
/// vector; dimension 2 exactly when w is not parallel to a base-field vector.
Subspace l_subspace(const Field& ext, const std::vector<code_t>& w);

struct ConfineResult {
    Mat row_transform;            // over the extension field
    std::vector<code_t> col_scale;
    Mat confined;                 // over GF(q)
};

/// Map a PG(n-1,q) representation over a field with a GF(q)-subfield onto a
/// GF(q)-matrix: the frame through the lexicographically first column basis
/// and the first fully-supported column is sent to the standard frame, then
/// every entry is checked to land in the subfield.
ConfineResult confine_pg(const Mat& a, int n, int q);

/// A nonzero vector of U n V for an h-dimensional V over the base field and a
/// j-dimensional U over the extension with 2j > h and U inside span_F(V).
/// Found through coordinates in a basis of V and a base-field intersection.
std::vector<code_t> subfield_vector_in_span(const Subspace& v_base, const Subspace& u_ext);

/// Rank-h matrix Q over the extension with Q(A + omega B) valued in the base
/// field, built as (omega - t) Q1 + Q2 from an h-dimensional left kernel
/// (Q1 | Q2) of the stacked (A; B). Requires rank(A + omega B) = d and
/// rank(A; B) = 2d - h.
Mat realify_rows(const Mat& a, const Mat& b, int h, const Field& ext);

/// Row-equivalent replacement (A', B') of the top block of ((A + omega B); P)
/// such that B' has at least h zero rows, placed first. Reduces modulo the
/// row space of P and reuses the realify construction.
std::pair<Mat, Mat> zero_rows_normalize(const Mat& a, const Mat& b, const Mat& p, int h,
                                        const Field& ext);

}  // namespace gfq

#endif
