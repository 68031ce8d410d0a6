#ifndef GFQ_LINALG_HPP
#define GFQ_LINALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "gfq/field.hpp"

namespace gfq {

/// Dense matrix over a Field, row-major codes, optional column labels.
class Mat {
public:
    Mat() = default;
    Mat(const Field& f, int rows, int cols)
        : f_(&f), rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols), 0) {}

    const Field& field() const { return *f_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    code_t& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    code_t at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    std::vector<std::string> labels;  // empty or size cols()

    static Mat identity(const Field& f, int n);
    static Mat from_rows(const Field& f, const std::vector<std::vector<code_t>>& rows);

    std::vector<code_t> col(int j) const;
    std::vector<code_t> row(int i) const;
    void set_col(int j, const std::vector<code_t>& v);

    Mat mul(const Mat& other) const;
    Mat transpose() const;
    Mat cols_subset(const std::vector<int>& idx) const;   // keeps labels
    Mat rows_subset(const std::vector<int>& idx) const;
    Mat hstack(const Mat& right) const;
    Mat vstack(const Mat& below) const;

    /// Lift a matrix over the base field of `ext` entry-wise into `ext`.
    Mat embedded_into(const Field& ext) const;
    /// Project a subfield-valued matrix back onto the base field; throws if
    /// any entry has a nonzero omega-component.
    Mat confined_to_base() const;

    bool operator==(const Mat& o) const {
        return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    const Field* f_ = nullptr;
    int rows_ = 0, cols_ = 0;
    std::vector<code_t> a_;
};

struct RrefResult {
    Mat mat;
    std::vector<int> pivots;
    int rank = 0;
};

/// Canonical reduced row echelon form; pivots are always the leftmost
/// nonzero columns, rows scaled to leading 1.
RrefResult rref(const Mat& m);

int rank_of(const Mat& m);

/// Incremental rank accumulator: push columns one at a time, pop in LIFO
/// order. Rows are kept in echelon (not fully reduced) form.
class EchelonAccum {
public:
    EchelonAccum(const Field& f, int rows) : f_(&f), rows_(rows) {}
    /// Returns 1 if the column increased the rank, else 0.
    int push(const std::vector<code_t>& col);
    int push(const Mat& m, int j);
    void pop();  // undoes the most recent push
    int rank() const { return int(basis_.size()); }
    bool contains(const std::vector<code_t>& v) const;

private:
    std::vector<code_t> reduce(std::vector<code_t> v) const;
    const Field* f_;
    int rows_;
    std::vector<std::vector<code_t>> basis_;  // echelon rows, pivot index stored
    std::vector<int> pivot_;
    std::vector<int> gains_;  // per push: 0/1
};

/// Subspace of F^n as a canonical RREF basis (rows independent).
class Subspace {
public:
    Subspace() = default;
    static Subspace span_rows(const Mat& rows);
    static Subspace zero(const Field& f, int ambient);

    int ambient() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const Mat& basis() const { return basis_; }
    const Field& field() const { return basis_.field(); }

    bool contains(const std::vector<code_t>& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

    Subspace intersect(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;

private:
    int ambient_ = 0;
    Mat basis_;
};

/// Right kernel of m as a subspace of F^cols.
Subspace kernel(const Mat& m);
/// Rows spanning the left kernel, canonical RREF, possibly 0 rows.
Mat left_kernel(const Mat& m);

/// Solve M x = b; returns one solution or nullopt.
std::optional<std::vector<code_t>> solve(const Mat& m, const std::vector<code_t>& b);

/// embed(T) * M for a square invertible T over the base field of M's
/// quadratic-extension field. The (u,v)-decomposition of each column
/// transforms componentwise.
Mat subfield_row_transform(const Mat& m, const Mat& t_base);

/// Column-wise scaling by nonzero field elements; with subfield_only the
/// scalars must lie in the base subfield.
Mat scale_columns(const Mat& m, const std::vector<code_t>& scalars, bool subfield_only);

struct ProjEquivWitness {
    Mat row_transform;             // T over the matrix field (subfield-valued if requested)
    std::vector<code_t> col_scale; // diagonal D
};

/// Decide T * A * D = B by normalizing a column basis of A and backtracking
/// over the residual basis-column scalings. Returns the lexicographically
/// first witness. Desk scale: rows <= 6, |F| <= 16.
std::optional<ProjEquivWitness> projectively_equivalent(const Mat& a, const Mat& b,
                                                        bool subfield_only,
                                                        const Bounds& bounds = Bounds::global());
std::optional<ProjEquivWitness> projectively_equivalent(const Mat& a, const Mat& b,
                                                        bool subfield_only, const Bounds& bounds,
                                                        bool use_parallel);

struct UnorderedProjEquivWitness {
    Mat row_transform;
    std::vector<code_t> col_scale;
    std::vector<int> col_perm;  // image column j of A corresponds to col_perm[j] of B
};

/// Projective equivalence allowing a column permutation, decided through a
/// canonical form over (row transform x column scaling x column order).
/// Requires full row rank and simple columns; desk scale, rank <= 4.
std::optional<UnorderedProjEquivWitness> projectively_equivalent_unordered(const Mat& a, const Mat& b);

/// Canonical form string used by projectively_equivalent_unordered.
std::string projective_canonical_form(const Mat& m);

bool is_invertible(const Mat& m);
Mat inverse(const Mat& m);

/// Normalize a nonzero vector so its first nonzero entry is 1. Returns the
/// scalar that was applied.
code_t normalize_vector(const Field& f, std::vector<code_t>& v);

bool vectors_parallel(const Field& f, const std::vector<code_t>& a, const std::vector<code_t>& b);

}  // namespace gfq

#endif
