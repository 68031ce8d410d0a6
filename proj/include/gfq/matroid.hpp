#ifndef GFQ_MATROID_HPP
#define GFQ_MATROID_HPP

#include <optional>
#include <string>
#include <vector>

#include "gfq/linalg.hpp"

namespace gfq {

/// A represented matroid M(A): field, matrix, labeled ground set. Immutable;
/// minors and simplifications return new values.
class RepMatroid {
public:
    explicit RepMatroid(Mat m);

    const Mat& mat() const { return mat_; }
    const Field& field() const { return mat_.field(); }
    int size() const { return mat_.cols(); }
    int rank() const { return rank_; }
    const std::vector<std::string>& labels() const { return mat_.labels; }
    int index_of(const std::string& label) const;
    std::vector<int> indices_of(const std::vector<std::string>& labels) const;

    int rank_of(const std::vector<int>& cols) const;
    std::vector<int> closure(const std::vector<int>& cols) const;
    int lambda(const std::vector<int>& cols) const;

    bool is_loop(int j) const;
    std::vector<int> loops() const;
    /// Nonloop parallel classes; each class sorted by index, classes ordered
    /// by smallest member index. The representative of a class is the member
    /// with the lexicographically least label.
    const std::vector<std::vector<int>>& parallel_classes() const;
    int class_representative(int class_idx) const;

    /// Standard minor semantics. Contraction pivots on a maximal independent
    /// subset of `contract` (column order) and drops those rows. With
    /// keep_loops the contracted columns stay in the ground set as loops.
    RepMatroid minor(const std::vector<int>& del, const std::vector<int>& con,
                     bool keep_loops = false) const;
    RepMatroid restriction(const std::vector<int>& keep) const;

    /// Removes loops and all but the least-labeled member of each parallel class.
    RepMatroid simplify() const;
    int epsilon() const;

    struct VerticalResult {
        bool connected = true;
        std::vector<int> witness;  // a vertically k'-separating set when not connected
        int witness_order = 0;     // the k' realized
    };
    VerticalResult vertically_k_connected(int k, const Bounds& bounds = Bounds::global(),
                                          bool use_parallel = parallel_default()) const;

    struct RoundResult {
        bool round = true;
        std::vector<int> hyperplane1, hyperplane2;  // covering pair when not round
    };
    RoundResult is_round(const Bounds& bounds = Bounds::global()) const;

    int kappa(const std::vector<int>& a, const std::vector<int>& b,
              const Bounds& bounds = Bounds::global(),
              bool use_parallel = parallel_default()) const;
    /// Test-facing oracle: the same minimum computed definitionally over all
    /// element subsets A <= Z <= E-B, no class quotient.
    int kappa_bruteforce(const std::vector<int>& a, const std::vector<int>& b) const;

    /// A minor N with E(N) = A u B, N|A = M|A, N|B = M|B and
    /// lambda_N(A) = kappa_M(A,B), built greedily, deletion preferred.
    RepMatroid linking_minor(const std::vector<int>& a, const std::vector<int>& b,
                             const Bounds& bounds = Bounds::global()) const;

    /// All flats whose restriction has no coloops, sorted index vectors.
    std::vector<std::vector<int>> cyclic_flats(const Bounds& bounds = Bounds::global()) const;

    /// Simple-after-simplification projective geometry test by rank and point
    /// count. The matrix must be over GF(q) or subfield-confined in GF(q^2).
    bool is_pg(int n, int q) const;

    static bool parallel_default();

private:
    Mat mat_;
    int rank_ = 0;
    mutable std::vector<std::vector<int>> classes_;  // lazy
    void ensure_classes() const;
};

/// Number of projective points (q^n - 1)/(q - 1).
long pg_point_count(int n, int q);

}  // namespace gfq

#endif
