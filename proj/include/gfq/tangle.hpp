#ifndef GFQ_TANGLE_HPP
#define GFQ_TANGLE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gfq/matroid.hpp"

namespace gfq {

struct MinorRecipe {
    std::vector<int> del, con;
};

/// A tangle of order theta on a small host matroid: a consistent choice of a
/// small side for every (theta-1)-separating set. Membership is a predicate
/// over element masks; explicit listing happens only during validation.
class Tangle {
public:
    static Tangle from_predicate(RepMatroid host, int theta,
                                 std::function<bool(std::uint32_t)> small);
    static Tangle from_list(RepMatroid host, int theta, std::vector<std::uint32_t> smalls);

    /// The family of (k-1)-separating sets that are neither spanning nor
    /// cospanning (cospanning: the complement is independent).
    static Tangle t_k(RepMatroid host, int k);

    /// The tangle induced on `host` by a tangle on the minor produced by
    /// `recipe`: sets X with lambda(X) < theta-1 whose trace on the minor is
    /// small there.
    static Tangle induced(RepMatroid host, const MinorRecipe& recipe, const Tangle& on_minor);

    const RepMatroid& host() const { return *host_; }
    int order() const { return theta_; }
    bool small(std::uint32_t mask) const { return small_(mask); }

    std::vector<std::uint32_t> materialize(std::size_t limit = 200000) const;
    int lambda_cached(std::uint32_t mask) const;

private:
    std::shared_ptr<const RepMatroid> host_;
    int theta_ = 0;
    std::function<bool(std::uint32_t)> small_;
    std::shared_ptr<std::vector<std::int8_t>> rank_table_;  // per mask
    void build_rank_table();
};

/// Canonical representatives of the T_k family: loop-free unions of parallel
/// classes. Membership of arbitrary sets goes through Tangle::small.
std::vector<std::vector<int>> t_k_sets(const RepMatroid& m, int k,
                                       const Bounds& bounds = Bounds::global());

struct TangleCheck {
    bool ok = true;
    std::string axiom;                       // "T1", "T2", "T3" when violated
    std::vector<std::uint32_t> witness;      // offending masks
};

/// Exhaustive validation of the three tangle axioms over all subsets.
TangleCheck is_tangle(const Tangle& t, const Bounds& bounds = Bounds::global());

/// theta-1 when X lies in no small set, else the minimum lambda over small
/// supersets.
int tangle_rank(const Tangle& t, const std::vector<int>& x);

struct TangleMatroidCheck {
    bool ok = true;
    std::string reason;
    int max_rank = 0;
};

/// Verifies that the tangle rank function is the rank function of a
/// rank-(theta-1) matroid: bounds, monotonicity, submodularity, exhaustively.
TangleMatroidCheck tangle_matroid_check(const Tangle& t, const Bounds& bounds = Bounds::global());

}  // namespace gfq

#endif
