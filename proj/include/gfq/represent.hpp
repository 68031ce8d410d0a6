#ifndef GFQ_REPRESENT_HPP
#define GFQ_REPRESENT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gfq/matroid.hpp"

namespace gfq {

/// Rank oracle for a small abstract matroid, backed by a represented matroid.
/// All 2^n subset ranks are tabulated at construction (n <= 12).
class RankOracle {
public:
    explicit RankOracle(const RepMatroid& m);

    int size() const { return n_; }
    int rank() const { return rank_; }
    const std::vector<std::string>& labels() const { return labels_; }
    int rank_of(std::uint32_t mask) const { return table_[mask]; }

    /// Monotonicity, unit increase and submodularity; exhaustive for n <= 10,
    /// sampled beyond.
    bool check_axioms() const;

private:
    int n_ = 0, rank_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::int8_t> table_;
};

struct SearchOptions {
    bool prune_symmetry = true;  // fix a basis and the first dependent element's scaling
    bool use_parallel = RepMatroid::parallel_default();
};

/// Backtracking search for a matrix over F whose column matroid has exactly
/// the oracle's rank function. Elements are processed most-constrained first;
/// the returned witness (columns in oracle element order) is the first one in
/// that deterministic order and has been checked against every subset rank.
/// An empty result is an exhaustive NONE.
std::optional<Mat> find_representation(const RankOracle& m, const Field& f,
                                       const SearchOptions& opt = SearchOptions{});

struct ProfileEntry {
    const Field* field = nullptr;
    bool representable = false;
    std::optional<Mat> witness;
};

std::vector<ProfileEntry> representability_profile(const RankOracle& m,
                                                   const std::vector<const Field*>& fields,
                                                   const SearchOptions& opt = SearchOptions{});

}  // namespace gfq

#endif
