#include "gfq/tangle.hpp"

#include <algorithm>

namespace gfq {

namespace {

int popcount(std::uint32_t x) { return __builtin_popcount(x); }

std::vector<int> mask_to_vec(std::uint32_t mask, int n) {
    std::vector<int> v;
    for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) v.push_back(i);
    return v;
}

}  // namespace

void Tangle::build_rank_table() {
    const RepMatroid& m = *host_;
    const int n = m.size();
    if (n > 20) throw SizeBoundError("tangle host too large for exhaustive mask tables");
    auto table = std::make_shared<std::vector<std::int8_t>>(std::size_t(1) << n, 0);
    for (std::uint32_t mask = 1; mask < table->size(); ++mask)
        (*table)[mask] = std::int8_t(m.rank_of(mask_to_vec(mask, n)));
    rank_table_ = std::move(table);
}

int Tangle::lambda_cached(std::uint32_t mask) const {
    const std::uint32_t full = (std::uint32_t(1) << host_->size()) - 1;
    return (*rank_table_)[mask] + (*rank_table_)[full & ~mask] - host_->rank();
}

Tangle Tangle::from_predicate(RepMatroid host, int theta, std::function<bool(std::uint32_t)> small) {
    Tangle t;
    t.host_ = std::make_shared<RepMatroid>(std::move(host));
    t.theta_ = theta;
    t.small_ = std::move(small);
    t.build_rank_table();
    return t;
}

Tangle Tangle::from_list(RepMatroid host, int theta, std::vector<std::uint32_t> smalls) {
    std::sort(smalls.begin(), smalls.end());
    auto set = std::make_shared<std::vector<std::uint32_t>>(std::move(smalls));
    return from_predicate(std::move(host), theta, [set](std::uint32_t m) {
        return std::binary_search(set->begin(), set->end(), m);
    });
}

Tangle Tangle::t_k(RepMatroid host, int k) {
    Tangle t;
    t.host_ = std::make_shared<RepMatroid>(std::move(host));
    t.theta_ = k;
    t.build_rank_table();
    auto table = t.rank_table_;
    auto hostp = t.host_;
    const int n = hostp->size();
    const int r = hostp->rank();
    const std::uint32_t full = (std::uint32_t(1) << n) - 1;
    t.small_ = [table, hostp, k, r, full, n](std::uint32_t mask) {
        std::uint32_t co = full & ~mask;
        int rx = (*table)[mask];
        int rco = (*table)[co];
        if (rx + rco - r >= k - 1) return false;  // not (k-1)-separating
        if (rx == r) return false;                // spanning
        if (rco == popcount(co)) return false;    // cospanning: complement independent
        return true;
    };
    return t;
}

Tangle Tangle::induced(RepMatroid host, const MinorRecipe& recipe, const Tangle& on_minor) {
    Tangle t;
    t.host_ = std::make_shared<RepMatroid>(std::move(host));
    t.theta_ = on_minor.order();
    t.build_rank_table();

    RepMatroid n = t.host_->minor(recipe.del, recipe.con);
    // sanity: the recipe must reproduce the minor the inner tangle lives on
    if (n.labels() != on_minor.host().labels() || !(n.mat() == on_minor.host().mat()))
        throw std::invalid_argument("recipe does not produce the tangle's host minor");

    // host element -> minor element (or -1)
    std::vector<int> to_minor(t.host_->size(), -1);
    for (int j = 0; j < n.size(); ++j) to_minor[t.host_->index_of(n.labels()[j])] = j;

    auto table = t.rank_table_;
    auto hostp = t.host_;
    const int theta = t.theta_;
    const int hn = hostp->size();
    const int hr = hostp->rank();
    const std::uint32_t full = (std::uint32_t(1) << hn) - 1;
    auto inner = on_minor;  // copies the predicate and its tables
    t.small_ = [table, hostp, theta, hn, hr, full, to_minor, inner](std::uint32_t mask) {
        int lam = (*table)[mask] + (*table)[full & ~mask] - hr;
        if (lam >= theta - 1) return false;
        std::uint32_t trace = 0;
        for (int i = 0; i < hn; ++i)
            if ((mask & (1u << i)) && to_minor[i] >= 0) trace |= 1u << to_minor[i];
        return inner.small(trace);
    };
    return t;
}

std::vector<std::uint32_t> Tangle::materialize(std::size_t limit) const {
    const int n = host_->size();
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask)
        if (small_(mask)) {
            out.push_back(mask);
            if (out.size() > limit) throw SizeBoundError("tangle family too large to materialize");
        }
    return out;
}

std::vector<std::vector<int>> t_k_sets(const RepMatroid& m, int k, const Bounds& bounds) {
    if (m.size() > std::min(bounds.max_classes, 20))
        throw SizeBoundError("ground set too large for the tangle family scan");
    Tangle t = Tangle::t_k(m, k);
    const auto& classes = m.parallel_classes();
    const int c = int(classes.size());
    std::vector<std::vector<int>> out;
    for (std::uint32_t cm = 0; cm < (std::uint32_t(1) << c); ++cm) {
        std::uint32_t mask = 0;
        for (int ci = 0; ci < c; ++ci)
            if (cm & (1u << ci))
                for (int e : classes[ci]) mask |= 1u << e;
        if (t.small(mask)) out.push_back(mask_to_vec(mask, m.size()));
    }
    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

TangleCheck is_tangle(const Tangle& t, const Bounds& bounds) {
    const RepMatroid& m = t.host();
    const int n = m.size();
    if (n > std::min(bounds.max_classes, 20)) throw SizeBoundError("host too large for tangle validation");
    const std::uint32_t total = std::uint32_t(1) << n;
    const std::uint32_t full = total - 1;
    const int theta = t.order();

    std::vector<std::uint32_t> smalls;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        bool sm = t.small(mask);
        int lam = t.lambda_cached(mask);
        if (sm && lam >= theta - 1) return {false, "T1", {mask}};
        if (!sm && lam < theta - 1 && !t.small(full & ~mask)) return {false, "T1", {mask}};
        if (sm) smalls.push_back(mask);
    }
    for (int e = 0; e < n; ++e)
        if (t.small(full & ~(1u << e))) return {false, "T3", {full & ~(1u << e)}};
    if (smalls.size() > 20000) throw SizeBoundError("tangle family too large for the cover check");
    int max_small = 0;
    for (std::uint32_t s : smalls) max_small = std::max(max_small, popcount(s));
    for (size_t i = 0; i < smalls.size(); ++i) {
        for (size_t j = i; j < smalls.size(); ++j) {
            std::uint32_t ij = smalls[i] | smalls[j];
            if (popcount(ij) + max_small < n) continue;  // no third set can finish the cover
            for (size_t k = j; k < smalls.size(); ++k)
                if ((ij | smalls[k]) == full) return {false, "T2", {smalls[i], smalls[j], smalls[k]}};
        }
    }
    return {};
}

int tangle_rank(const Tangle& t, const std::vector<int>& x) {
    const int n = t.host().size();
    if (n > 20) throw SizeBoundError("host too large for tangle rank");
    std::uint32_t xm = 0;
    for (int e : x) {
        if (e < 0 || e >= n) throw std::invalid_argument("element out of range");
        xm |= 1u << e;
    }
    const std::uint32_t total = std::uint32_t(1) << n;
    int best = t.order() - 1;
    bool found = false;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if ((mask & xm) != xm) continue;
        if (!t.small(mask)) continue;
        found = true;
        best = std::min(best, t.lambda_cached(mask));
    }
    return found ? best : t.order() - 1;
}

TangleMatroidCheck tangle_matroid_check(const Tangle& t, const Bounds& bounds) {
    const RepMatroid& m = t.host();
    const int n = m.size();
    if (n > std::min(bounds.max_classes, 14))
        throw SizeBoundError("host too large for the exhaustive rank-axiom check");
    const std::uint32_t total = std::uint32_t(1) << n;

    // kappa table by a sweep over small sets
    std::vector<std::int8_t> kappa(total, std::int8_t(t.order() - 1));
    std::vector<char> covered(total, 0);
    for (std::uint32_t s = 0; s < total; ++s) {
        if (!t.small(s)) continue;
        int lam = t.lambda_cached(s);
        // all subsets of s see this small superset
        std::uint32_t sub = s;
        for (;;) {
            if (!covered[sub]) {
                covered[sub] = 1;
                kappa[sub] = std::int8_t(lam);
            } else if (lam < kappa[sub]) {
                kappa[sub] = std::int8_t(lam);
            }
            if (sub == 0) break;
            sub = (sub - 1) & s;
        }
    }

    TangleMatroidCheck res;
    res.max_rank = kappa[total - 1];
    if (kappa[0] != 0) return {false, "rank of the empty set is nonzero", res.max_rank};
    for (std::uint32_t x = 0; x < total; ++x) {
        if (kappa[x] < 0 || kappa[x] > t.order() - 1)
            return {false, "rank out of bounds", res.max_rank};
        for (int e = 0; e < n; ++e) {
            if (x & (1u << e)) continue;
            int d = kappa[x | (1u << e)] - kappa[x];
            if (d < 0 || d > 1) return {false, "unit-increase violated", res.max_rank};
        }
    }
    for (std::uint32_t x = 0; x < total; ++x)
        for (std::uint32_t y = x; y < total; ++y)
            if (kappa[x | y] + kappa[x & y] > kappa[x] + kappa[y])
                return {false, "submodularity violated", res.max_rank};
    if (res.max_rank != t.order() - 1) return {false, "full rank differs from theta - 1", res.max_rank};
    return res;
}

}  // namespace gfq
