#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "gfq/geometry.hpp"
#include "gfq/tangle.hpp"

using namespace gfq;

namespace {

RepMatroid pg(int n, int q) { return RepMatroid(pg_matrix(n, q).mat); }

}  // namespace

TEST_CASE("the T_k family of small projective planes") {
    RepMatroid m = pg(3, 2);
    SUBCASE("k = 3 lists the empty set and the singletons") {
        auto sets = t_k_sets(m, 3);
        REQUIRE(sets.size() == 8);
        CHECK(sets[0].empty());
        for (int i = 1; i <= 7; ++i) CHECK(sets[i].size() == 1);
    }
    SUBCASE("k = 1 is empty") {
        CHECK(t_k_sets(m, 1).empty());
    }
    SUBCASE("k = 4 on PG(3,2) collects the rank <= 2 sets") {
        RepMatroid m4 = pg(4, 2);
        auto sets = t_k_sets(m4, 4);
        for (const auto& s : sets) CHECK(m4.rank_of(s) <= 2);
        // 1 empty + 15 singletons + 105 pairs + 35 full lines
        CHECK(sets.size() == 156);
    }
}

TEST_CASE("tangle axioms hold for the projective families and fail for controls") {
    for (auto [n, q] : {std::pair{3, 2}, {4, 2}, {3, 3}}) {
        RepMatroid m = pg(n, q);
        Tangle t = Tangle::t_k(m, n);
        TangleCheck chk = is_tangle(t);
        CHECK(chk.ok);
    }
    SUBCASE("two coloops at order 2 violate T3") {
        const Field& f = Field::get(2, 1);
        RepMatroid m(Mat::identity(f, 2));
        Tangle t = Tangle::t_k(m, 2);
        TangleCheck chk = is_tangle(t);
        CHECK_FALSE(chk.ok);
    }
    SUBCASE("a complement pair in the family breaks consistency") {
        RepMatroid m = pg(3, 2);
        // family: all subsets with at most 3 elements -> complements overlap
        Tangle t = Tangle::from_predicate(m, 3, [&](std::uint32_t mask) {
            return __builtin_popcount(mask) <= 3;
        });
        TangleCheck chk = is_tangle(t);
        CHECK_FALSE(chk.ok);
    }
}

TEST_CASE("tangle rank of the order-3 Fano tangle") {
    RepMatroid m = pg(3, 2);
    Tangle t = Tangle::t_k(m, 3);
    CHECK(tangle_rank(t, {}) == 0);
    CHECK(tangle_rank(t, {0}) == 1);       // the singleton itself minimizes
    CHECK(tangle_rank(t, {0, 1}) == 2);    // no small set holds two points
    auto chk = tangle_matroid_check(t);
    CHECK(chk.ok);
    CHECK(chk.max_rank == 2);
}

TEST_CASE("tangle matroid check notices corrupted families") {
    RepMatroid m = pg(3, 2);
    // drop one singleton from the family: T1 fails already, and the rank
    // function need not be submodular
    Tangle t = Tangle::from_predicate(m, 3, [&](std::uint32_t mask) {
        if (mask == 1u) return false;
        int pc = __builtin_popcount(mask);
        return pc <= 1;
    });
    CHECK_FALSE(is_tangle(t).ok);
}

TEST_CASE("induced tangles validate on the contracted-plane recipe") {
    RepMatroid m = pg(4, 2);
    MinorRecipe recipe;
    recipe.con = {m.index_of("p1")};
    RepMatroid contracted = m.minor({}, recipe.con);
    std::set<std::string> keep;
    for (size_t ci = 0; ci < contracted.parallel_classes().size(); ++ci)
        keep.insert(contracted.labels()[contracted.class_representative(int(ci))]);
    for (int j = 0; j < contracted.size(); ++j)
        if (!keep.count(contracted.labels()[j]))
            recipe.del.push_back(m.index_of(contracted.labels()[j]));
    RepMatroid n = m.minor(recipe.del, recipe.con);
    REQUIRE(n.size() == 7);

    Tangle tn = Tangle::t_k(n, 3);
    REQUIRE(is_tangle(tn).ok);
    Tangle induced = Tangle::induced(m, recipe, tn);
    CHECK(induced.order() == 3);
    CHECK(is_tangle(induced).ok);

    // small sets restricted to E(N) are small there
    std::vector<int> to_minor(m.size(), -1);
    for (int j = 0; j < n.size(); ++j) to_minor[m.index_of(n.labels()[j])] = j;
    for (std::uint32_t mask = 0; mask < (1u << m.size()); ++mask) {
        if (!induced.small(mask)) continue;
        std::uint32_t trace = 0;
        for (int i = 0; i < m.size(); ++i)
            if ((mask & (1u << i)) && to_minor[i] >= 0) trace |= 1u << to_minor[i];
        CHECK(tn.small(trace));
    }
}

TEST_CASE("the identity recipe induces the same tangle") {
    RepMatroid m = pg(3, 2);
    Tangle t = Tangle::t_k(m, 3);
    Tangle same = Tangle::induced(m, MinorRecipe{}, t);
    for (std::uint32_t mask = 0; mask < (1u << m.size()); ++mask)
        CHECK(same.small(mask) == t.small(mask));
}

TEST_CASE("a wrong recipe is rejected") {
    RepMatroid m = pg(3, 2);
    Tangle t = Tangle::t_k(m, 3);
    MinorRecipe recipe;
    recipe.del = {0};
    CHECK_THROWS_AS(Tangle::induced(m, recipe, t), std::invalid_argument);
}

TEST_CASE("kappa_T is monotone and submodular with unit singletons") {
    RepMatroid m = pg(3, 2);
    Tangle t = Tangle::t_k(m, 3);
    const std::uint32_t total = 1u << 7;
    std::vector<int> kt(total);
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        std::vector<int> x;
        for (int e = 0; e < 7; ++e)
            if (mask & (1u << e)) x.push_back(e);
        kt[mask] = tangle_rank(t, x);
    }
    for (std::uint32_t x = 0; x < total; ++x) {
        CHECK(kt[x] <= 2);
        for (int e = 0; e < 7; ++e) {
            if (x & (1u << e)) continue;
            int d = kt[x | (1u << e)] - kt[x];
            CHECK(d >= 0);
            CHECK(d <= 1);
        }
        for (std::uint32_t y = x; y < total; ++y)
            CHECK(kt[x | y] + kt[x & y] <= kt[x] + kt[y]);
    }
    for (int e = 0; e < 7; ++e) CHECK(kt[1u << e] <= 1);
}
