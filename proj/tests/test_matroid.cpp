#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "gfq/geometry.hpp"
#include "gfq/matroid.hpp"

using namespace gfq;

namespace {

RepMatroid pg(int n, int q) { return RepMatroid(pg_matrix(n, q).mat); }

Mat random_mat(std::mt19937& rng, const Field& f, int rows, int cols) {
    Mat m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = code_t(rng() % f.size());
    return m;
}

std::vector<int> all_cols(const RepMatroid& m) {
    std::vector<int> v(m.size());
    for (int j = 0; j < m.size(); ++j) v[j] = j;
    return v;
}

}  // namespace

TEST_CASE("rank and closure on the Fano plane") {
    RepMatroid m = pg(3, 2);
    CHECK(m.rank() == 3);
    CHECK(m.rank_of({}) == 0);
    // any two distinct points close to the 3-point line through them
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) CHECK(m.closure({i, j}).size() == 3);
    CHECK(m.rank_of(all_cols(m)) == 3);
}

TEST_CASE("minors: contraction pivots and keep_loops semantics") {
    RepMatroid m = pg(3, 2);
    SUBCASE("trivial minor") {
        RepMatroid same = m.minor({}, {});
        CHECK(same.mat() == m.mat());
    }
    SUBCASE("contracting a point of the Fano plane leaves epsilon 3") {
        RepMatroid c = m.minor({}, {0});
        CHECK(c.rank() == 2);
        CHECK(c.epsilon() == 3);
    }
    SUBCASE("keep_loops preserves the ground set and deletion commutes") {
        RepMatroid big = pg(4, 2);
        std::mt19937 rng(3);
        for (int it = 0; it < 10; ++it) {
            int e = int(rng() % big.size());
            RepMatroid kept = big.minor({}, {e}, /*keep_loops=*/true);
            CHECK(kept.size() == big.size());
            CHECK(kept.is_loop(e));
            RepMatroid dropped = kept.minor({e}, {});
            RepMatroid direct = big.minor({}, {e});
            REQUIRE(dropped.size() == direct.size());
            // identical rank functions over sampled subsets
            for (int trial = 0; trial < 40; ++trial) {
                std::vector<int> sub;
                for (int j = 0; j < dropped.size(); ++j)
                    if (rng() % 2) sub.push_back(j);
                CHECK(dropped.rank_of(sub) == direct.rank_of(sub));
            }
        }
    }
}

TEST_CASE("simplification keeps least labels and counts classes") {
    const Field& f = Field::get(2, 1);
    Mat m(f, 2, 4);
    // two parallel columns, one loop, one independent
    m.at(0, 0) = 1;
    m.at(0, 1) = 1;
    m.at(1, 3) = 1;
    m.labels = {"b", "a", "loop", "z"};
    RepMatroid r(m);
    CHECK(r.epsilon() == 2);
    RepMatroid s = r.simplify();
    REQUIRE(s.size() == 2);
    // the lexicographically least label of the class survives
    CHECK(s.labels()[0] == "a");
    CHECK(s.labels()[1] == "z");
    CHECK(r.loops() == std::vector<int>{2});
    // epsilon of a matrix with a repeated column equals the deduplicated count
    RepMatroid dedup(m.cols_subset({1, 2, 3}));
    CHECK(dedup.epsilon() == r.epsilon());
}

TEST_CASE("lambda values and symmetry") {
    RepMatroid m = pg(3, 2);
    CHECK(m.lambda({}) == 0);
    CHECK(m.lambda({0}) == 1);  // point + spanning complement
    RepMatroid m4 = pg(4, 2);
    // a line of PG(3,2): lambda = 2
    std::vector<int> line = m4.closure({0, 1});
    REQUIRE(line.size() == 3);
    CHECK(m4.lambda(line) == 2);
    // symmetry and loop-invariance over random subsets
    std::mt19937 rng(5);
    for (int it = 0; it < 30; ++it) {
        std::vector<int> x;
        for (int j = 0; j < m4.size(); ++j)
            if (rng() % 2) x.push_back(j);
        std::vector<int> co;
        for (int j = 0; j < m4.size(); ++j)
            if (std::find(x.begin(), x.end(), j) == x.end()) co.push_back(j);
        CHECK(m4.lambda(x) == m4.lambda(co));
    }
}

TEST_CASE("rank function is monotone and submodular on small ground sets") {
    std::mt19937 rng(9);
    for (int it = 0; it < 6; ++it) {
        const Field& f = it % 2 ? Field::get(2, 2) : Field::get(3, 1);
        Mat mm = random_mat(rng, f, 3, 8);
        RepMatroid m(mm);
        const std::uint32_t total = 1u << 8;
        std::vector<int> rk(total);
        for (std::uint32_t mask = 0; mask < total; ++mask) {
            std::vector<int> sub;
            for (int j = 0; j < 8; ++j)
                if (mask & (1u << j)) sub.push_back(j);
            rk[mask] = m.rank_of(sub);
        }
        for (std::uint32_t x = 0; x < total; ++x) {
            for (int e = 0; e < 8; ++e) {
                if (x & (1u << e)) continue;
                int d = rk[x | (1u << e)] - rk[x];
                REQUIRE(d >= 0);
                REQUIRE(d <= 1);
            }
            for (std::uint32_t y = x; y < total; ++y)
                if (rk[x | y] + rk[x & y] > rk[x] + rk[y]) FAIL("submodularity violated");
        }
    }
}

TEST_CASE("vertical connectivity: positive and negative families") {
    SUBCASE("projective planes are round, hence vertically k-connected") {
        RepMatroid m = pg(3, 2);
        for (int k = 1; k <= 5; ++k) CHECK(m.vertically_k_connected(k).connected);
    }
    SUBCASE("direct sum of two lines has a vertical 2-separation") {
        const Field& f = Field::get(2, 1);
        Mat m(f, 4, 6);
        // two disjoint three-point lines in complementary coordinates
        m.at(0, 0) = 1;
        m.at(1, 1) = 1;
        m.at(0, 2) = 1;
        m.at(1, 2) = 1;
        m.at(2, 3) = 1;
        m.at(3, 4) = 1;
        m.at(2, 5) = 1;
        m.at(3, 5) = 1;
        RepMatroid r(m);
        auto res = r.vertically_k_connected(2);
        CHECK_FALSE(res.connected);
        REQUIRE(!res.witness.empty());
        CHECK(r.lambda(res.witness) < res.witness_order);
    }
    SUBCASE("two planes sharing a point give a vertical 3-separation") {
        const Field& f = Field::get(2, 1);
        // {e1, e2, e3, e2+e3} u {e4, e1+e2+e4, e3+e4}
        Mat m(f, 4, 7);
        auto set = [&](int j, std::initializer_list<int> rows) {
            for (int i : rows) m.at(i, j) = 1;
        };
        set(0, {0});
        set(1, {1});
        set(2, {2});
        set(3, {1, 2});
        set(4, {3});
        set(5, {0, 1, 3});
        set(6, {2, 3});
        RepMatroid r(m);
        REQUIRE(r.rank() == 4);
        CHECK(r.lambda({0, 1, 2, 3}) == 2);
        CHECK(r.rank_of({0, 1, 2, 3}) == 3);
        CHECK(r.rank_of({4, 5, 6}) == 3);
        auto res = r.vertically_k_connected(3);
        CHECK_FALSE(res.connected);
    }
    SUBCASE("a matroid and its simplification agree") {
        std::mt19937 rng(31);
        for (int it = 0; it < 8; ++it) {
            Mat mm = random_mat(rng, Field::get(2, 1), 3, 7);
            RepMatroid m(mm);
            RepMatroid s = m.simplify();
            for (int k = 1; k <= 4; ++k)
                CHECK(m.vertically_k_connected(k).connected == s.vertically_k_connected(k).connected);
        }
    }
}

TEST_CASE("roundness: positives and the two-point negative") {
    CHECK(pg(3, 2).is_round().round);
    CHECK(pg(4, 2).is_round().round);
    CHECK(RepMatroid(ag_matrix(2, 3).mat).is_round().round);

    // two points in rank 2: each point is a hyperplane, together they cover
    const Field& f = Field::get(2, 1);
    Mat m(f, 2, 2);
    m.at(0, 0) = 1;
    m.at(1, 1) = 1;
    RepMatroid u22(m);
    auto res = u22.is_round();
    CHECK_FALSE(res.round);
    CHECK(res.hyperplane1.size() == 1);
    CHECK(res.hyperplane2.size() == 1);
}

TEST_CASE("kappa: bounds, brute force agreement, and the disjoint-line pair") {
    RepMatroid m = pg(4, 2);
    std::vector<int> a = m.closure({m.index_of("p1"), m.index_of("p2")});
    // a line disjoint from A
    std::vector<int> b;
    for (int j = 0; j < m.size() && b.empty(); ++j) {
        if (std::find(a.begin(), a.end(), j) != a.end()) continue;
        for (int k = j + 1; k < m.size() && b.empty(); ++k) {
            if (std::find(a.begin(), a.end(), k) != a.end()) continue;
            std::vector<int> line = m.closure({j, k});
            bool disjoint = true;
            for (int e : line) disjoint &= std::find(a.begin(), a.end(), e) == a.end();
            if (disjoint && line.size() == 3) b = line;
        }
    }
    REQUIRE(b.size() == 3);
    int kab = m.kappa(a, b);
    CHECK(kab == 2);  // two disjoint lines of PG(3,2)
    CHECK(kab == m.kappa_bruteforce(a, b));
    CHECK(kab <= std::min(m.rank_of(a), m.rank_of(b)));

    // kappa = lambda(A) when E = A u B
    std::vector<int> rest;
    for (int j = 0; j < m.size(); ++j)
        if (std::find(a.begin(), a.end(), j) == a.end()) rest.push_back(j);
    CHECK(m.kappa(a, rest) == m.lambda(a));
}

TEST_CASE("linking minor keeps both restrictions and realizes kappa") {
    std::mt19937 rng(37);
    for (int it = 0; it < 25; ++it) {
        const Field& f = it % 2 ? Field::get(2, 2) : Field::get(3, 1);
        Mat mm = random_mat(rng, f, 3, 8);
        RepMatroid m(mm);
        std::vector<int> perm(8);
        for (int j = 0; j < 8; ++j) perm[j] = j;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<int> a(perm.begin(), perm.begin() + 2);
        std::vector<int> b(perm.begin() + 2, perm.begin() + 4);
        int target = m.kappa(a, b);
        RepMatroid n = m.linking_minor(a, b);
        CHECK(n.size() == 4);
        std::vector<int> a_in_n;
        for (int j : a) a_in_n.push_back(n.index_of(m.labels()[j]));
        CHECK(n.lambda(a_in_n) == target);
        // E = A u B forces N = M restricted appropriately
        for (std::uint32_t mask = 0; mask < 4; ++mask) {
            std::vector<int> sub_m, sub_n;
            for (int i = 0; i < 2; ++i)
                if (mask & (1u << i)) {
                    sub_m.push_back(a[i]);
                    sub_n.push_back(a_in_n[i]);
                }
            CHECK(m.rank_of(sub_m) == n.rank_of(sub_n));
        }
    }
}

TEST_CASE("cyclic flats of small standards") {
    SUBCASE("three points on a line") {
        const Field& f = Field::get(2, 1);
        Mat m(f, 2, 3);
        m.at(0, 0) = 1;
        m.at(1, 1) = 1;
        m.at(0, 2) = 1;
        m.at(1, 2) = 1;
        auto flats = RepMatroid(m).cyclic_flats();
        REQUIRE(flats.size() == 2);
        CHECK(flats[0].empty());
        CHECK(flats[1] == std::vector<int>{0, 1, 2});
    }
    SUBCASE("the Fano plane has the empty set, 7 lines and itself") {
        auto flats = pg(3, 2).cyclic_flats();
        CHECK(flats.size() == 9);
        int lines = 0;
        for (const auto& fl : flats) lines += fl.size() == 3;
        CHECK(lines == 7);
    }
}

TEST_CASE("projective geometry recognition") {
    CHECK(pg(3, 2).is_pg(3, 2));
    CHECK_FALSE(RepMatroid(pg_matrix(3, 2).mat.cols_subset({0, 1, 2, 3, 4, 5})).is_pg(3, 2));
    // a hat family over GF(4) is not PG(2,4): too few points
    FamilyMatrix hat = hat_matrix(3, 2);
    CHECK_FALSE(RepMatroid(hat.mat).is_pg(3, 4));
    CHECK_THROWS_AS(RepMatroid(hat.mat).is_pg(3, 2), std::invalid_argument);
    // embedded copy counts as confined
    const Field& ext = Field::get(2, 2);
    CHECK(RepMatroid(pg_matrix(3, 2).mat.embedded_into(ext)).is_pg(3, 2));
}

TEST_CASE("class-size bound raises a clear error") {
    RepMatroid m(pg_matrix(4, 3).mat);  // 40 classes
    CHECK_THROWS_AS(m.vertically_k_connected(3), SizeBoundError);
    Bounds wide;
    wide.max_classes = 48;
    CHECK(m.is_round(wide).round);
}

TEST_CASE("labels resolve and reject unknowns") {
    RepMatroid m = pg(3, 2);
    CHECK(m.index_of("p3") == 2);
    CHECK_THROWS_AS(m.index_of("nope"), std::invalid_argument);
    CHECK_THROWS_AS(m.rank_of({99}), std::invalid_argument);
    CHECK_THROWS_AS(m.minor({0}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(m.kappa({0}, {0}), std::invalid_argument);
}
