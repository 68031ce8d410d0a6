#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gfq/geometry.hpp"
#include "gfq/matroid.hpp"

using namespace gfq;

TEST_CASE("projective geometries: counts, order, basis vectors") {
    FamilyMatrix pg32 = pg_matrix(3, 2);
    CHECK(pg32.mat.cols() == 7);
    FamilyMatrix pg42 = pg_matrix(4, 2);
    CHECK(pg42.mat.cols() == 15);
    FamilyMatrix pg23 = pg_matrix(2, 3);
    CHECK(pg23.mat.cols() == 4);
    // pairwise non-parallel by construction
    CHECK(RepMatroid(pg23.mat).epsilon() == 4);

    // all standard basis vectors appear as columns
    const Mat& m = pg42.mat;
    for (int i = 0; i < 4; ++i) {
        bool found = false;
        for (int j = 0; j < m.cols() && !found; ++j) {
            bool is_ei = true;
            for (int r = 0; r < 4; ++r) is_ei &= m.at(r, j) == (r == i ? 1 : 0);
            found = is_ei;
        }
        CHECK(found);
    }
}

TEST_CASE("every generator verifies its own output across the desk range") {
    for (int q : {2, 3, 4}) {
        for (int n = 1; n <= 5; ++n) {
            if (pg_point_count(n, q) > 400) continue;
            CHECK_NOTHROW(pg_matrix(n, q));
        }
        for (int n = 2; n <= 5; ++n) {
            if (1 + long(q) * q * pg_point_count(n - 1, q) > 1500) continue;
            CHECK_NOTHROW(hat_matrix(n, q));
        }
        for (int n = 3; n <= 5; ++n) {
            if (q * q + pg_point_count(n, q) > 1500) continue;
            CHECK_NOTHROW(bar_matrix(n, q));
        }
    }
    for (int q : {2, 3})
        for (int h = 1; h <= 3; ++h) CHECK_NOTHROW(ag_matrix(h, q));
}

TEST_CASE("affine geometry has no three collinear points at q = 2") {
    FamilyMatrix ag = ag_matrix(2, 2);
    RepMatroid m(ag.mat);
    CHECK(m.rank() == 3);
    CHECK(ag.mat.cols() == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k) CHECK(m.rank_of({i, j, k}) == 3);
}

TEST_CASE("ag(2,3) has nine points of rank 3") {
    FamilyMatrix ag = ag_matrix(2, 3);
    CHECK(ag.mat.cols() == 9);
    CHECK(RepMatroid(ag.mat).rank() == 3);
}

TEST_CASE("hat family structure") {
    FamilyMatrix hat = hat_matrix(3, 2);
    CHECK(hat.mat.cols() == 13);  // rational base point + 4 blocks of 3
    CHECK(hat.base_col == 0);
    RepMatroid m(hat.mat);
    CHECK(m.rank() == 3);
    CHECK(m.epsilon() == 13);
    // the base column is the only rational-tail-free point
    for (int i = 1; i < 3; ++i) CHECK(hat.mat.at(i, hat.base_col) == 0);
}

TEST_CASE("bar family structure") {
    FamilyMatrix bar = bar_matrix(3, 2);
    CHECK(bar.mat.cols() == 11);  // 4 + 7
    CHECK(int(bar.x_set.size()) == 4);
    RepMatroid m(bar.mat);
    CHECK(m.rank() == 3);
    // the added line through x_L0 and f carries q^2 + 1 = 5 points
    std::vector<int> line = m.closure({bar.x_l0, bar.f_col});
    CHECK(line.size() == 5);
    // PG block restricted is a full projective plane
    std::vector<int> pg_cols;
    for (int j = 4; j < bar.mat.cols(); ++j) pg_cols.push_back(j);
    CHECK(RepMatroid(bar.mat.cols_subset(pg_cols)).is_pg(3, 2));
}

TEST_CASE("canonical obstruction member") {
    FamilyMatrix obs = obstruction_member(2);
    const Field& ext = obs.mat.field();
    CHECK(obs.mat.cols() == 10);  // 3 + 7
    CHECK(RepMatroid(obs.mat).rank() == 3);

    Mat a = obs.mat.cols_subset(obs.x_set);
    CHECK(rank_of(a) == 3);
    // L-subspaces are span{e1,e2}, span{e2,e3}, span{e1,e3}
    Subspace l1 = l_subspace(ext, a.col(0));
    Subspace l2 = l_subspace(ext, a.col(1));
    Subspace l3 = l_subspace(ext, a.col(2));
    CHECK(l1.contains({1, 0, 0}));
    CHECK(l1.contains({0, 1, 0}));
    CHECK(l2.contains({0, 1, 0}));
    CHECK(l2.contains({0, 0, 1}));
    CHECK(l3.contains({1, 0, 0}));
    CHECK(l3.contains({0, 0, 1}));
    CHECK(l1.intersect(l2).intersect(l3).dim() == 0);
}

TEST_CASE("a rank-deficient triple is rejected by the obstruction verifier") {
    const Field& ext = Field::get(2, 2);
    const code_t w = 2;
    // columns (1,w,0), (0,1,w), (w,0,1): det = 1 + w^3 = 0 over GF(4)
    Mat a(ext, 3, 3);
    a.at(0, 0) = 1;
    a.at(1, 0) = w;
    a.at(1, 1) = 1;
    a.at(2, 1) = w;
    a.at(0, 2) = w;
    a.at(2, 2) = 1;
    CHECK(rank_of(a) == 2);
    FamilyMatrix g3 = pg_matrix(3, 2);
    FamilyMatrix fake;
    fake.kind = FamilyKind::OBSTRUCTION;
    fake.n = 3;
    fake.q = 2;
    fake.mat = a.hstack(g3.mat.embedded_into(ext));
    fake.x_set = {0, 1, 2};
    CHECK_THROWS_AS(verify_family(fake), VerificationError);
}

TEST_CASE("enumerated obstruction members all verify at q = 2") {
    auto all = obstruction_enumerate(2);
    CHECK(all.size() > 0);
    const Field& ext = Field::get(2, 2);
    FamilyMatrix g3 = pg_matrix(3, 2);
    int step = std::max<int>(1, int(all.size()) / 60);
    for (size_t i = 0; i < all.size(); i += step) {
        const Mat& a = all[i];
        CHECK(rank_of(a) == 3);
        FamilyMatrix fm;
        fm.kind = FamilyKind::OBSTRUCTION;
        fm.n = 3;
        fm.q = 2;
        fm.mat = a.hstack(g3.mat.embedded_into(ext));
        fm.x_set = {0, 1, 2};
        CHECK_NOTHROW(verify_family(fm));
    }
}

TEST_CASE("structural obstruction verifier accepts members and rejects spoilers") {
    FamilyMatrix obs = obstruction_member(2);
    auto witness = verify_obstruction(obs.mat);
    REQUIRE(witness.has_value());
    CHECK(witness->x_cols.size() == 3);

    // swap an extension column for another PG point: no longer a member
    Mat spoiled = obs.mat;
    for (int i = 0; i < 3; ++i) spoiled.at(i, 0) = obs.mat.at(i, 4);
    spoiled.labels.clear();
    RepMatroid sm(spoiled);
    if (sm.epsilon() != spoiled.cols())
        CHECK_FALSE(verify_obstruction(spoiled).has_value());
}

TEST_CASE("the abstract route to the hat family agrees with the display") {
    Mat abstract = hat_abstract_route(3, 2);
    FamilyMatrix hat = hat_matrix(3, 2);
    REQUIRE(abstract.cols() == hat.mat.cols());
    CHECK(projectively_equivalent_unordered(abstract, hat.mat).has_value());
}

TEST_CASE("field_for_order factors prime powers") {
    CHECK(field_for_order(2).size() == 2);
    CHECK(field_for_order(9).size() == 9);
    CHECK(field_for_order(8).size() == 8);
    CHECK_THROWS_AS(field_for_order(6), std::invalid_argument);
    CHECK_THROWS_AS(field_for_order(12), std::invalid_argument);
}
