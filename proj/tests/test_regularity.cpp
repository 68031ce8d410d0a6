#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gfq/regularity.hpp"

using namespace gfq;

namespace {

Mat cols3(const Field& f, std::initializer_list<std::vector<code_t>> cols) {
    Mat m(f, int(cols.begin()->size()), int(cols.size()));
    int j = 0;
    for (const auto& c : cols) {
        m.set_col(j, c);
        ++j;
    }
    return m;
}

Mat with_instance_labels(Mat a, const FamilyMatrix& g) {
    Mat inst = a.cols() == 0 ? g.mat.embedded_into(a.field()) : a.hstack(g.mat.embedded_into(a.field()));
    inst.labels.clear();
    for (int j = 0; j < a.cols(); ++j) inst.labels.push_back("y" + std::to_string(j + 1));
    for (int j = 0; j < g.mat.cols(); ++j) inst.labels.push_back(g.mat.labels[j]);
    return inst;
}

}  // namespace

TEST_CASE("badness search: the three worked instances") {
    const Field& ext = Field::get(2, 2);
    const code_t w = 2;

    SUBCASE("a skew pair at ambient rank 4 is strongly bad") {
        Mat a = cols3(ext, {{1, w, 0, 0}, {0, 0, 1, w}});
        auto cert = q_badness(a, 4);
        REQUIRE(cert.has_value());
        CHECK(cert->strong);
        CHECK(cert->z == std::vector<int>{0, 1});
        CHECK(verify_badness(a, *cert));
    }
    SUBCASE("the canonical triple has no strong pair") {
        Mat a = cols3(ext, {{1, w, 0}, {0, 1, w}, {1, 0, w}});
        auto cert = q_badness(a, 3);
        REQUIRE(cert.has_value());
        CHECK_FALSE(cert->strong);
        CHECK(cert->z.size() == 3);
        // pairwise L-intersections are e2, e1, e3
        Subspace l1 = l_subspace(ext, a.col(0));
        Subspace l2 = l_subspace(ext, a.col(1));
        Subspace l3 = l_subspace(ext, a.col(2));
        CHECK(l1.intersect(l2).contains({0, 1, 0}));
        CHECK(l1.intersect(l3).contains({1, 0, 0}));
        CHECK(l2.intersect(l3).contains({0, 0, 1}));
    }
    SUBCASE("two lines through a common direction are not bad") {
        Mat a = cols3(ext, {{w, 1, 0}, {w, 0, 1}});
        CHECK_FALSE(q_badness(a, 3).has_value());
    }
    SUBCASE("ambient rank below three is rejected") {
        Mat a(ext, 2, 0);
        CHECK_THROWS_AS(q_badness(a, 2), std::invalid_argument);
    }
}

TEST_CASE("badness is invariant under subfield row transforms and column scalings") {
    const Field& ext = Field::get(2, 2);
    const Field& base = ext.base();
    std::mt19937 rng(61);
    for (int it = 0; it < 120; ++it) {
        Mat a(ext, 4, 3);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 3; ++j) a.at(i, j) = code_t(rng() % 4);
        bool bad = q_badness(a, 4).has_value();

        Mat t(base, 4, 4);
        do {
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) t.at(i, j) = code_t(rng() % 2);
        } while (!is_invertible(t));
        Mat ta = subfield_row_transform(a, t);
        CHECK(q_badness(ta, 4).has_value() == bad);

        std::vector<code_t> sc(3);
        for (auto& s : sc) s = code_t(1 + rng() % 3);
        Mat as = scale_columns(a, sc, false);
        CHECK(q_badness(as, 4).has_value() == bad);
    }
}

TEST_CASE("l_subspace naturality under invertible subfield transforms") {
    const Field& ext = Field::get(3, 2);
    const Field& base = ext.base();
    std::mt19937 rng(67);
    for (int it = 0; it < 80; ++it) {
        std::vector<code_t> v(3);
        for (auto& c : v) c = code_t(rng() % 9);
        Mat t(base, 3, 3);
        do {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) t.at(i, j) = code_t(rng() % 3);
        } while (!is_invertible(t));
        Mat col(ext, 3, 1);
        col.set_col(0, v);
        Mat tv = subfield_row_transform(col, t);
        Subspace lhs = l_subspace(ext, tv.col(0));
        // T L(v)
        Subspace l = l_subspace(ext, v);
        if (l.dim() == 0) {
            CHECK(lhs.dim() == 0);
            continue;
        }
        Mat moved = t.mul(l.basis().transpose()).transpose();
        CHECK(lhs == Subspace::span_rows(moved));
    }
}

TEST_CASE("embedding certificates for the worked hat instances") {
    const Field& ext = Field::get(2, 2);
    const code_t w = 2;
    FamilyMatrix g3 = pg_matrix(3, 2);

    SUBCASE("empty extension block") {
        Mat a(ext, 3, 0);
        EmbeddingCertificate cert = embed_certificate(a, g3.mat);
        CHECK(cert.target == FamilyKind::HAT);
        CHECK(verify_certificate(a, g3.mat, cert));
    }
    SUBCASE("a column parallel to a base vector routes into the rational part") {
        Mat a = cols3(ext, {{3, 0, 0}});  // (1+w) e1
        EmbeddingCertificate cert = embed_certificate(a, g3.mat);
        CHECK(cert.target == FamilyKind::HAT);
        CHECK(verify_certificate(a, g3.mat, cert));
    }
    SUBCASE("two lines through e1 give a hat embedding") {
        Mat a = cols3(ext, {{w, 1, 0}, {w, 0, 1}});
        EmbeddingCertificate cert = embed_certificate(a, g3.mat);
        CHECK(cert.target == FamilyKind::HAT);
        CHECK(verify_certificate(a, g3.mat, cert));
    }
    SUBCASE("a spoiled scalar fails verification") {
        Mat a = cols3(ext, {{w, 1, 0}});
        EmbeddingCertificate cert = embed_certificate(a, g3.mat);
        cert.col_scale[0] = ext.mul(cert.col_scale[0], w);
        CHECK_FALSE(verify_certificate(a, g3.mat, cert));
    }
}

TEST_CASE("the bar family decides as BAR with an identity-like certificate") {
    FamilyMatrix bar = bar_matrix(3, 2);
    std::vector<int> pg_cols;
    for (int j = int(bar.x_set.size()); j < bar.mat.cols(); ++j) pg_cols.push_back(j);
    Decision d = decide_structure(bar.mat, pg_cols);
    CHECK(d.verdict == StructureVerdict::BAR);
    REQUIRE(d.embedding.has_value());
    CHECK(d.embedding->row_transform == Mat::identity(bar.mat.field().base(), 3));
}

TEST_CASE("the canonical obstruction member decides as BAD and recovers itself") {
    FamilyMatrix obs = obstruction_member(2);
    std::vector<int> pg_cols;
    for (int j = 3; j < obs.mat.cols(); ++j) pg_cols.push_back(j);
    Decision d = decide_structure(obs.mat, pg_cols);
    CHECK(d.verdict == StructureVerdict::BAD);
    REQUIRE(d.bad.has_value());
    CHECK(d.bad->z.size() == 3);
    REQUIRE(d.recipe.has_value());
    // the plane spans everything: the recipe keeps the whole ground set
    CHECK(d.recipe->keep.size() == 10);
    CHECK(d.recipe->contract.empty());
    CHECK(verify_obstruction(d.recipe->result).has_value());
}

TEST_CASE("strong pair recipes at ambient rank 4 and the contract-pair recipe at 5") {
    const Field& ext = Field::get(2, 2);
    const code_t w = 2;
    SUBCASE("t = 4") {
        FamilyMatrix g4 = pg_matrix(4, 2);
        Mat a = cols3(ext, {{1, w, 0, 0}, {0, 0, 1, w}});
        auto cert = q_badness(a, 4);
        REQUIRE(cert.has_value());
        REQUIRE(cert->strong);
        OMinorRecipe recipe = o_minor_from_bad(a, g4.mat, *cert);
        CHECK(recipe.contract.size() == 1);
        CHECK(verify_obstruction(recipe.result).has_value());
        CHECK(recipe.result.cols() == 10);
    }
    SUBCASE("t = 5") {
        FamilyMatrix g5 = pg_matrix(5, 2);
        Mat a = cols3(ext, {{1, w, 0, 0, 0}, {0, 0, 1, w, 0}});
        auto cert = q_badness(a, 5);
        REQUIRE(cert.has_value());
        REQUIRE(cert->strong);
        OMinorRecipe recipe = o_minor_from_bad(a, g5.mat, *cert);
        CHECK(verify_obstruction(recipe.result).has_value());
        OMinorRecipe more = o_minor_contract_pair(a, g5.mat, *cert);
        CHECK(more.contract.size() == 2);
        CHECK(verify_obstruction(more.result).has_value());
        // everything kept comes from the rational block: a restriction of M / Z \ (Y - Z)
        for (int kept : more.keep) CHECK(kept >= a.cols());
    }
    SUBCASE("the contract-pair recipe needs t >= 5") {
        FamilyMatrix g4 = pg_matrix(4, 2);
        Mat a = cols3(ext, {{1, w, 0, 0}, {0, 0, 1, w}});
        auto cert = q_badness(a, 4);
        REQUIRE(cert.has_value());
        CHECK_THROWS_AS(o_minor_contract_pair(a, g4.mat, *cert), std::invalid_argument);
    }
}

TEST_CASE("decide_structure confines a transformed PG block first") {
    const Field& ext = Field::get(2, 2);
    FamilyMatrix g3 = pg_matrix(3, 2);
    Mat inst = with_instance_labels(cols3(ext, {{2, 1, 0}}), g3);
    // hit the whole instance with an invertible extension transform
    std::mt19937 rng(71);
    Mat t(ext, 3, 3);
    do {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t.at(i, j) = code_t(rng() % 4);
    } while (!is_invertible(t));
    Mat moved = t.mul(inst);
    moved.labels = inst.labels;
    std::vector<int> pg_cols;
    for (int j = 1; j < moved.cols(); ++j) pg_cols.push_back(j);
    Decision d = decide_structure(moved, pg_cols);
    CHECK(d.preprocessed);
    CHECK(d.verdict == StructureVerdict::HAT);
    CHECK(verify_certificate(d.instance_a, d.instance_g, *d.embedding));
}

TEST_CASE("decide_structure rejects a non-spanning PG block") {
    const Field& ext = Field::get(2, 2);
    FamilyMatrix g3 = pg_matrix(3, 2);
    Mat short_block = g3.mat.cols_subset({0, 1, 2});
    Mat inst = short_block.embedded_into(ext);
    std::vector<int> pg_cols = {0, 1, 2};
    CHECK_THROWS(decide_structure(inst, pg_cols));
}

TEST_CASE("trichotomy: every decision carries exactly one verified object") {
    std::mt19937 rng(73);
    const Field& ext = Field::get(2, 2);
    FamilyMatrix g3 = pg_matrix(3, 2);
    FamilyMatrix g4 = pg_matrix(4, 2);
    for (int it = 0; it < 150; ++it) {
        bool big = it % 2;
        const FamilyMatrix& g = big ? g4 : g3;
        int t = big ? 4 : 3;
        int ny = int(rng() % 4);
        Mat a(ext, t, ny);
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < ny; ++j) a.at(i, j) = code_t(rng() % 4);
        Mat inst = with_instance_labels(a, g);
        std::vector<int> pg_cols;
        for (int j = ny; j < inst.cols(); ++j) pg_cols.push_back(j);
        Decision d = decide_structure(inst, pg_cols);
        if (d.verdict == StructureVerdict::BAD) {
            CHECK(d.bad.has_value());
            CHECK(!d.embedding.has_value());
            CHECK(d.recipe.has_value());
            CHECK(verify_badness(d.instance_a, *d.bad));
            CHECK(verify_obstruction(d.recipe->result).has_value());
        } else {
            CHECK(d.embedding.has_value());
            CHECK(!d.bad.has_value());
            CHECK(verify_certificate(d.instance_a, d.instance_g, *d.embedding));
        }
    }
}
