#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "gfq/linalg.hpp"

using namespace gfq;

namespace {

Mat random_mat(std::mt19937& rng, const Field& f, int rows, int cols) {
    Mat m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = code_t(rng() % f.size());
    return m;
}

}  // namespace

TEST_CASE("rref fixes identity and zero matrices") {
    const Field& f = Field::get(2, 1);
    Mat id = Mat::identity(f, 4);
    RrefResult r = rref(id);
    CHECK(r.mat == id);
    CHECK(r.rank == 4);

    Mat z(f, 3, 5);
    RrefResult rz = rref(z);
    CHECK(rz.mat == z);
    CHECK(rz.rank == 0);
}

TEST_CASE("rank drops on a scaled row over GF(4)") {
    const Field& f = Field::get(2, 2);
    const code_t w = 2;  // omega
    Mat m(f, 2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = w;
    m.at(1, 0) = w;
    m.at(1, 1) = f.mul(w, w);
    // second row is omega times the first
    CHECK(rank_of(m) == 1);
}

TEST_CASE("rref is idempotent and rank is transform-invariant") {
    std::mt19937 rng(7);
    const Field& f = Field::get(3, 1);
    for (int it = 0; it < 50; ++it) {
        Mat m = random_mat(rng, f, 3, 6);
        RrefResult r1 = rref(m);
        RrefResult r2 = rref(r1.mat);
        CHECK(r1.mat == r2.mat);
        Mat t = random_mat(rng, f, 3, 3);
        while (!is_invertible(t)) t = random_mat(rng, f, 3, 3);
        std::vector<code_t> scal(6);
        for (auto& s : scal) s = code_t(1 + rng() % (f.size() - 1));
        CHECK(rank_of(scale_columns(t.mul(m), scal, false)) == r1.rank);
    }
}

TEST_CASE("kernel satisfies rank-nullity and annihilates") {
    std::mt19937 rng(11);
    const Field& f = Field::get(2, 2);
    for (int it = 0; it < 40; ++it) {
        Mat m = random_mat(rng, f, 4, 6);
        Subspace k = kernel(m);
        CHECK(k.dim() == 6 - rank_of(m));
        for (int row = 0; row < k.dim(); ++row) {
            std::vector<code_t> x = k.basis().row(row);
            for (int i = 0; i < m.rows(); ++i) {
                code_t acc = 0;
                for (int j = 0; j < m.cols(); ++j) acc = f.add(acc, f.mul(m.at(i, j), x[j]));
                CHECK(acc == 0);
            }
        }
    }
    // [1 1] over GF(2) -> span{(1,1)}
    const Field& f2 = Field::get(2, 1);
    Mat row(f2, 1, 2);
    row.at(0, 0) = 1;
    row.at(0, 1) = 1;
    Subspace k = kernel(row);
    CHECK(k.dim() == 1);
    CHECK(k.contains({1, 1}));
}

TEST_CASE("subspace lattice identities") {
    const Field& f = Field::get(2, 1);
    Mat e12(f, 2, 3), e23(f, 2, 3);
    e12.at(0, 0) = 1;
    e12.at(1, 1) = 1;
    e23.at(0, 1) = 1;
    e23.at(1, 2) = 1;
    Subspace u = Subspace::span_rows(e12), v = Subspace::span_rows(e23);
    CHECK(u.intersect(u) == u);
    Subspace meet = u.intersect(v);
    CHECK(meet.dim() == 1);
    CHECK(meet.contains({0, 1, 0}));

    // dim(U n V) = dim U + dim V - dim(U + V) on random GF(3)^4 samples
    std::mt19937 rng(13);
    const Field& f3 = Field::get(3, 1);
    for (int it = 0; it < 60; ++it) {
        Subspace a = Subspace::span_rows(random_mat(rng, f3, 1 + int(rng() % 3), 4));
        Subspace b = Subspace::span_rows(random_mat(rng, f3, 1 + int(rng() % 3), 4));
        CHECK(a.intersect(b).dim() == a.dim() + b.dim() - a.sum(b).dim());
        CHECK(a.sum(b).contains(a));
        CHECK(a.contains(a.intersect(b)));
    }
}

TEST_CASE("solve finds solutions exactly when consistent") {
    std::mt19937 rng(17);
    const Field& f = Field::get(3, 2);
    for (int it = 0; it < 40; ++it) {
        Mat m = random_mat(rng, f, 3, 5);
        std::vector<code_t> x0(5);
        for (auto& c : x0) c = code_t(rng() % f.size());
        std::vector<code_t> b(3, 0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 5; ++j) b[i] = f.add(b[i], f.mul(m.at(i, j), x0[j]));
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        for (int i = 0; i < 3; ++i) {
            code_t acc = 0;
            for (int j = 0; j < 5; ++j) acc = f.add(acc, f.mul(m.at(i, j), (*sol)[j]));
            CHECK(acc == b[i]);
        }
    }
}

TEST_CASE("subfield row transform acts componentwise on decompositions") {
    const Field& ext = Field::get(2, 2);
    const Field& base = ext.base();
    std::mt19937 rng(19);
    for (int it = 0; it < 60; ++it) {
        Mat t(base, 3, 3);
        do {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) t.at(i, j) = code_t(rng() % 2);
        } while (!is_invertible(t));
        Mat w(ext, 3, 1);
        for (int i = 0; i < 3; ++i) w.at(i, 0) = code_t(rng() % 4);
        Mat tw = subfield_row_transform(w, t);
        for (int i = 0; i < 3; ++i) {
            code_t u = 0, v = 0;
            for (int j = 0; j < 3; ++j) {
                auto uv = ext.decompose(w.at(j, 0));
                u = base.add(u, base.mul(t.at(i, j), uv.first));
                v = base.add(v, base.mul(t.at(i, j), uv.second));
            }
            auto got = ext.decompose(tw.at(i, 0));
            CHECK(got.first == u);
            CHECK(got.second == v);
        }
    }
    Mat id = Mat::identity(base, 3);
    Mat w(ext, 3, 2);
    w.at(0, 0) = 2;
    w.at(1, 1) = 3;
    CHECK(subfield_row_transform(w, id) == w);
    CHECK_THROWS_AS(subfield_row_transform(w, Mat(base, 3, 3)), std::invalid_argument);
}

TEST_CASE("scale_columns validates scalars") {
    const Field& ext = Field::get(2, 2);
    Mat m(ext, 2, 2);
    m.at(0, 0) = 1;
    m.at(1, 1) = 2;
    CHECK_THROWS_AS(scale_columns(m, {0, 1}, false), std::invalid_argument);
    CHECK_THROWS_AS(scale_columns(m, {2, 1}, true), std::invalid_argument);  // omega escapes GF(2)
    Mat s = scale_columns(m, {1, 1}, true);
    CHECK(s == m);
}

TEST_CASE("projective equivalence returns verified witnesses") {
    const Field& f = Field::get(2, 2);
    std::mt19937 rng(23);
    Mat a = random_mat(rng, f, 3, 7);
    while (rank_of(a) != 3) a = random_mat(rng, f, 3, 7);

    SUBCASE("identity pair") {
        auto w = projectively_equivalent(a, a, false);
        REQUIRE(w.has_value());
        Mat chk = scale_columns(w->row_transform.mul(a), w->col_scale, false);
        chk.labels = a.labels;
        CHECK(chk == a);
    }
    SUBCASE("column scaling is recovered") {
        std::vector<code_t> scal(7, 1);
        scal[3] = 2;
        Mat b = scale_columns(a, scal, false);
        CHECK(projectively_equivalent(a, b, false).has_value());
    }
    SUBCASE("row transforms are recovered") {
        Mat t = random_mat(rng, f, 3, 3);
        while (!is_invertible(t)) t = random_mat(rng, f, 3, 3);
        CHECK(projectively_equivalent(a, t.mul(a), false).has_value());
    }
    SUBCASE("a structurally different matrix is rejected") {
        Mat b = a;
        for (int i = 0; i < 3; ++i) b.at(i, 0) = b.at(i, 1);
        if (rank_of(b) == 3) CHECK_FALSE(projectively_equivalent(a, b, false).has_value());
    }
    SUBCASE("size bound") {
        Mat big(Field::get(2, 1), 7, 7);
        CHECK_THROWS_AS(projectively_equivalent(big, big, false), SizeBoundError);
    }
}

TEST_CASE("subfield-only equivalence restricts the witness") {
    const Field& ext = Field::get(2, 2);
    Mat a(ext, 2, 3);
    a.at(0, 0) = 1;
    a.at(1, 1) = 1;
    a.at(0, 2) = 1;
    a.at(1, 2) = 1;
    Mat b = scale_columns(a, {1, 1, 2}, false);
    CHECK(projectively_equivalent(a, b, false).has_value());
    auto ws = projectively_equivalent(a, b, true);
    if (ws.has_value()) {
        for (code_t s : ws->col_scale) CHECK(ext.in_subfield(s));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(ext.in_subfield(ws->row_transform.at(i, j)));
    }
}

TEST_CASE("unordered equivalence finds a column matching") {
    const Field& f = Field::get(2, 2);
    std::mt19937 rng(29);
    Mat a(f, 3, 0);
    for (;;) {
        a = random_mat(rng, f, 3, 6);
        if (rank_of(a) != 3) continue;
        bool simple = true;
        for (int i = 0; i < 6 && simple; ++i) {
            auto ci = a.col(i);
            simple = !std::all_of(ci.begin(), ci.end(), [](code_t c) { return c == 0; });
            for (int j = i + 1; j < 6 && simple; ++j) simple = !vectors_parallel(f, ci, a.col(j));
        }
        if (simple) break;
    }

    Mat t = random_mat(rng, f, 3, 3);
    while (!is_invertible(t)) t = random_mat(rng, f, 3, 3);
    std::vector<code_t> scal(6);
    for (auto& s : scal) s = code_t(1 + rng() % 3);
    Mat b = scale_columns(t.mul(a), scal, false).cols_subset({3, 1, 4, 0, 5, 2});
    b.labels.clear();

    auto w = projectively_equivalent_unordered(a, b);
    REQUIRE(w.has_value());
    for (int j = 0; j < 6; ++j) {
        for (int i = 0; i < 3; ++i) {
            code_t acc = 0;
            for (int k = 0; k < 3; ++k) acc = f.add(acc, f.mul(w->row_transform.at(i, k), a.at(k, j)));
            CHECK(f.mul(acc, w->col_scale[j]) == b.at(i, w->col_perm[j]));
        }
    }

    // a non-equivalent pair: disturb one column off its parallel class
    Mat c = a;
    c.at(0, 0) = f.add(c.at(0, 0), 1);
    if (rank_of(c) == 3) {
        bool simple = true;
        for (int i = 0; i < 6 && simple; ++i)
            for (int j = i + 1; j < 6 && simple; ++j) simple = !vectors_parallel(f, c.col(i), c.col(j));
        if (simple) {
            auto maybe = projectively_equivalent_unordered(a, c);
            if (maybe) {
                // if equivalent after all, the witness must verify exactly
                for (int j = 0; j < 6; ++j) {
                    for (int i = 0; i < 3; ++i) {
                        code_t acc = 0;
                        for (int k = 0; k < 3; ++k)
                            acc = f.add(acc, f.mul(maybe->row_transform.at(i, k), a.at(k, j)));
                        CHECK(f.mul(acc, maybe->col_scale[j]) == c.at(i, maybe->col_perm[j]));
                    }
                }
            }
        }
    }
}

TEST_CASE("echelon accumulator pushes and pops in LIFO order") {
    const Field& f = Field::get(2, 1);
    EchelonAccum acc(f, 3);
    CHECK(acc.push({1, 0, 0}) == 1);
    CHECK(acc.push({1, 0, 0}) == 0);
    CHECK(acc.push({0, 1, 0}) == 1);
    CHECK(acc.rank() == 2);
    acc.pop();
    CHECK(acc.rank() == 1);
    acc.pop();  // the dependent push
    acc.pop();
    CHECK(acc.rank() == 0);
    CHECK_THROWS_AS(acc.pop(), std::logic_error);
}
