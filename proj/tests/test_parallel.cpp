#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gfq/geometry.hpp"
#include "gfq/matroid.hpp"
#include "gfq/parallel.hpp"

using namespace gfq;

namespace {

parallel::SubsetScanInput random_scan(std::mt19937& rng, const Field& f, int rows, int classes) {
    parallel::SubsetScanInput in;
    in.field = &f;
    in.rows = rows;
    Mat m(f, rows, classes);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < classes; ++j) m.at(i, j) = code_t(rng() % f.size());
    in.rank_total = rank_of(m);
    for (int j = 0; j < classes; ++j) in.cols.push_back(m.col(j));
    return in;
}

}  // namespace

TEST_CASE("first_hit: serial and sharded agree on the minimum index") {
    auto pred = [](long i) { return i % 97 == 3; };
    CHECK(parallel::first_hit_serial(5000, pred) == 3);
    CHECK(parallel::first_hit_omp(5000, pred) == 3);
    auto never = [](long) { return false; };
    CHECK(parallel::first_hit_serial(5000, never) == -1);
    CHECK(parallel::first_hit_omp(5000, never) == -1);
    // a hit far into the range
    auto late = [](long i) { return i == 4997; };
    CHECK(parallel::first_hit_omp(5000, late) == 4997);
}

TEST_CASE("min-lambda scans: OpenMP kernel equals the serial reference") {
    std::mt19937 rng(83);
    for (int it = 0; it < 20; ++it) {
        const Field& f = it % 2 ? Field::get(2, 1) : Field::get(3, 1);
        auto in = random_scan(rng, f, 4, 10 + int(rng() % 7));
        auto a = parallel::min_lambda_scan_serial(in);
        auto b = parallel::min_lambda_scan_omp(in);
        CHECK(a.lambda == b.lambda);
        CHECK(a.mask == b.mask);
    }
}

TEST_CASE("separation scans: OpenMP kernel equals the serial reference") {
    std::mt19937 rng(89);
    for (int it = 0; it < 20; ++it) {
        const Field& f = Field::get(2, 1);
        auto in = random_scan(rng, f, 5, 10 + int(rng() % 7));
        for (int k = 2; k <= 4; ++k) {
            auto a = parallel::separation_scan_serial(in, k);
            auto b = parallel::separation_scan_omp(in, k);
            CHECK(a.has_value() == b.has_value());
            if (a && b) {
                CHECK(a->mask == b->mask);
                CHECK(a->lambda == b->lambda);
            }
        }
    }
}

TEST_CASE("forced sides participate in both kernels") {
    std::mt19937 rng(97);
    const Field& f = Field::get(2, 1);
    auto in = random_scan(rng, f, 4, 12);
    in.forced_a.push_back(in.cols[0]);
    in.forced_b.push_back(in.cols[1]);
    in.cols.erase(in.cols.begin(), in.cols.begin() + 2);
    auto a = parallel::min_lambda_scan_serial(in);
    auto b = parallel::min_lambda_scan_omp(in);
    CHECK(a.lambda == b.lambda);
    CHECK(a.mask == b.mask);
}

TEST_CASE("matroid-level connectivity answers are identical on both paths") {
    std::mt19937 rng(101);
    for (int it = 0; it < 12; ++it) {
        const Field& f = it % 2 ? Field::get(2, 2) : Field::get(2, 1);
        Mat m(f, 4, 15);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 15; ++j) m.at(i, j) = code_t(rng() % f.size());
        RepMatroid rm(m);
        for (int k = 2; k <= 4; ++k) {
            auto a = rm.vertically_k_connected(k, Bounds::global(), false);
            auto b = rm.vertically_k_connected(k, Bounds::global(), true);
            CHECK(a.connected == b.connected);
            CHECK(a.witness == b.witness);
        }
        std::vector<int> sa = {0, 1}, sb = {2, 3};
        CHECK(rm.kappa(sa, sb, Bounds::global(), false) == rm.kappa(sa, sb, Bounds::global(), true));
    }
}

TEST_CASE("openmp availability is reported") {
#ifdef _OPENMP
    CHECK(parallel::openmp_enabled());
#else
    CHECK_FALSE(parallel::openmp_enabled());
#endif
}
