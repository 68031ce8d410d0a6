#ifndef GFQ_PARALLEL_HPP
#define GFQ_PARALLEL_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gfq/field.hpp"

namespace gfq::parallel {

/// True when the build has OpenMP support.
bool openmp_enabled();

/// Hardware threads OpenMP would use; 1 without OpenMP.
int max_threads();

/// Default dispatch policy: parallel kernels only pay off with more than one
/// thread available.
bool use_parallel_default();

/// Smallest index i in [0, n) with pred(i) true, or -1. pred must be a pure
/// function of i. The parallel variant shards the range and reduces to the
/// minimum hit, so both variants return identical results.
long first_hit_serial(long n, const std::function<bool(long)>& pred);
long first_hit_omp(long n, const std::function<bool(long)>& pred);
long first_hit(long n, const std::function<bool(long)>& pred);

/// Input of the two-sided subset scans. Every free class is assigned to side
/// A or side B; both sides start preloaded with forced columns. Masks use bit
/// i for free class i; the scan visits assignments with class 0 as the most
/// significant branching decision, B side first.
struct SubsetScanInput {
    const Field* field = nullptr;
    int rows = 0;
    int rank_total = 0;
    std::vector<std::vector<code_t>> cols;      // representative column per free class
    std::vector<std::vector<code_t>> forced_a;
    std::vector<std::vector<code_t>> forced_b;
};

struct MinLambdaResult {
    int lambda = 0;
    std::uint64_t mask = 0;  // assignment attaining the minimum (earliest in visit order)
};

/// Minimum of rank(A) + rank(B) - rank_total over all assignments.
MinLambdaResult min_lambda_scan_serial(const SubsetScanInput& in);
MinLambdaResult min_lambda_scan_omp(const SubsetScanInput& in);
MinLambdaResult min_lambda_scan(const SubsetScanInput& in, bool use_parallel);

struct SeparationHit {
    std::uint64_t mask = 0;
    int lambda = 0;
    int rank_a = 0;
    int rank_b = 0;
};

/// Earliest assignment (in visit order) whose leaf satisfies
/// lambda < min(k, rank_a, rank_b); nullopt when none exists.
std::optional<SeparationHit> separation_scan_serial(const SubsetScanInput& in, int k);
std::optional<SeparationHit> separation_scan_omp(const SubsetScanInput& in, int k);
std::optional<SeparationHit> separation_scan(const SubsetScanInput& in, int k, bool use_parallel);

}  // namespace gfq::parallel

#endif
