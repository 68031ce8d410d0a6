#include "gfq/parallel.hpp"

#include <atomic>

#include "gfq/linalg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gfq::parallel {

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

bool use_parallel_default() { return openmp_enabled() && max_threads() > 1; }

long first_hit_serial(long n, const std::function<bool(long)>& pred) {
    for (long i = 0; i < n; ++i)
        if (pred(i)) return i;
    return -1;
}

long first_hit_omp(long n, const std::function<bool(long)>& pred) {
#ifdef _OPENMP
    std::atomic<long> best{n};
#pragma omp parallel for schedule(guided)
    for (long i = 0; i < n; ++i) {
        if (i >= best.load(std::memory_order_relaxed)) continue;
        if (pred(i)) {
            long cur = best.load(std::memory_order_relaxed);
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
        }
    }
    long b = best.load();
    return b == n ? -1 : b;
#else
    return first_hit_serial(n, pred);
#endif
}

long first_hit(long n, const std::function<bool(long)>& pred) {
    if (use_parallel_default() && n >= 4096) return first_hit_omp(n, pred);
    return first_hit_serial(n, pred);
}

namespace {

// Visit-order key: class 0 is the most significant branching bit.
std::uint64_t visit_key(std::uint64_t mask, int nbits) {
    std::uint64_t key = 0;
    for (int i = 0; i < nbits; ++i)
        if (mask & (std::uint64_t(1) << i)) key |= std::uint64_t(1) << (nbits - 1 - i);
    return key;
}

struct ScanState {
    const SubsetScanInput* in;
    EchelonAccum a, b;
    ScanState(const SubsetScanInput& i)
        : in(&i), a(*i.field, i.rows), b(*i.field, i.rows) {
        for (const auto& c : i.forced_a) a.push(c);
        for (const auto& c : i.forced_b) b.push(c);
    }
};

void min_lambda_dfs(ScanState& st, int depth, std::uint64_t mask, MinLambdaResult& best,
                    bool& has_best) {
    const auto& in = *st.in;
    int lower = st.a.rank() + st.b.rank() - in.rank_total;
    if (has_best && lower >= best.lambda) return;  // ranks only grow
    if (depth == int(in.cols.size())) {
        int lam = lower;
        if (!has_best || lam < best.lambda) {
            best = {lam, mask};
            has_best = true;
        }
        return;
    }
    // B side first to match the documented visit order
    st.b.push(in.cols[depth]);
    min_lambda_dfs(st, depth + 1, mask, best, has_best);
    st.b.pop();
    st.a.push(in.cols[depth]);
    min_lambda_dfs(st, depth + 1, mask | (std::uint64_t(1) << depth), best, has_best);
    st.a.pop();
}

bool separation_dfs(ScanState& st, int depth, std::uint64_t mask, int k, SeparationHit& hit) {
    const auto& in = *st.in;
    if (st.a.rank() + st.b.rank() - in.rank_total >= k) return false;  // lambda can only grow
    if (depth == int(in.cols.size())) {
        int ra = st.a.rank(), rb = st.b.rank();
        int lam = ra + rb - in.rank_total;
        if (lam < std::min(k, std::min(ra, rb))) {
            hit = {mask, lam, ra, rb};
            return true;
        }
        return false;
    }
    st.b.push(in.cols[depth]);
    bool found = separation_dfs(st, depth + 1, mask, k, hit);
    st.b.pop();
    if (found) return true;
    st.a.push(in.cols[depth]);
    found = separation_dfs(st, depth + 1, mask | (std::uint64_t(1) << depth), k, hit);
    st.a.pop();
    return found;
}

int shard_bits(int nclasses) {
    int b = nclasses > 14 ? 8 : 0;
#ifdef _OPENMP
    return b;
#else
    (void)nclasses;
    return b;
#endif
}

}  // namespace

MinLambdaResult min_lambda_scan_serial(const SubsetScanInput& in) {
    ScanState st(in);
    MinLambdaResult best;
    bool has = false;
    min_lambda_dfs(st, 0, 0, best, has);
    return best;
}

MinLambdaResult min_lambda_scan_omp(const SubsetScanInput& in) {
#ifdef _OPENMP
    const int n = int(in.cols.size());
    const int pb = shard_bits(n);
    if (pb == 0) return min_lambda_scan_serial(in);
    const long shards = 1L << pb;
    std::vector<MinLambdaResult> results(shards);
    std::vector<char> present(shards, 0);
#pragma omp parallel for schedule(dynamic, 1)
    for (long s = 0; s < shards; ++s) {
        // shard s fixes classes 0..pb-1; bit i of s (class 0 = MSB) keeps visit order
        SubsetScanInput sub = in;
        sub.cols.assign(in.cols.begin() + pb, in.cols.end());
        std::uint64_t prefix_mask = 0;
        for (int i = 0; i < pb; ++i) {
            bool on_a = (s >> (pb - 1 - i)) & 1;
            if (on_a) {
                sub.forced_a.push_back(in.cols[i]);
                prefix_mask |= std::uint64_t(1) << i;
            } else {
                sub.forced_b.push_back(in.cols[i]);
            }
        }
        MinLambdaResult r = min_lambda_scan_serial(sub);
        r.mask = prefix_mask | (r.mask << pb);
        results[s] = r;
        present[s] = 1;
    }
    MinLambdaResult best;
    bool has = false;
    for (long s = 0; s < shards; ++s) {
        if (!present[s]) continue;
        std::uint64_t key = visit_key(results[s].mask, n);
        std::uint64_t bkey = has ? visit_key(best.mask, n) : 0;
        if (!has || results[s].lambda < best.lambda ||
            (results[s].lambda == best.lambda && key < bkey)) {
            best = results[s];
            has = true;
        }
    }
    return best;
#else
    return min_lambda_scan_serial(in);
#endif
}

MinLambdaResult min_lambda_scan(const SubsetScanInput& in, bool use_parallel) {
    return use_parallel ? min_lambda_scan_omp(in) : min_lambda_scan_serial(in);
}

std::optional<SeparationHit> separation_scan_serial(const SubsetScanInput& in, int k) {
    ScanState st(in);
    SeparationHit hit;
    if (separation_dfs(st, 0, 0, k, hit)) return hit;
    return std::nullopt;
}

std::optional<SeparationHit> separation_scan_omp(const SubsetScanInput& in, int k) {
#ifdef _OPENMP
    const int n = int(in.cols.size());
    const int pb = shard_bits(n);
    if (pb == 0) return separation_scan_serial(in, k);
    const long shards = 1L << pb;
    std::vector<std::optional<SeparationHit>> results(shards);
#pragma omp parallel for schedule(dynamic, 1)
    for (long s = 0; s < shards; ++s) {
        SubsetScanInput sub = in;
        sub.cols.assign(in.cols.begin() + pb, in.cols.end());
        std::uint64_t prefix_mask = 0;
        for (int i = 0; i < pb; ++i) {
            bool on_a = (s >> (pb - 1 - i)) & 1;
            if (on_a) {
                sub.forced_a.push_back(in.cols[i]);
                prefix_mask |= std::uint64_t(1) << i;
            } else {
                sub.forced_b.push_back(in.cols[i]);
            }
        }
        auto r = separation_scan_serial(sub, k);
        if (r) {
            r->mask = prefix_mask | (r->mask << pb);
            results[s] = r;
        }
    }
    // shards were generated in visit order
    for (long s = 0; s < shards; ++s)
        if (results[s]) return results[s];
    return std::nullopt;
#else
    return separation_scan_serial(in, k);
#endif
}

std::optional<SeparationHit> separation_scan(const SubsetScanInput& in, int k, bool use_parallel) {
    return use_parallel ? separation_scan_omp(in, k) : separation_scan_serial(in, k);
}

}  // namespace gfq::parallel
