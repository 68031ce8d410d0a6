#include "gfq/represent.hpp"

#include <algorithm>
#include <functional>

#include "gfq/parallel.hpp"

namespace gfq {

RankOracle::RankOracle(const RepMatroid& m) {
    n_ = m.size();
    if (n_ > 12) throw SizeBoundError("rank oracle limited to 12 elements");
    rank_ = m.rank();
    labels_ = m.labels();
    table_.resize(std::size_t(1) << n_);
    std::vector<int> cols;
    for (std::uint32_t mask = 0; mask < table_.size(); ++mask) {
        cols.clear();
        for (int e = 0; e < n_; ++e)
            if (mask & (1u << e)) cols.push_back(e);
        table_[mask] = std::int8_t(m.rank_of(cols));
    }
}

bool RankOracle::check_axioms() const {
    const std::uint32_t total = 1u << n_;
    if (table_[0] != 0) return false;
    for (std::uint32_t x = 0; x < total; ++x)
        for (int e = 0; e < n_; ++e) {
            if (x & (1u << e)) continue;
            int d = table_[x | (1u << e)] - table_[x];
            if (d < 0 || d > 1) return false;
        }
    auto submodular = [&](std::uint32_t x, std::uint32_t y) {
        return table_[x | y] + table_[x & y] <= table_[x] + table_[y];
    };
    if (n_ <= 10) {
        for (std::uint32_t x = 0; x < total; ++x)
            for (std::uint32_t y = x; y < total; ++y)
                if (!submodular(x, y)) return false;
    } else {
        std::uint32_t s = 12345;
        for (int i = 0; i < 200000; ++i) {
            s = s * 1664525u + 1013904223u;
            std::uint32_t x = s % total;
            s = s * 1664525u + 1013904223u;
            std::uint32_t y = s % total;
            if (!submodular(x, y)) return false;
        }
    }
    return true;
}

namespace {

struct Searcher {
    const RankOracle& m;
    const Field& f;
    int n, r;
    std::vector<int> order;                   // processing order
    std::vector<std::vector<code_t>> points;  // projective candidates, lex order
    std::vector<int> basis_slot;              // depth -> standard basis position or -1
    int first_free_depth = -1;
    bool prune_symmetry;
    long restrict_first_free = -1;  // shard: candidate index pinned at first_free_depth

    std::vector<std::vector<code_t>> image;

    Searcher(const RankOracle& oracle, const Field& field, bool prune)
        : m(oracle), f(field), n(oracle.size()), r(oracle.rank()), prune_symmetry(prune) {
        // Processing order: seed with the element in the most circuits, then
        // greedily take the element pinned by the most placed lines (rank-2
        // triples with two placed elements), breaking ties by placed parallel
        // pairs, total circuit count, then label. Pinned elements have few
        // surviving candidates, so contradictions surface early.
        std::vector<long> circuits(n, 0);
        const std::uint32_t total = 1u << n;
        for (std::uint32_t x = 1; x < total; ++x) {
            int sz = __builtin_popcount(x);
            if (m.rank_of(x) >= sz) continue;
            bool circuit = true;
            for (int e = 0; e < n && circuit; ++e) {
                if (!(x & (1u << e))) continue;
                circuit = m.rank_of(x & ~(1u << e)) == sz - 1;
            }
            if (!circuit) continue;
            for (int e = 0; e < n; ++e)
                if (x & (1u << e)) ++circuits[e];
        }
        std::vector<char> placed(n, 0);
        auto better = [&](int x, long px, long qx, int y, long py, long qy) {
            if (px != py) return px > py;
            if (qx != qy) return qx > qy;
            if (circuits[x] != circuits[y]) return circuits[x] > circuits[y];
            return m.labels()[x] < m.labels()[y];
        };
        for (int step = 0; step < n; ++step) {
            int best = -1;
            long best_pins = -1, best_par = -1;
            for (int e = 0; e < n; ++e) {
                if (placed[e]) continue;
                long pins = 0, par = 0;
                for (int a = 0; a < n; ++a) {
                    if (!placed[a]) continue;
                    if (m.rank_of((1u << e) | (1u << a)) == 1 && m.rank_of(1u << e) == 1) ++par;
                    for (int b = a + 1; b < n; ++b) {
                        if (!placed[b]) continue;
                        if (m.rank_of((1u << a) | (1u << b)) != 2) continue;
                        if (m.rank_of((1u << e) | (1u << a) | (1u << b)) == 2) ++pins;
                    }
                }
                if (best < 0 || better(e, pins, par, best, best_pins, best_par)) {
                    best = e;
                    best_pins = pins;
                    best_par = par;
                }
            }
            order.push_back(best);
            placed[best] = 1;
        }

        basis_slot.assign(n, -1);
        std::uint32_t bmask = 0;
        int bcount = 0;
        for (int d = 0; d < n && bcount < r; ++d) {
            std::uint32_t cand = bmask | (1u << order[d]);
            if (m.rank_of(cand) == bcount + 1) {
                bmask = cand;
                basis_slot[d] = bcount++;
            }
        }
        for (int d = 0; d < n && first_free_depth < 0; ++d)
            if (basis_slot[d] < 0) first_free_depth = d;

        std::vector<code_t> v(r, 0);
        for (;;) {
            int i = r - 1;
            while (i >= 0 && v[i] == f.size() - 1) {
                v[i] = 0;
                --i;
            }
            if (i < 0) break;
            ++v[i];
            points.push_back(v);
        }
    }

    long candidate_count(int depth) const {
        const int e = order[depth];
        if (m.rank_of(1u << e) == 0) return 1;
        if (prune_symmetry && basis_slot[depth] >= 0) return 1;
        if (prune_symmetry && depth == first_free_depth) {
            long c = 0;
            for (const auto& p : points)
                if (std::all_of(p.begin(), p.end(), [](code_t x) { return x <= 1; })) ++c;
            return c;
        }
        return long(points.size());
    }

    // the idx-th candidate image of the element at `depth`
    std::vector<code_t> candidate(int depth, long idx) const {
        const int e = order[depth];
        if (m.rank_of(1u << e) == 0) return std::vector<code_t>(r, 0);
        if (prune_symmetry && basis_slot[depth] >= 0) {
            std::vector<code_t> v(r, 0);
            v[basis_slot[depth]] = 1;
            return v;
        }
        if (prune_symmetry && depth == first_free_depth) {
            long c = 0;
            for (const auto& p : points)
                if (std::all_of(p.begin(), p.end(), [](code_t x) { return x <= 1; })) {
                    if (c == idx) return p;
                    ++c;
                }
            throw std::logic_error("candidate index out of range");
        }
        return points[idx];
    }

    std::optional<Mat> materialize() const {
        Mat w(f, r, n);
        for (int d = 0; d < n; ++d) w.set_col(order[d], image[d]);
        w.labels = m.labels();
        RepMatroid rep(w);
        const std::uint32_t total = 1u << n;
        std::vector<int> cols;
        for (std::uint32_t x = 0; x < total; ++x) {
            cols.clear();
            for (int e = 0; e < n; ++e)
                if (x & (1u << e)) cols.push_back(e);
            if (rep.rank_of(cols) != m.rank_of(x)) return std::nullopt;
        }
        return w;
    }

    // non-allocating parallel test for nonzero vectors
    bool parallel_nonzero(const std::vector<code_t>& w, const std::vector<code_t>& v) const {
        int nz = 0;
        while (nz < r && v[nz] == 0) ++nz;
        if (nz == r || w[nz] == 0) return false;
        code_t sigma = f.div(w[nz], v[nz]);
        for (int i = 0; i < r; ++i)
            if (f.mul(sigma, v[i]) != w[i]) return false;
        return true;
    }

    // normalized projective points of a subspace, in lexicographic order
    std::vector<std::vector<code_t>> subspace_points(const Subspace& s) const {
        std::vector<std::vector<code_t>> pts;
        const int d = s.dim();
        std::vector<code_t> lam(d, 0);
        for (;;) {
            int i = d - 1;
            while (i >= 0 && lam[i] == f.size() - 1) {
                lam[i] = 0;
                --i;
            }
            if (i < 0) break;
            ++lam[i];
            std::vector<code_t> v(r, 0);
            for (int row = 0; row < d; ++row) {
                if (lam[row] == 0) continue;
                for (int c = 0; c < r; ++c)
                    v[c] = f.add(v[c], f.mul(lam[row], s.basis().at(row, c)));
            }
            normalize_vector(f, v);
            pts.push_back(std::move(v));
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        return pts;
    }

    std::optional<Mat> dfs(int depth, EchelonAccum& acc, std::uint32_t pmask) {
        if (depth == n) return materialize();
        const int e = order[depth];
        const std::uint32_t mask = pmask | (1u << e);
        const int want_prefix = m.rank_of(mask);
        const bool e_loop = m.rank_of(1u << e) == 0;

        // per-depth constraint structures, shared by every candidate below
        struct SpanCheck {
            EchelonAccum span;
            bool must_contain;
        };
        std::vector<std::pair<int, int>> pair_want;  // (d1, oracle rank of {e, e1})
        std::vector<SpanCheck> spans;
        std::optional<Subspace> pin;  // intersection of the must-contain spans
        std::vector<char> img_zero(depth);
        for (int d1 = 0; d1 < depth; ++d1) {
            img_zero[d1] =
                std::all_of(image[d1].begin(), image[d1].end(), [](code_t c) { return c == 0; });
            pair_want.push_back({d1, m.rank_of((1u << e) | (1u << order[d1]))});
        }
        if (!e_loop)
            for (int d1 = 0; d1 < depth; ++d1) {
                if (img_zero[d1]) continue;
                if (pair_want[d1].second == 1) {
                    // parallel pin: the image is forced up to scaling
                    Mat row(f, 1, r);
                    for (int c = 0; c < r; ++c) row.at(0, c) = image[d1][c];
                    Subspace s = Subspace::span_rows(row);
                    pin = pin ? pin->intersect(s) : s;
                    continue;
                }
                for (int d2 = d1 + 1; d2 < depth; ++d2) {
                    if (img_zero[d2]) continue;
                    if (parallel_nonzero(image[d1], image[d2])) continue;
                    std::uint32_t m3 = (1u << e) | (1u << order[d1]) | (1u << order[d2]);
                    if (m.rank_of((1u << e) | (1u << order[d2])) == 1) continue;  // handled as a pin
                    int want3 = m.rank_of(m3);
                    if (want3 == 2) {
                        Mat rows(f, 2, r);
                        for (int c = 0; c < r; ++c) {
                            rows.at(0, c) = image[d1][c];
                            rows.at(1, c) = image[d2][c];
                        }
                        Subspace s = Subspace::span_rows(rows);
                        pin = pin ? pin->intersect(s) : s;
                    } else {
                        EchelonAccum span(f, r);
                        span.push(image[d1]);
                        span.push(image[d2]);
                        spans.push_back({std::move(span), false});
                    }
                }
            }

        // candidate source: the pin subspace when present, else all points;
        // a shard pins the first unforced element to one global candidate
        const bool shard_here = restrict_first_free >= 0 && depth == first_free_depth;
        std::vector<std::vector<code_t>> pinned_pts;
        const std::vector<std::vector<code_t>>* source = &points;
        bool use_pin = false;
        if (!shard_here && !e_loop && pin && basis_slot[depth] < 0 && pin->dim() < r) {
            pinned_pts = subspace_points(*pin);
            if (prune_symmetry && depth == first_free_depth) {
                std::vector<std::vector<code_t>> filt;
                for (auto& p : pinned_pts)
                    if (std::all_of(p.begin(), p.end(), [](code_t c) { return c <= 1; }))
                        filt.push_back(std::move(p));
                pinned_pts = std::move(filt);
            }
            source = &pinned_pts;
            use_pin = true;
        }

        const long ncand = shard_here ? 1 : (use_pin ? long(source->size()) : candidate_count(depth));
        for (long ci = 0; ci < ncand; ++ci) {
            std::vector<code_t> w;
            if (use_pin)
                w = (*source)[ci];
            else
                w = candidate(depth, shard_here ? restrict_first_free : ci);
            bool wzero = e_loop;
            bool ok = true;
            for (const auto& pw : pair_want) {
                int got;
                if (wzero)
                    got = img_zero[pw.first] ? 0 : 1;
                else if (img_zero[pw.first])
                    got = 1;
                else
                    got = parallel_nonzero(w, image[pw.first]) ? 1 : 2;
                if (got != pw.second) {
                    ok = false;
                    break;
                }
            }
            if (ok && !wzero)
                for (const auto& sc : spans)
                    if (sc.span.contains(w) != sc.must_contain) {
                        ok = false;
                        break;
                    }
            if (ok && !wzero && pin && !use_pin) ok = pin->contains(w);
            if (!ok) continue;
            acc.push(w);
            if (acc.rank() != want_prefix) {
                acc.pop();
                continue;
            }
            image.push_back(std::move(w));
            auto res = dfs(depth + 1, acc, mask);
            image.pop_back();
            acc.pop();
            if (res) return res;
        }
        return std::nullopt;
    }

    std::optional<Mat> run_serial() {
        image.clear();
        EchelonAccum acc(f, r);
        return dfs(0, acc, 0);
    }
};

}  // namespace

std::optional<Mat> find_representation(const RankOracle& m, const Field& f,
                                       const SearchOptions& opt) {
    if (m.size() > 12 || m.rank() > 4 || f.size() > 16)
        throw SizeBoundError("representation search limited to |E| <= 12, rank <= 4, |F| <= 16");
    if (m.size() == 0) return Mat(f, m.rank(), 0);

    Searcher probe(m, f, opt.prune_symmetry);
    if (!opt.use_parallel || probe.first_free_depth < 0) return probe.run_serial();

    // shard on the first unforced element's candidates; the subtrees are
    // disjoint and the smallest shard with a hit carries the first witness
    const long shards = probe.candidate_count(probe.first_free_depth);
    std::vector<std::optional<Mat>> results(shards);
    long hit = parallel::first_hit_omp(shards, [&](long s) {
        Searcher local(m, f, opt.prune_symmetry);
        local.restrict_first_free = s;
        auto res = local.run_serial();
        if (res) results[s] = std::move(res);
        return results[s].has_value();
    });
    if (hit < 0) return std::nullopt;
    return results[hit];
}

std::vector<ProfileEntry> representability_profile(const RankOracle& m,
                                                   const std::vector<const Field*>& fields,
                                                   const SearchOptions& opt) {
    std::vector<ProfileEntry> out;
    for (const Field* f : fields) {
        ProfileEntry e;
        e.field = f;
        e.witness = find_representation(m, *f, opt);
        e.representable = e.witness.has_value();
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace gfq
