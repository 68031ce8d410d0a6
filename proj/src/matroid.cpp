#include "gfq/matroid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "gfq/parallel.hpp"

namespace gfq {

long pg_point_count(int n, int q) {
    long num = 1;
    for (int i = 0; i < n; ++i) num *= q;
    return (num - 1) / (q - 1);
}

bool RepMatroid::parallel_default() { return parallel::use_parallel_default(); }

RepMatroid::RepMatroid(Mat m) : mat_(std::move(m)) {
    if (mat_.labels.empty()) {
        mat_.labels.reserve(mat_.cols());
        for (int j = 0; j < mat_.cols(); ++j) mat_.labels.push_back("c" + std::to_string(j + 1));
    }
    std::set<std::string> seen(mat_.labels.begin(), mat_.labels.end());
    if (int(seen.size()) != mat_.cols()) throw std::invalid_argument("duplicate column labels");
    rank_ = gfq::rank_of(mat_);
}

int RepMatroid::index_of(const std::string& label) const {
    for (int j = 0; j < mat_.cols(); ++j)
        if (mat_.labels[j] == label) return j;
    throw std::invalid_argument("unknown label: " + label);
}

std::vector<int> RepMatroid::indices_of(const std::vector<std::string>& ls) const {
    std::vector<int> r;
    r.reserve(ls.size());
    for (const auto& l : ls) r.push_back(index_of(l));
    return r;
}

int RepMatroid::rank_of(const std::vector<int>& cols) const {
    EchelonAccum acc(field(), mat_.rows());
    for (int j : cols) {
        if (j < 0 || j >= mat_.cols()) throw std::invalid_argument("column index out of range");
        acc.push(mat_, j);
    }
    return acc.rank();
}

std::vector<int> RepMatroid::closure(const std::vector<int>& cols) const {
    EchelonAccum acc(field(), mat_.rows());
    for (int j : cols) acc.push(mat_, j);
    std::vector<int> cl;
    for (int j = 0; j < mat_.cols(); ++j)
        if (acc.contains(mat_.col(j))) cl.push_back(j);
    return cl;
}

int RepMatroid::lambda(const std::vector<int>& cols) const {
    std::vector<char> in(mat_.cols(), 0);
    for (int j : cols) in[j] = 1;
    std::vector<int> rest;
    for (int j = 0; j < mat_.cols(); ++j)
        if (!in[j]) rest.push_back(j);
    return rank_of(cols) + rank_of(rest) - rank_;
}

bool RepMatroid::is_loop(int j) const {
    for (int i = 0; i < mat_.rows(); ++i)
        if (mat_.at(i, j) != 0) return false;
    return true;
}

std::vector<int> RepMatroid::loops() const {
    std::vector<int> r;
    for (int j = 0; j < mat_.cols(); ++j)
        if (is_loop(j)) r.push_back(j);
    return r;
}

void RepMatroid::ensure_classes() const {
    if (!classes_.empty() || mat_.cols() == 0) return;
    const Field& f = field();
    std::map<std::vector<code_t>, std::vector<int>> groups;
    for (int j = 0; j < mat_.cols(); ++j) {
        if (is_loop(j)) continue;
        std::vector<code_t> v = mat_.col(j);
        normalize_vector(f, v);
        groups[v].push_back(j);
    }
    std::vector<std::vector<int>> cls;
    for (auto& g : groups) cls.push_back(g.second);
    std::sort(cls.begin(), cls.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
    classes_ = std::move(cls);
}

const std::vector<std::vector<int>>& RepMatroid::parallel_classes() const {
    ensure_classes();
    return classes_;
}

int RepMatroid::class_representative(int ci) const {
    const auto& cls = parallel_classes()[ci];
    int best = cls[0];
    for (int j : cls)
        if (mat_.labels[j] < mat_.labels[best]) best = j;
    return best;
}

RepMatroid RepMatroid::minor(const std::vector<int>& del, const std::vector<int>& con,
                             bool keep_loops) const {
    for (int d : del)
        for (int c : con)
            if (d == c) throw std::invalid_argument("delete and contract sets overlap");
    const Field& f = field();
    Mat r = mat_;
    std::vector<char> active(r.rows(), 1);
    for (int c : con) {
        int piv = -1;
        for (int i = 0; i < r.rows(); ++i)
            if (active[i] && r.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;  // dependent on earlier pivots: stays a loop
        code_t s = f.inv(r.at(piv, c));
        for (int j = 0; j < r.cols(); ++j) r.at(piv, j) = f.mul(s, r.at(piv, j));
        for (int i = 0; i < r.rows(); ++i) {
            if (i == piv) continue;
            code_t x = r.at(i, c);
            if (x == 0) continue;
            for (int j = 0; j < r.cols(); ++j) r.at(i, j) = f.sub(r.at(i, j), f.mul(x, r.at(piv, j)));
        }
        active[piv] = 0;
    }
    std::vector<int> keep_rows;
    for (int i = 0; i < r.rows(); ++i)
        if (active[i]) keep_rows.push_back(i);
    std::vector<char> drop(r.cols(), 0);
    for (int d : del) drop[d] = 1;
    if (!keep_loops)
        for (int c : con) drop[c] = 1;
    std::vector<int> keep_cols;
    for (int j = 0; j < r.cols(); ++j)
        if (!drop[j]) keep_cols.push_back(j);
    return RepMatroid(r.rows_subset(keep_rows).cols_subset(keep_cols));
}

RepMatroid RepMatroid::restriction(const std::vector<int>& keep) const {
    std::vector<char> k(mat_.cols(), 0);
    for (int j : keep) k[j] = 1;
    std::vector<int> del;
    for (int j = 0; j < mat_.cols(); ++j)
        if (!k[j]) del.push_back(j);
    return minor(del, {});
}

RepMatroid RepMatroid::simplify() const {
    std::vector<int> keep;
    for (size_t ci = 0; ci < parallel_classes().size(); ++ci)
        keep.push_back(class_representative(int(ci)));
    std::sort(keep.begin(), keep.end());
    return RepMatroid(mat_.cols_subset(keep));
}

int RepMatroid::epsilon() const { return int(parallel_classes().size()); }

namespace {
std::vector<code_t> rep_col(const RepMatroid& m, int ci) {
    return m.mat().col(m.class_representative(ci));
}
}  // namespace

RepMatroid::VerticalResult RepMatroid::vertically_k_connected(int k, const Bounds& bounds,
                                                              bool use_parallel) const {
    const auto& cls = parallel_classes();
    const int c = int(cls.size());
    if (c > bounds.max_classes) throw SizeBoundError("too many parallel classes for the vertical scan");
    VerticalResult res;
    if (c <= 1 || k <= 0) return res;

    parallel::SubsetScanInput in;
    in.field = &field();
    in.rows = mat_.rows();
    in.rank_total = rank_;
    // class 0 pinned to the A side: lambda and the separation condition are
    // symmetric under complementation
    in.forced_a.push_back(rep_col(*this, 0));
    for (int ci = 1; ci < c; ++ci) in.cols.push_back(rep_col(*this, ci));

    auto hit = parallel::separation_scan(in, k, use_parallel);
    if (!hit) return res;
    res.connected = false;
    res.witness = cls[0];
    for (int ci = 1; ci < c; ++ci)
        if (hit->mask & (std::uint64_t(1) << (ci - 1)))
            res.witness.insert(res.witness.end(), cls[ci].begin(), cls[ci].end());
    std::sort(res.witness.begin(), res.witness.end());
    res.witness_order = hit->lambda + 1;
    return res;
}

RepMatroid::RoundResult RepMatroid::is_round(const Bounds& bounds) const {
    const auto& cls = parallel_classes();
    const int c = int(cls.size());
    if (c > bounds.max_classes) throw SizeBoundError("too many parallel classes for hyperplane enumeration");
    RoundResult res;
    const int r = rank_;
    // rank <= 1: hyperplanes contain no nonloop, so they never cover E
    if (r <= 1 || c == 0) return res;
    if (c > 62) throw SizeBoundError("class space too large for hyperplane masks");

    // hyperplanes as closures of (r-1)-subsets of class representatives
    std::set<std::uint64_t> hyperplanes;
    std::vector<int> comb(r - 1);
    std::vector<int> reps(c);
    for (int ci = 0; ci < c; ++ci) reps[ci] = class_representative(ci);

    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == r - 1) {
            std::vector<int> sub;
            for (int i = 0; i < r - 1; ++i) sub.push_back(reps[comb[i]]);
            if (rank_of(sub) != r - 1) return;
            std::vector<int> cl = closure(sub);
            if (rank_of(cl) != r - 1) return;
            std::uint64_t mask = 0;
            std::vector<char> in(mat_.cols(), 0);
            for (int e : cl) in[e] = 1;
            for (int ci = 0; ci < c; ++ci)
                if (in[reps[ci]]) mask |= std::uint64_t(1) << ci;
            hyperplanes.insert(mask);
            return;
        }
        for (int i = start; i < c; ++i) {
            comb[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);

    const std::uint64_t full = c == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << c) - 1);
    std::vector<std::uint64_t> hs(hyperplanes.begin(), hyperplanes.end());
    for (size_t i = 0; i < hs.size(); ++i)
        for (size_t j = i; j < hs.size(); ++j)
            if ((hs[i] | hs[j]) == full) {
                res.round = false;
                for (int ci = 0; ci < c; ++ci) {
                    if (hs[i] & (std::uint64_t(1) << ci))
                        res.hyperplane1.insert(res.hyperplane1.end(), cls[ci].begin(), cls[ci].end());
                    if (hs[j] & (std::uint64_t(1) << ci))
                        res.hyperplane2.insert(res.hyperplane2.end(), cls[ci].begin(), cls[ci].end());
                }
                std::sort(res.hyperplane1.begin(), res.hyperplane1.end());
                std::sort(res.hyperplane2.begin(), res.hyperplane2.end());
                return res;
            }
    return res;
}

int RepMatroid::kappa(const std::vector<int>& a, const std::vector<int>& b, const Bounds& bounds,
                      bool use_parallel) const {
    std::vector<char> ina(mat_.cols(), 0), inb(mat_.cols(), 0);
    for (int j : a) ina[j] = 1;
    for (int j : b) inb[j] = 1;
    for (int j = 0; j < mat_.cols(); ++j)
        if (ina[j] && inb[j]) throw std::invalid_argument("kappa arguments must be disjoint");

    parallel::SubsetScanInput in;
    in.field = &field();
    in.rows = mat_.rows();
    in.rank_total = rank_;
    const auto& cls = parallel_classes();
    for (size_t ci = 0; ci < cls.size(); ++ci) {
        bool meets_a = false, meets_b = false;
        for (int j : cls[ci]) {
            meets_a |= bool(ina[j]);
            meets_b |= bool(inb[j]);
        }
        auto col = rep_col(*this, int(ci));
        if (meets_a) in.forced_a.push_back(col);
        if (meets_b) in.forced_b.push_back(col);
        if (!meets_a && !meets_b) in.cols.push_back(col);
    }
    if (int(in.cols.size()) > bounds.max_classes)
        throw SizeBoundError("too many free classes for the kappa scan");
    return parallel::min_lambda_scan(in, use_parallel).lambda;
}

int RepMatroid::kappa_bruteforce(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<char> ina(mat_.cols(), 0), inb(mat_.cols(), 0);
    for (int j : a) ina[j] = 1;
    for (int j : b) inb[j] = 1;
    std::vector<int> free;
    for (int j = 0; j < mat_.cols(); ++j)
        if (!ina[j] && !inb[j]) free.push_back(j);
    if (free.size() > 24) throw SizeBoundError("brute-force kappa limited to 24 free elements");
    int best = rank_;
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << free.size()); ++m) {
        std::vector<int> z = a;
        for (size_t i = 0; i < free.size(); ++i)
            if (m & (std::uint64_t(1) << i)) z.push_back(free[i]);
        best = std::min(best, lambda(z));
    }
    return best;
}

RepMatroid RepMatroid::linking_minor(const std::vector<int>& a, const std::vector<int>& b,
                                     const Bounds& bounds) const {
    const int target = kappa(a, b, bounds);
    std::vector<std::string> la, lb;
    for (int j : a) la.push_back(mat_.labels[j]);
    for (int j : b) lb.push_back(mat_.labels[j]);

    RepMatroid cur = *this;
    for (;;) {
        std::set<std::string> keep(la.begin(), la.end());
        keep.insert(lb.begin(), lb.end());
        // smallest-labeled element outside A u B
        int pick = -1;
        for (int j = 0; j < cur.size(); ++j) {
            if (keep.count(cur.labels()[j])) continue;
            if (pick < 0 || cur.labels()[j] < cur.labels()[pick]) pick = j;
        }
        if (pick < 0) break;
        RepMatroid del = cur.minor({pick}, {});
        std::vector<int> da = del.indices_of(la), db = del.indices_of(lb);
        if (del.kappa(da, db, bounds) == target) {
            cur = std::move(del);
            continue;
        }
        RepMatroid con = cur.minor({}, {pick});
        std::vector<int> ca = con.indices_of(la), cb = con.indices_of(lb);
        if (con.kappa(ca, cb, bounds) != target)
            throw VerificationError("linking step lost connectivity on both branches");
        cur = std::move(con);
    }
    return cur;
}

std::vector<std::vector<int>> RepMatroid::cyclic_flats(const Bounds& bounds) const {
    const auto& cls = parallel_classes();
    const int c = int(cls.size());
    if (c > bounds.max_classes) throw SizeBoundError("too many parallel classes for flat enumeration");
    std::vector<int> reps(c);
    for (int ci = 0; ci < c; ++ci) reps[ci] = class_representative(ci);

    std::set<std::vector<int>> flats;
    std::vector<int> comb;
    // every flat is the closure of an independent set of representatives
    std::function<void(int)> rec = [&](int start) {
        std::vector<int> sub;
        for (int i : comb) sub.push_back(reps[i]);
        if (rank_of(sub) == int(comb.size())) {
            std::vector<int> cl = closure(sub);
            std::sort(cl.begin(), cl.end());
            flats.insert(cl);
        } else {
            return;
        }
        if (int(comb.size()) == rank_) return;
        for (int i = start; i < c; ++i) {
            comb.push_back(i);
            rec(i + 1);
            comb.pop_back();
        }
    };
    rec(0);

    std::vector<std::vector<int>> out;
    for (const auto& fl : flats) {
        bool cyclic = true;
        int rf = rank_of(fl);
        for (int e : fl) {
            if (is_loop(e)) continue;
            std::vector<int> rest;
            for (int x : fl)
                if (x != e) rest.push_back(x);
            if (rank_of(rest) == rf - 1) {
                cyclic = false;
                break;
            }
        }
        if (cyclic) out.push_back(fl);
    }
    std::sort(out.begin(), out.end(), [](const std::vector<int>& x, const std::vector<int>& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return out;
}

bool RepMatroid::is_pg(int n, int q) const {
    const Field& f = field();
    Mat confined = mat_;
    if (int(f.size()) == q) {
        // already over GF(q)
    } else if (f.is_quadratic_extension() && int(f.base().size()) == q) {
        try {
            confined = mat_.confined_to_base();
        } catch (const VerificationError&) {
            throw std::invalid_argument("field mismatch: entries escape the GF(q) subfield");
        }
    } else {
        throw std::invalid_argument("field mismatch: matrix not over GF(q) or confined there");
    }
    RepMatroid m(confined);
    return m.rank() == n && m.epsilon() == pg_point_count(n, q);
}

}  // namespace gfq
