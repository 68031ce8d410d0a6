#include "gfq/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "gfq/parallel.hpp"

namespace gfq {

Mat Mat::identity(const Field& f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const Field& f, const std::vector<std::vector<code_t>>& rows) {
    int r = int(rows.size());
    int c = r == 0 ? 0 : int(rows[0].size());
    Mat m(f, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    return m;
}

std::vector<code_t> Mat::col(int j) const {
    std::vector<code_t> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

std::vector<code_t> Mat::row(int i) const {
    std::vector<code_t> v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

void Mat::set_col(int j, const std::vector<code_t>& v) {
    for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

Mat Mat::mul(const Mat& o) const {
    if (cols_ != o.rows_ || f_ != o.f_) throw std::invalid_argument("shape/field mismatch in mul");
    Mat r(*f_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            code_t aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                r.at(i, j) = f_->add(r.at(i, j), f_->mul(aik, o.at(k, j)));
        }
    r.labels = o.labels;
    return r;
}

Mat Mat::transpose() const {
    Mat r(*f_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Mat Mat::cols_subset(const std::vector<int>& idx) const {
    Mat r(*f_, rows_, int(idx.size()));
    for (int j = 0; j < int(idx.size()); ++j)
        for (int i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
    if (!labels.empty()) {
        r.labels.reserve(idx.size());
        for (int j : idx) r.labels.push_back(labels[j]);
    }
    return r;
}

Mat Mat::rows_subset(const std::vector<int>& idx) const {
    Mat r(*f_, int(idx.size()), cols_);
    for (int i = 0; i < int(idx.size()); ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(idx[i], j);
    r.labels = labels;
    return r;
}

Mat Mat::hstack(const Mat& right) const {
    if (rows_ != right.rows_ || f_ != right.f_) throw std::invalid_argument("hstack mismatch");
    Mat r(*f_, rows_, cols_ + right.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < right.cols_; ++j) r.at(i, cols_ + j) = right.at(i, j);
    }
    if (!labels.empty() && !right.labels.empty()) {
        r.labels = labels;
        r.labels.insert(r.labels.end(), right.labels.begin(), right.labels.end());
    }
    return r;
}

Mat Mat::vstack(const Mat& below) const {
    if (cols_ != below.cols_ || f_ != below.f_) throw std::invalid_argument("vstack mismatch");
    Mat r(*f_, rows_ + below.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < below.rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = below.at(i, j);
    r.labels = labels;
    return r;
}

Mat Mat::embedded_into(const Field& ext) const {
    if (&ext.base() != f_) throw std::invalid_argument("not an extension of this matrix's field");
    Mat r(ext, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = ext.embed(at(i, j));
    r.labels = labels;
    return r;
}

Mat Mat::confined_to_base() const {
    const Field& b = f_->base();
    Mat r(b, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            auto uv = f_->decompose(at(i, j));
            if (uv.second != 0) throw VerificationError("entry outside the subfield");
            r.at(i, j) = uv.first;
        }
    r.labels = labels;
    return r;
}

// ---- elimination ----

RrefResult rref(const Mat& m) {
    RrefResult res{m, {}, 0};
    Mat& a = res.mat;
    const Field& f = m.field();
    int lead = 0;
    for (int col = 0; col < a.cols() && lead < a.rows(); ++col) {
        int piv = -1;
        for (int i = lead; i < a.rows(); ++i)
            if (a.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != lead)
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(lead, j));
        code_t s = f.inv(a.at(lead, col));
        for (int j = 0; j < a.cols(); ++j) a.at(lead, j) = f.mul(s, a.at(lead, j));
        for (int i = 0; i < a.rows(); ++i) {
            if (i == lead) continue;
            code_t c = a.at(i, col);
            if (c == 0) continue;
            for (int j = 0; j < a.cols(); ++j)
                a.at(i, j) = f.sub(a.at(i, j), f.mul(c, a.at(lead, j)));
        }
        res.pivots.push_back(col);
        ++lead;
    }
    res.rank = lead;
    return res;
}

int rank_of(const Mat& m) {
    EchelonAccum acc(m.field(), m.rows());
    for (int j = 0; j < m.cols(); ++j) acc.push(m, j);
    return acc.rank();
}

std::vector<code_t> EchelonAccum::reduce(std::vector<code_t> v) const {
    const Field& f = *f_;
    for (size_t r = 0; r < basis_.size(); ++r) {
        code_t c = v[pivot_[r]];
        if (c == 0) continue;
        // basis rows have leading coefficient 1
        for (int i = pivot_[r]; i < rows_; ++i) v[i] = f.sub(v[i], f.mul(c, basis_[r][i]));
    }
    return v;
}

int EchelonAccum::push(const std::vector<code_t>& col) {
    std::vector<code_t> v = reduce(col);
    int p = -1;
    for (int i = 0; i < rows_; ++i)
        if (v[i] != 0) {
            p = i;
            break;
        }
    if (p < 0) {
        gains_.push_back(0);
        return 0;
    }
    code_t s = f_->inv(v[p]);
    for (int i = p; i < rows_; ++i) v[i] = f_->mul(s, v[i]);
    basis_.push_back(std::move(v));
    pivot_.push_back(p);
    gains_.push_back(1);
    return 1;
}

int EchelonAccum::push(const Mat& m, int j) { return push(m.col(j)); }

void EchelonAccum::pop() {
    if (gains_.empty()) throw std::logic_error("pop on empty accumulator");
    if (gains_.back() == 1) {
        basis_.pop_back();
        pivot_.pop_back();
    }
    gains_.pop_back();
}

bool EchelonAccum::contains(const std::vector<code_t>& v) const {
    std::vector<code_t> r = reduce(v);
    for (code_t c : r)
        if (c != 0) return false;
    return true;
}

// ---- subspaces ----

Subspace Subspace::span_rows(const Mat& rows) {
    Subspace s;
    s.ambient_ = rows.cols();
    RrefResult rr = rref(rows);
    std::vector<int> keep;
    for (int i = 0; i < rr.rank; ++i) keep.push_back(i);
    Mat b = rr.mat.rows_subset(keep);
    b.labels.clear();
    s.basis_ = std::move(b);
    return s;
}

Subspace Subspace::zero(const Field& f, int ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Mat(f, 0, ambient);
    return s;
}

bool Subspace::contains(const std::vector<code_t>& v) const {
    EchelonAccum acc(field(), ambient_);
    Mat bt = basis_.transpose();
    for (int j = 0; j < bt.cols(); ++j) acc.push(bt, j);
    return acc.contains(v);
}

bool Subspace::contains(const Subspace& other) const {
    for (int i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& other) const {
    if (ambient_ != other.ambient_ || &field() != &other.field())
        throw std::invalid_argument("ambient mismatch");
    return span_rows(basis_.vstack(other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (ambient_ != other.ambient_ || &field() != &other.field())
        throw std::invalid_argument("ambient mismatch");
    // x = a^T U = b^T V: solve U^T a - V^T b = 0 via the kernel of [U^T | -V^T]
    const Field& f = field();
    int du = dim(), dv = other.dim();
    if (du == 0 || dv == 0) return zero(f, ambient_);
    Mat stacked(f, ambient_, du + dv);
    for (int i = 0; i < ambient_; ++i) {
        for (int r = 0; r < du; ++r) stacked.at(i, r) = basis_.at(r, i);
        for (int r = 0; r < dv; ++r) stacked.at(i, du + r) = f.neg(other.basis_.at(r, i));
    }
    Subspace ker = kernel(stacked);
    // map each kernel row's a-part through U
    Mat rows(f, ker.dim(), ambient_);
    for (int r = 0; r < ker.dim(); ++r)
        for (int i = 0; i < ambient_; ++i) {
            code_t acc = 0;
            for (int s = 0; s < du; ++s)
                acc = f.add(acc, f.mul(ker.basis().at(r, s), basis_.at(s, i)));
            rows.at(r, i) = acc;
        }
    return span_rows(rows);
}

Subspace kernel(const Mat& m) {
    const Field& f = m.field();
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : rr.pivots) is_pivot[p] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Mat rows(f, int(free_cols.size()), m.cols());
    for (int r = 0; r < int(free_cols.size()); ++r) {
        int fc = free_cols[r];
        rows.at(r, fc) = 1;
        for (int i = 0; i < rr.rank; ++i) rows.at(r, rr.pivots[i]) = f.neg(rr.mat.at(i, fc));
    }
    return Subspace::span_rows(rows);
}

Mat left_kernel(const Mat& m) {
    Subspace k = kernel(m.transpose());
    return k.basis();
}

std::optional<std::vector<code_t>> solve(const Mat& m, const std::vector<code_t>& b) {
    const Field& f = m.field();
    Mat aug(f, m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    RrefResult rr = rref(aug);
    for (int p : rr.pivots)
        if (p == m.cols()) return std::nullopt;  // inconsistent
    std::vector<code_t> x(m.cols(), 0);
    for (int i = 0; i < int(rr.pivots.size()); ++i) x[rr.pivots[i]] = rr.mat.at(i, m.cols());
    return x;
}

bool is_invertible(const Mat& m) { return m.rows() == m.cols() && rank_of(m) == m.rows(); }

Mat inverse(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const Field& f = m.field();
    Mat aug = m.hstack(Mat::identity(f, m.rows()));
    aug.labels.clear();
    RrefResult rr = rref(aug);
    if (rr.rank < m.rows()) throw std::invalid_argument("singular matrix");
    std::vector<int> right(m.rows());
    for (int j = 0; j < m.rows(); ++j) right[j] = m.cols() + j;
    return rr.mat.cols_subset(right);
}

code_t normalize_vector(const Field& f, std::vector<code_t>& v) {
    for (code_t c : v)
        if (c != 0) {
            code_t s = f.inv(c);
            for (code_t& x : v) x = f.mul(s, x);
            return s;
        }
    return 1;
}

bool vectors_parallel(const Field& f, const std::vector<code_t>& a, const std::vector<code_t>& b) {
    bool za = std::all_of(a.begin(), a.end(), [](code_t c) { return c == 0; });
    bool zb = std::all_of(b.begin(), b.end(), [](code_t c) { return c == 0; });
    if (za || zb) return za && zb;
    std::vector<code_t> na = a, nb = b;
    normalize_vector(f, na);
    normalize_vector(f, nb);
    return na == nb;
}

// ---- row transforms and column scalings ----

Mat subfield_row_transform(const Mat& m, const Mat& t_base) {
    const Field& ext = m.field();
    if (!ext.is_quadratic_extension()) throw std::invalid_argument("matrix not over a quadratic extension");
    if (&t_base.field() != &ext.base()) throw std::invalid_argument("transform not over the subfield");
    if (t_base.rows() != m.rows() || t_base.cols() != m.rows())
        throw std::invalid_argument("transform shape mismatch");
    if (!is_invertible(t_base)) throw std::invalid_argument("singular row transform");
    return t_base.embedded_into(ext).mul(m);
}

Mat scale_columns(const Mat& m, const std::vector<code_t>& scalars, bool subfield_only) {
    if (int(scalars.size()) != m.cols()) throw std::invalid_argument("scalar count mismatch");
    const Field& f = m.field();
    Mat r = m;
    for (int j = 0; j < m.cols(); ++j) {
        if (scalars[j] == 0) throw std::invalid_argument("zero column scalar");
        if (subfield_only && !f.in_subfield(scalars[j]))
            throw std::invalid_argument("scalar outside the subfield");
        for (int i = 0; i < m.rows(); ++i) r.at(i, j) = f.mul(m.at(i, j), scalars[j]);
    }
    return r;
}

// ---- projective equivalence ----

namespace {

std::vector<int> greedy_column_basis(const Mat& a) {
    EchelonAccum acc(a.field(), a.rows());
    std::vector<int> basis;
    for (int j = 0; j < a.cols() && int(basis.size()) < a.rows(); ++j)
        if (acc.push(a, j)) basis.push_back(j);
    return basis;
}

}  // namespace

std::optional<ProjEquivWitness> projectively_equivalent(const Mat& a, const Mat& b,
                                                        bool subfield_only, const Bounds& bounds) {
    return projectively_equivalent(a, b, subfield_only, bounds,
                                   parallel::use_parallel_default());
}

std::optional<ProjEquivWitness> projectively_equivalent(const Mat& a, const Mat& b,
                                                        bool subfield_only, const Bounds&,
                                                        bool use_parallel) {
    const Field& f = a.field();
    if (&f != &b.field() || a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("shape or field mismatch");
    if (a.rows() > 6 || f.size() > 16) throw SizeBoundError("projective equivalence limited to rows <= 6, |F| <= 16");

    const int r = a.rows();
    std::vector<int> cbasis = greedy_column_basis(a);
    if (int(cbasis.size()) != r) throw std::invalid_argument("matrix does not have full row rank");

    Mat acols = a.cols_subset(cbasis);
    acols.labels.clear();
    Mat bcols = b.cols_subset(cbasis);
    bcols.labels.clear();
    if (rank_of(bcols) != r) return std::nullopt;  // forced: T A[c] D is invertible
    Mat ainv = inverse(acols);

    // allowed scalars, ascending by code
    std::vector<code_t> allowed;
    if (subfield_only) {
        if (!f.is_quadratic_extension()) throw std::invalid_argument("no subfield available");
        const Field& base = f.base();
        for (std::uint32_t c = 1; c < base.size(); ++c) allowed.push_back(f.embed(code_t(c)));
    } else {
        for (std::uint32_t c = 1; c < f.size(); ++c) allowed.push_back(code_t(c));
    }

    long total = 1;
    for (int i = 1; i < r; ++i) total *= long(allowed.size());

    auto try_candidate = [&](long idx) -> std::optional<ProjEquivWitness> {
        std::vector<code_t> lambda(r, 1);
        long v = idx;
        for (int i = r - 1; i >= 1; --i) {
            lambda[i] = allowed[v % long(allowed.size())];
            v /= long(allowed.size());
        }
        // T = B[c] diag(lambda) A[c]^-1
        Mat t(f, r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                code_t acc = 0;
                for (int k = 0; k < r; ++k)
                    acc = f.add(acc, f.mul(f.mul(bcols.at(i, k), lambda[k]), ainv.at(k, j)));
                t.at(i, j) = acc;
            }
        if (subfield_only)
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    if (!f.in_subfield(t.at(i, j))) return std::nullopt;

        std::vector<code_t> scale(a.cols(), 1);
        for (int bi = 0; bi < r; ++bi) scale[cbasis[bi]] = f.inv(lambda[bi]);
        for (int j = 0; j < a.cols(); ++j) {
            std::vector<code_t> w(r, 0);
            for (int i = 0; i < r; ++i) {
                code_t acc = 0;
                for (int k = 0; k < r; ++k) acc = f.add(acc, f.mul(t.at(i, k), a.at(k, j)));
                w[i] = acc;
            }
            int nz = -1;
            for (int i = 0; i < r; ++i)
                if (w[i] != 0) {
                    nz = i;
                    break;
                }
            if (nz < 0) {
                for (int i = 0; i < r; ++i)
                    if (b.at(i, j) != 0) return std::nullopt;
                continue;
            }
            code_t sigma = f.div(b.at(nz, j), w[nz]);
            if (sigma == 0) return std::nullopt;
            if (subfield_only && !f.in_subfield(sigma)) return std::nullopt;
            for (int i = 0; i < r; ++i)
                if (f.mul(sigma, w[i]) != b.at(i, j)) return std::nullopt;
            scale[j] = sigma;
        }
        return ProjEquivWitness{t, scale};
    };

    auto pred = [&](long idx) { return try_candidate(idx).has_value(); };
    long hit = use_parallel ? parallel::first_hit_omp(total, pred) : parallel::first_hit_serial(total, pred);
    if (hit < 0) return std::nullopt;
    ProjEquivWitness w = *try_candidate(hit);

    // re-verify by direct multiplication before returning
    Mat check = w.row_transform.mul(a);
    check = scale_columns(check, w.col_scale, false);
    check.labels = b.labels;
    if (!(check == b)) throw VerificationError("projective equivalence witness failed re-check");
    return w;
}

// ---- unordered projective equivalence via canonical forms ----

namespace {

struct CanonChoice {
    std::vector<int> tuple;
    std::vector<code_t> diag;
    std::vector<int> sort_pos;  // original column -> canonical position
    std::string key;
};

CanonChoice canonicalize(const Mat& m) {
    const Field& f = m.field();
    const int r = m.rows();
    const int n = m.cols();
    if (rank_of(m) != r) throw std::invalid_argument("full row rank required");
    if (r > 4) throw SizeBoundError("canonical form limited to rank <= 4");

    CanonChoice best;
    std::vector<int> tuple(r);
    std::vector<int> stack;

    std::vector<std::vector<int>> tuples;
    std::function<void(int)> gen = [&](int depth) {
        if (depth == r) {
            tuples.push_back(tuple);
            return;
        }
        for (int j = 0; j < n; ++j) {
            bool used = false;
            for (int i = 0; i < depth; ++i) used |= (tuple[i] == j);
            if (!used) {
                tuple[depth] = j;
                gen(depth + 1);
            }
        }
    };
    gen(0);

    for (const auto& tp : tuples) {
        Mat cols = m.cols_subset(tp);
        cols.labels.clear();
        if (rank_of(cols) != r) continue;
        Mat t0 = inverse(cols);
        long dtotal = 1;
        for (int i = 1; i < r; ++i) dtotal *= long(f.size() - 1);
        for (long di = 0; di < dtotal; ++di) {
            std::vector<code_t> d(r, 1);
            long v = di;
            for (int i = r - 1; i >= 1; --i) {
                d[i] = code_t(1 + v % long(f.size() - 1));
                v /= long(f.size() - 1);
            }
            // columns of diag(d) * t0 * m, normalized then sorted
            std::vector<std::pair<std::vector<code_t>, int>> cols2(n);
            for (int j = 0; j < n; ++j) {
                std::vector<code_t> w(r, 0);
                for (int i = 0; i < r; ++i) {
                    code_t acc = 0;
                    for (int k = 0; k < r; ++k) acc = f.add(acc, f.mul(t0.at(i, k), m.at(k, j)));
                    w[i] = f.mul(d[i], acc);
                }
                normalize_vector(f, w);
                cols2[j] = {std::move(w), j};
            }
            std::sort(cols2.begin(), cols2.end());
            std::string key;
            key.reserve(size_t(n) * r * 3);
            for (const auto& cw : cols2) {
                for (code_t c : cw.first) {
                    key += std::to_string(unsigned(c));
                    key += ',';
                }
                key += ';';
            }
            if (best.key.empty() || key < best.key) {
                best.key = key;
                best.tuple = tp;
                best.diag = d;
                best.sort_pos.assign(n, 0);
                for (int pos = 0; pos < n; ++pos) best.sort_pos[cols2[pos].second] = pos;
            }
        }
    }
    return best;
}

}  // namespace

std::string projective_canonical_form(const Mat& m) { return canonicalize(m).key; }

std::optional<UnorderedProjEquivWitness> projectively_equivalent_unordered(const Mat& a, const Mat& b) {
    if (&a.field() != &b.field() || a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
    const Field& f = a.field();
    CanonChoice ca = canonicalize(a);
    CanonChoice cb = canonicalize(b);
    if (ca.key != cb.key) return std::nullopt;

    const int r = a.rows();
    Mat ta_cols = a.cols_subset(ca.tuple);
    ta_cols.labels.clear();
    Mat tb_cols = b.cols_subset(cb.tuple);
    tb_cols.labels.clear();
    Mat ta = inverse(ta_cols);
    Mat tb = inverse(tb_cols);
    // full transform: T = Tb^-1 * diag(db)^-1 * diag(da) * Ta
    Mat mid(f, r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) mid.at(i, j) = f.mul(f.div(ca.diag[i], cb.diag[i]), ta.at(i, j));
    Mat t = inverse(tb).mul(mid);

    UnorderedProjEquivWitness w;
    w.row_transform = t;
    w.col_perm.resize(a.cols());
    w.col_scale.assign(a.cols(), 1);
    std::vector<int> inv_b(b.cols());
    for (int j = 0; j < b.cols(); ++j) inv_b[cb.sort_pos[j]] = j;
    Mat ta_full = t.mul(a);
    for (int j = 0; j < a.cols(); ++j) {
        int target = inv_b[ca.sort_pos[j]];
        w.col_perm[j] = target;
        // scalar making T a_j equal b_target exactly
        code_t sigma = 0;
        for (int i = 0; i < r; ++i)
            if (ta_full.at(i, j) != 0) {
                sigma = f.div(b.at(i, target), ta_full.at(i, j));
                break;
            }
        if (sigma == 0) return std::nullopt;
        for (int i = 0; i < r; ++i)
            if (f.mul(sigma, ta_full.at(i, j)) != b.at(i, target)) return std::nullopt;
        w.col_scale[j] = sigma;
    }
    return w;
}

}  // namespace gfq
