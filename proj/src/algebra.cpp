#include "gfq/algebra.hpp"

#include <algorithm>

namespace gfq {

Mat TowerContext::combine(const Mat& a, const Mat& b) const {
    if (a.rows() != b.rows() || a.cols() != b.cols() || &a.field() != &b.field() ||
        &a.field() != &base())
        throw std::invalid_argument("combine expects equal-shape matrices over the base field");
    Mat r(*ext, a.rows(), a.cols());
    const code_t w = omega();
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.at(i, j) = ext->add(ext->embed(a.at(i, j)), ext->mul(w, ext->embed(b.at(i, j))));
    return r;
}

std::pair<Mat, Mat> TowerContext::split(const Mat& m) const {
    if (&m.field() != ext) throw std::invalid_argument("split expects an extension matrix");
    Mat u(base(), m.rows(), m.cols()), v(base(), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            auto uv = ext->decompose(m.at(i, j));
            u.at(i, j) = uv.first;
            v.at(i, j) = uv.second;
        }
    return {u, v};
}

Subspace l_subspace(const Field& ext, const std::vector<code_t>& w) {
    const Field& b = ext.base();
    Mat rows(b, 2, int(w.size()));
    for (size_t i = 0; i < w.size(); ++i) {
        auto uv = ext.decompose(w[i]);
        rows.at(0, int(i)) = uv.first;
        rows.at(1, int(i)) = uv.second;
    }
    return Subspace::span_rows(rows);
}

ConfineResult confine_pg(const Mat& a, int n, int q) {
    if (n < 3) throw std::invalid_argument("confinement needs rank at least 3");
    if (a.rows() != n) throw std::invalid_argument("row count does not match the stated rank");
    const Field& f = a.field();

    if (int(f.size()) == q) {
        ConfineResult res{Mat::identity(f, n), std::vector<code_t>(a.cols(), 1), a};
        if (!RepMatroid(a).is_pg(n, q)) throw VerificationError("input is not a PG representation");
        return res;
    }
    if (!f.is_quadratic_extension() || int(f.base().size()) != q)
        throw std::invalid_argument("field has no GF(q) subfield available here");

    // already confined?
    bool sub = true;
    for (int i = 0; i < a.rows() && sub; ++i)
        for (int j = 0; j < a.cols() && sub; ++j) sub = f.in_subfield(a.at(i, j));
    if (sub) {
        ConfineResult res{Mat::identity(f, n), std::vector<code_t>(a.cols(), 1), a.confined_to_base()};
        if (!RepMatroid(res.confined).is_pg(n, q)) throw VerificationError("input is not a PG representation");
        return res;
    }

    // frame: lexicographically first column basis, plus the first column with
    // all coordinates nonzero in that basis
    EchelonAccum acc(f, n);
    std::vector<int> basis;
    for (int j = 0; j < a.cols() && int(basis.size()) < n; ++j)
        if (acc.push(a, j)) basis.push_back(j);
    if (int(basis.size()) != n) throw VerificationError("input does not span: not a PG representation");

    Mat bmat = a.cols_subset(basis);
    bmat.labels.clear();
    std::optional<std::vector<code_t>> lam;
    for (int j = 0; j < a.cols(); ++j) {
        auto x = solve(bmat, a.col(j));
        if (!x) continue;
        bool full = std::all_of(x->begin(), x->end(), [](code_t c) { return c != 0; });
        if (full) {
            lam = x;
            break;
        }
    }
    if (!lam) throw VerificationError("no frame column found: not a PG representation");

    Mat bl = bmat;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) bl.at(i, j) = f.mul(bl.at(i, j), (*lam)[j]);
    Mat t = inverse(bl);

    Mat moved = t.mul(a);
    std::vector<code_t> scale(a.cols(), 1);
    for (int j = 0; j < a.cols(); ++j) {
        std::vector<code_t> col = moved.col(j);
        scale[j] = normalize_vector(f, col);
        moved.set_col(j, col);
    }
    Mat confined(f.base(), n, a.cols());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < a.cols(); ++j) {
            auto uv = f.decompose(moved.at(i, j));
            if (uv.second != 0)
                throw VerificationError("confinement failed: an entry escapes the subfield");
            confined.at(i, j) = uv.first;
        }
    confined.labels = a.labels;
    if (!RepMatroid(confined).is_pg(n, q)) throw VerificationError("confined matrix is not a PG representation");
    return {t, scale, confined};
}

std::vector<code_t> subfield_vector_in_span(const Subspace& v_base, const Subspace& u_ext) {
    const Field& ext = u_ext.field();
    const Field& base = ext.base();
    if (&v_base.field() != &base) throw std::invalid_argument("V must live over the base field");
    if (v_base.ambient() != u_ext.ambient()) throw std::invalid_argument("ambient mismatch");
    const int h = v_base.dim();
    const int j = u_ext.dim();
    const int t = v_base.ambient();
    if (2 * j <= h) throw std::invalid_argument("need 2 dim(U) > dim(V)");

    Mat bv = v_base.basis().embedded_into(ext).transpose();  // t x h over ext
    // phi-coordinates of the base-field basis of U: rows u_i and omega * u_i
    const code_t w = code_t(base.size());
    Mat phi_rows(base, 2 * j, 2 * h);
    for (int r = 0; r < j; ++r) {
        std::vector<code_t> u = u_ext.basis().row(r);
        std::vector<code_t> uw(t);
        for (int i = 0; i < t; ++i) uw[i] = ext.mul(w, u[i]);
        for (int copy = 0; copy < 2; ++copy) {
            const std::vector<code_t>& vec = copy == 0 ? u : uw;
            auto x = solve(bv, vec);
            if (!x) throw std::invalid_argument("U is not contained in span_F(V)");
            for (int i = 0; i < h; ++i) {
                auto uv = ext.decompose((*x)[i]);
                phi_rows.at(2 * r + copy, i) = uv.first;
                phi_rows.at(2 * r + copy, h + i) = uv.second;
            }
        }
    }
    Subspace phi_u = Subspace::span_rows(phi_rows);
    Mat mu_zero(base, h, 2 * h);
    for (int i = 0; i < h; ++i) mu_zero.at(i, i) = 1;
    Subspace phi_v = Subspace::span_rows(mu_zero);
    Subspace inter = phi_u.intersect(phi_v);
    if (inter.dim() == 0) throw VerificationError("trivial intersection despite 2j > h");

    std::vector<code_t> lambda = inter.basis().row(0);  // (lambda, 0)
    std::vector<code_t> v(t, 0);
    for (int i = 0; i < h; ++i)
        for (int c = 0; c < t; ++c)
            v[c] = base.add(v[c], base.mul(lambda[i], v_base.basis().at(i, c)));

    // conclusion recheck: nonzero, in V, and in U after embedding
    bool nz = std::any_of(v.begin(), v.end(), [](code_t c) { return c != 0; });
    if (!nz || !v_base.contains(v)) throw VerificationError("constructed vector left V");
    std::vector<code_t> vext(t);
    for (int i = 0; i < t; ++i) vext[i] = ext.embed(v[i]);
    if (!u_ext.contains(vext)) throw VerificationError("constructed vector left U");
    return v;
}

Mat realify_rows(const Mat& a, const Mat& b, int h, const Field& ext) {
    TowerContext tc(ext);
    const Field& base = tc.base();
    if (&a.field() != &base || &b.field() != &base) throw std::invalid_argument("A, B must be over the base field");
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
    const int d = a.rows();
    if (h < 0 || h > d) throw std::invalid_argument("need 0 <= h <= d");

    Mat w = tc.combine(a, b);
    if (rank_of(w) != d) throw std::invalid_argument("rank(A + omega B) must equal d");
    Mat stacked = a.vstack(b);
    stacked.labels.clear();
    if (rank_of(stacked) != 2 * d - h) throw std::invalid_argument("rank(A; B) must equal 2d - h");

    Mat k = left_kernel(stacked);  // h x 2d over the base field, canonical RREF
    Mat q(ext, h, d);
    const code_t omega = tc.omega();
    const code_t shift = ext.sub(omega, ext.embed(ext.ext_t()));
    for (int i = 0; i < h; ++i)
        for (int jcol = 0; jcol < d; ++jcol) {
            code_t q1 = ext.embed(k.at(i, jcol));
            code_t q2 = ext.embed(k.at(i, d + jcol));
            q.at(i, jcol) = ext.add(ext.mul(shift, q1), q2);
        }

    // conclusion recheck
    if (rank_of(q) != h) throw VerificationError("realified Q does not have rank h");
    Mat prod = q.mul(w);
    for (int i = 0; i < h; ++i)
        for (int jcol = 0; jcol < prod.cols(); ++jcol)
            if (!ext.in_subfield(prod.at(i, jcol)))
                throw VerificationError("Q(A + omega B) escapes the base field");
    return q;
}

std::pair<Mat, Mat> zero_rows_normalize(const Mat& a, const Mat& b, const Mat& p, int h,
                                        const Field& ext) {
    TowerContext tc(ext);
    const Field& base = tc.base();
    if (&a.field() != &base || &b.field() != &base || &p.field() != &base)
        throw std::invalid_argument("A, B, P must be over the base field");
    const int d = a.rows(), n = a.cols(), m = p.rows();
    if (b.rows() != d || b.cols() != n || p.cols() != n) throw std::invalid_argument("shape mismatch");
    if (h < 0 || h > d) throw std::invalid_argument("need 0 <= h <= d");

    Mat w = tc.combine(a, b);
    Mat pe = p.embedded_into(ext);
    pe.labels.clear();
    Mat top_stack = w.vstack(pe);
    top_stack.labels.clear();
    if (rank_of(top_stack) != m + d) throw std::invalid_argument("rank((A + omega B); P) must equal m + d");
    if (rank_of(p) != m) throw std::invalid_argument("rank(P) must equal m");
    {
        Mat abp = a.vstack(b).vstack(p);
        abp.labels.clear();
        if (rank_of(abp) > m + 2 * d - h)
            throw std::invalid_argument("rank(A; B; P) must be at most m + 2d - h");
    }

    bool b_zero = true;
    for (int i = 0; i < d && b_zero; ++i)
        for (int jc = 0; jc < n && b_zero; ++jc) b_zero = b.at(i, jc) == 0;
    if (h == 0 || b_zero) return {a, b};

    // reduce A and B modulo the row space of P
    RrefResult pr = rref(p);
    auto reduce_rows = [&](const Mat& src) {
        Mat r = src;
        for (int i = 0; i < r.rows(); ++i)
            for (size_t pi = 0; pi < pr.pivots.size(); ++pi) {
                code_t c = r.at(i, pr.pivots[pi]);
                if (c == 0) continue;
                for (int jc = 0; jc < n; ++jc)
                    r.at(i, jc) = base.sub(r.at(i, jc), base.mul(c, pr.mat.at(int(pi), jc)));
            }
        return r;
    };
    Mat ared = reduce_rows(a), bred = reduce_rows(b);
    Mat wred = tc.combine(ared, bred);
    if (rank_of(wred) != d) throw VerificationError("reduced block lost rank");
    Mat stacked = ared.vstack(bred);
    stacked.labels.clear();
    const int hprime = 2 * d - rank_of(stacked);
    if (hprime < h) throw VerificationError("reduced block admits fewer zero rows than required");

    Mat q = realify_rows(ared, bred, hprime, ext);  // h' x d, rank h'
    // complete Q to an invertible d x d matrix over the extension
    Mat s = q;
    EchelonAccum acc(ext, d);
    Mat qt = q.transpose();
    for (int jc = 0; jc < qt.cols(); ++jc) acc.push(qt, jc);
    for (int i = 0; i < d && s.rows() < d; ++i) {
        std::vector<code_t> e(d, 0);
        e[i] = 1;
        if (acc.push(e)) {
            Mat row(ext, 1, d);
            for (int jc = 0; jc < d; ++jc) row.at(0, jc) = e[jc];
            s = s.vstack(row);
        }
    }
    if (s.rows() != d || !is_invertible(s)) throw VerificationError("completion to an invertible transform failed");

    Mat m2 = s.mul(wred);
    auto parts = tc.split(m2);
    Mat& a2 = parts.first;
    Mat& b2 = parts.second;

    // conclusion recheck: zero rows first, and equal stacked row spaces
    for (int i = 0; i < h; ++i)
        for (int jc = 0; jc < n; ++jc)
            if (b2.at(i, jc) != 0) throw VerificationError("B' is missing a required zero row");
    Mat lhs = tc.combine(a2, b2).vstack(pe);
    lhs.labels.clear();
    RrefResult r1 = rref(lhs), r2 = rref(top_stack);
    std::vector<int> keep1(r1.rank), keep2(r2.rank);
    for (int i = 0; i < r1.rank; ++i) keep1[i] = i;
    for (int i = 0; i < r2.rank; ++i) keep2[i] = i;
    if (!(r1.mat.rows_subset(keep1) == r2.mat.rows_subset(keep2)))
        throw VerificationError("stacked row spaces differ after normalization");
    return {a2, b2};
}

}  // namespace gfq
