#include "gfq/geometry.hpp"

#include <algorithm>

namespace gfq {

const Field& field_for_order(int q) {
    if (q < 2) throw std::invalid_argument("field order must be at least 2");
    int p = 2;
    while (q % p != 0) {
        ++p;
        if (p * p > q) {
            p = q;
            break;
        }
    }
    int k = 0;
    int v = q;
    while (v > 1) {
        if (v % p != 0) throw std::invalid_argument("field order must be a prime power");
        v /= p;
        ++k;
    }
    return Field::get(p, k);
}

namespace {

std::vector<std::string> numbered(const char* prefix, int count, int from = 1) {
    std::vector<std::string> l;
    l.reserve(count);
    for (int i = 0; i < count; ++i) l.push_back(prefix + std::to_string(from + i));
    return l;
}

// all normalized representatives of F^n in lexicographic order (row 0 most
// significant)
std::vector<std::vector<code_t>> projective_points(const Field& f, int n) {
    std::vector<std::vector<code_t>> pts;
    std::vector<code_t> v(n, 0);
    for (;;) {
        int i = n - 1;
        while (i >= 0 && v[i] == f.size() - 1) {
            v[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++v[i];
        // normalized iff the first nonzero entry is 1
        for (int j = 0; j < n; ++j) {
            if (v[j] == 0) continue;
            if (v[j] == 1) pts.push_back(v);
            break;
        }
    }
    return pts;
}

}  // namespace

FamilyMatrix pg_matrix(int n, int q, const Bounds& bounds) {
    if (n < 1) throw std::invalid_argument("rank must be positive");
    const Field& f = field_for_order(q);
    long count = pg_point_count(n, q);
    if (count > 4096) throw SizeBoundError("projective geometry too large");
    (void)bounds;
    auto pts = projective_points(f, n);
    Mat m(f, n, int(pts.size()));
    for (int j = 0; j < int(pts.size()); ++j) m.set_col(j, pts[j]);
    m.labels = numbered("p", int(pts.size()));
    FamilyMatrix fm{FamilyKind::PG, n, q, std::move(m), {}, -1, -1, -1};
    verify_family(fm);
    return fm;
}

FamilyMatrix ag_matrix(int h, int q, const Bounds& bounds) {
    if (h < 1) throw std::invalid_argument("h must be positive");
    FamilyMatrix pg = pg_matrix(h + 1, q, bounds);
    std::vector<int> keep;
    for (int j = 0; j < pg.mat.cols(); ++j)
        if (pg.mat.at(0, j) == 1) keep.push_back(j);
    Mat m = pg.mat.cols_subset(keep);
    m.labels = numbered("a", int(keep.size()));
    FamilyMatrix fm{FamilyKind::AG, h, q, std::move(m), {}, -1, -1, -1};
    verify_family(fm);
    return fm;
}

FamilyMatrix hat_matrix(int n, int q, const Bounds& bounds) {
    if (n < 2) throw std::invalid_argument("hat family needs rank at least 2");
    const Field& base = field_for_order(q);
    const Field& ext = Field::quadratic_extension(base);
    FamilyMatrix tail = pg_matrix(n - 1, q, bounds);
    long cols = 1 + long(q) * q * tail.mat.cols();
    if (cols > 4096) throw SizeBoundError("hat family too large");

    Mat m(ext, n, int(cols));
    // rational base point first
    m.at(0, 0) = 1;
    int j = 1;
    const code_t w = code_t(base.size());
    for (std::uint32_t s = 0; s < base.size(); ++s)
        for (std::uint32_t t = 0; t < base.size(); ++t) {
            code_t head = ext.add(ext.embed(code_t(s)), ext.mul(w, ext.embed(code_t(t))));
            for (int a = 0; a < tail.mat.cols(); ++a, ++j) {
                m.at(0, j) = head;
                for (int i = 0; i < n - 1; ++i) m.at(i + 1, j) = ext.embed(tail.mat.at(i, a));
            }
        }
    m.labels = numbered("h", int(cols), 0);
    FamilyMatrix fm{FamilyKind::HAT, n, q, std::move(m), {}, -1, -1, 0};
    verify_family(fm);
    return fm;
}

FamilyMatrix bar_matrix(int n, int q, const Bounds& bounds) {
    if (n < 3) throw std::invalid_argument("bar family needs rank at least 3");
    const Field& base = field_for_order(q);
    const Field& ext = Field::quadratic_extension(base);
    FamilyMatrix pg = pg_matrix(n, q, bounds);
    const int qq = q * q;
    long cols = qq + pg.mat.cols();
    if (cols > 4096) throw SizeBoundError("bar family too large");

    Mat m(ext, n, int(cols));
    const code_t w = code_t(base.size());
    // x_{L0} = e1 + omega e2
    m.at(0, 0) = 1;
    m.at(1, 0) = w;
    int j = 1;
    for (std::uint32_t alpha = 1; alpha < ext.size(); ++alpha, ++j) {
        m.at(0, j) = code_t(alpha);
        m.at(1, j) = ext.mul(w, code_t(alpha));
        m.at(2, j) = 1;
    }
    for (int a = 0; a < pg.mat.cols(); ++a, ++j)
        for (int i = 0; i < n; ++i) m.at(i, j) = ext.embed(pg.mat.at(i, a));

    m.labels = numbered("x", qq);
    auto plabels = numbered("p", pg.mat.cols());
    m.labels.insert(m.labels.end(), plabels.begin(), plabels.end());

    FamilyMatrix fm{FamilyKind::BAR, n, q, std::move(m), {}, 0, -1, -1};
    for (int c = 0; c < qq; ++c) fm.x_set.push_back(c);
    // f = the block column equal to e3
    for (int a = 0; a < pg.mat.cols(); ++a) {
        bool e3 = pg.mat.at(2, a) == 1;
        for (int i = 0; i < n && e3; ++i)
            if (i != 2) e3 = pg.mat.at(i, a) == 0;
        if (e3) {
            fm.f_col = qq + a;
            break;
        }
    }
    verify_family(fm);
    return fm;
}

FamilyMatrix obstruction_member(int q, const Bounds& bounds) {
    const Field& base = field_for_order(q);
    const Field& ext = Field::quadratic_extension(base);
    const code_t w = code_t(base.size());
    Mat a(ext, 3, 3);
    if (q == 2) {
        // columns (1, w, 0), (0, 1, w), (1, 0, w)
        a.at(0, 0) = 1;
        a.at(1, 0) = w;
        a.at(0, 1) = 0;
        a.at(1, 1) = 1;
        a.at(2, 1) = w;
        a.at(0, 2) = 1;
        a.at(2, 2) = w;
    } else {
        auto all = obstruction_enumerate(q, bounds);
        if (all.empty()) throw VerificationError("no obstruction member exists");
        a = all.front();
    }
    FamilyMatrix g3 = pg_matrix(3, q, bounds);
    a.labels = numbered("x", 3);
    Mat m = a.hstack(g3.mat.embedded_into(ext));
    FamilyMatrix fm{FamilyKind::OBSTRUCTION, 3, q, std::move(m), {0, 1, 2}, -1, -1, -1};
    verify_family(fm);
    return fm;
}

std::vector<Mat> obstruction_enumerate(int q, const Bounds&) {
    if (q != 2 && q != 3) throw SizeBoundError("obstruction enumeration supported for q in {2, 3}");
    const Field& base = field_for_order(q);
    const Field& ext = Field::quadratic_extension(base);

    // normalized extension points with 2-dimensional L-subspace
    std::vector<std::vector<code_t>> pts;
    for (const auto& v : projective_points(ext, 3))
        if (l_subspace(ext, v).dim() == 2) pts.push_back(v);

    std::vector<Mat> out;
    const int np = int(pts.size());
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < np; ++j) {
            if (j == i) continue;
            Subspace lij = l_subspace(ext, pts[i]).intersect(l_subspace(ext, pts[j]));
            for (int k = 0; k < np; ++k) {
                if (k == i || k == j) continue;
                Mat a(ext, 3, 3);
                a.set_col(0, pts[i]);
                a.set_col(1, pts[j]);
                a.set_col(2, pts[k]);
                if (rank_of(a) != 3) continue;
                if (lij.intersect(l_subspace(ext, pts[k])).dim() != 0) continue;
                out.push_back(std::move(a));
            }
        }
    return out;
}

void verify_family(const FamilyMatrix& fm) {
    const Mat& m = fm.mat;
    const Field& f = m.field();
    switch (fm.kind) {
        case FamilyKind::PG: {
            if (m.cols() != pg_point_count(fm.n, fm.q)) throw VerificationError("wrong projective point count");
            if (rank_of(m) != fm.n) throw VerificationError("PG matrix has wrong rank");
            for (int j = 0; j < m.cols(); ++j) {
                std::vector<code_t> v = m.col(j);
                std::vector<code_t> nv = v;
                normalize_vector(f, nv);
                if (nv != v) throw VerificationError("PG column not normalized");
                if (j > 0 && !(m.col(j - 1) < v)) throw VerificationError("PG columns out of order");
            }
            break;
        }
        case FamilyKind::AG: {
            long want = 1;
            for (int i = 0; i < fm.n; ++i) want *= fm.q;
            if (m.cols() != want) throw VerificationError("wrong affine point count");
            if (rank_of(m) != fm.n + 1) throw VerificationError("AG matrix has wrong rank");
            for (int j = 0; j < m.cols(); ++j)
                if (m.at(0, j) != 1) throw VerificationError("AG column without leading 1");
            break;
        }
        case FamilyKind::HAT: {
            const Field& base = f.base();
            const int n = fm.n, q = fm.q;
            if (m.cols() != 1 + long(q) * q * pg_point_count(n - 1, q))
                throw VerificationError("wrong hat column count");
            if (rank_of(m) != n) throw VerificationError("hat matrix has wrong rank");
            RepMatroid mm(m);
            if (mm.epsilon() != m.cols() || !mm.loops().empty())
                throw VerificationError("hat matrix is not simple");
            // parallel coverage: every nonzero vector whose entries below the
            // first row lie in the subfield is parallel to a column
            std::vector<code_t> v(n, 0);
            std::vector<std::vector<code_t>> cols;
            for (int j = 0; j < m.cols(); ++j) {
                auto c = m.col(j);
                normalize_vector(f, c);
                cols.push_back(c);
            }
            std::sort(cols.begin(), cols.end());
            long tails = 1;
            for (int i = 0; i < n - 1; ++i) tails *= base.size();
            for (std::uint32_t head = 0; head < f.size(); ++head)
                for (long tl = 0; tl < tails; ++tl) {
                    v[0] = code_t(head);
                    long x = tl;
                    bool zero = head == 0;
                    for (int i = 1; i < n; ++i) {
                        v[i] = f.embed(code_t(x % base.size()));
                        zero &= v[i] == 0;
                        x /= base.size();
                    }
                    if (zero) continue;
                    std::vector<code_t> nv = v;
                    normalize_vector(f, nv);
                    if (!std::binary_search(cols.begin(), cols.end(), nv))
                        throw VerificationError("hat coverage property fails");
                }
            break;
        }
        case FamilyKind::BAR: {
            const int n = fm.n, q = fm.q;
            if (int(fm.x_set.size()) != q * q) throw VerificationError("bar X block has wrong size");
            if (m.cols() != q * q + pg_point_count(n, q)) throw VerificationError("wrong bar column count");
            if (rank_of(m) != n) throw VerificationError("bar matrix has wrong rank");
            RepMatroid mm(m);
            if (mm.epsilon() != m.cols() || !mm.loops().empty())
                throw VerificationError("bar matrix is not simple");
            if (fm.x_l0 < 0 || fm.f_col < 0) throw VerificationError("bar distinguished columns missing");
            // the closure of {x_L0, f} is a (q^2+1)-point line equal to X u {f}
            std::vector<int> line = mm.closure({fm.x_l0, fm.f_col});
            if (int(line.size()) != q * q + 1) throw VerificationError("bar line has wrong point count");
            std::vector<int> expect = fm.x_set;
            expect.push_back(fm.f_col);
            std::sort(expect.begin(), expect.end());
            std::vector<int> got = line;
            std::sort(got.begin(), got.end());
            if (got != expect) throw VerificationError("bar line is not X u {f}");
            // the non-X block is a full projective geometry over the subfield
            std::vector<int> pg_cols;
            for (int j = q * q; j < m.cols(); ++j) pg_cols.push_back(j);
            if (!RepMatroid(m.cols_subset(pg_cols)).is_pg(n, q))
                throw VerificationError("bar PG block check fails");
            break;
        }
        case FamilyKind::OBSTRUCTION: {
            const int q = fm.q;
            if (int(fm.x_set.size()) != 3) throw VerificationError("obstruction needs a 3-element X");
            if (m.cols() != 3 + pg_point_count(3, q)) throw VerificationError("wrong obstruction size");
            if (rank_of(m) != 3) throw VerificationError("obstruction member must have rank 3");
            Mat a = m.cols_subset(fm.x_set);
            if (rank_of(a) != 3) throw VerificationError("extension triple is dependent");
            Subspace common = l_subspace(f, a.col(0));
            for (int j = 0; j < 3; ++j) {
                Subspace l = l_subspace(f, a.col(j));
                if (l.dim() != 2) throw VerificationError("an L-subspace has dimension != 2");
                common = common.intersect(l);
            }
            if (common.dim() != 0) throw VerificationError("the three L-subspaces meet nontrivially");
            break;
        }
    }
}

std::optional<ObstructionWitness> verify_obstruction(const Mat& w_in) {
    const Field& f = w_in.field();
    if (!f.is_quadratic_extension()) return std::nullopt;
    const int q = int(f.base().size());

    // compress to the row space: same represented matroid, full row rank
    RrefResult rr = rref(w_in);
    if (rr.rank != 3) return std::nullopt;
    std::vector<int> keep(3);
    for (int i = 0; i < 3; ++i) keep[i] = i;
    Mat w = rr.mat.rows_subset(keep);

    if (w.cols() != 3 + pg_point_count(3, q)) return std::nullopt;
    RepMatroid mm(w);
    if (mm.epsilon() != w.cols() || !mm.loops().empty()) return std::nullopt;

    const int n = w.cols();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                std::vector<int> rest;
                for (int c = 0; c < n; ++c)
                    if (c != i && c != j && c != k) rest.push_back(c);
                Mat plane = w.cols_subset(rest);
                plane.labels.clear();
                ConfineResult conf;
                try {
                    conf = confine_pg(plane, 3, q);
                } catch (const std::exception&) {
                    continue;
                }
                Mat a = conf.row_transform.mul(w.cols_subset({i, j, k}));
                if (rank_of(a) != 3) continue;
                Subspace common = l_subspace(f, a.col(0));
                bool ok = true;
                for (int c = 0; c < 3 && ok; ++c) {
                    Subspace l = l_subspace(f, a.col(c));
                    ok = l.dim() == 2;
                    common = common.intersect(l);
                }
                if (!ok || common.dim() != 0) continue;
                return ObstructionWitness{{i, j, k}, conf.row_transform};
            }
    return std::nullopt;
}

Mat hat_abstract_route(int n, int q) {
    const Field& base = field_for_order(q);
    const Field& ext = Field::quadratic_extension(base);
    FamilyMatrix big = pg_matrix(n + 1, q);
    Mat b = big.mat.embedded_into(ext);
    // append v = b1 - omega b2 and contract it
    Mat bp(ext, n + 1, b.cols() + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < b.cols(); ++j) bp.at(i, j) = b.at(i, j);
    const code_t w = code_t(base.size());
    bp.at(0, b.cols()) = 1;
    bp.at(1, b.cols()) = ext.neg(w);
    bp.labels = b.labels;
    bp.labels.push_back("v");
    RepMatroid m(bp);
    RepMatroid contracted = m.minor({}, {m.index_of("v")});
    return contracted.simplify().mat();
}

}  // namespace gfq
