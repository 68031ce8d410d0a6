#include "gfq/regularity.hpp"

#include <algorithm>

namespace gfq {

namespace {

std::vector<Subspace> column_l_subspaces(const Mat& a) {
    std::vector<Subspace> ls;
    ls.reserve(a.cols());
    for (int j = 0; j < a.cols(); ++j) ls.push_back(l_subspace(a.field(), a.col(j)));
    return ls;
}

Mat combine_instance(const Mat& a, const Mat& g) {
    Mat ge = g.embedded_into(a.field());
    if (a.cols() == 0) return ge;
    Mat w = a.hstack(ge);
    if (w.labels.empty()) {
        // synthesize distinct labels: extension block then PG block
        for (int j = 0; j < a.cols(); ++j) w.labels.push_back("y" + std::to_string(j + 1));
        for (int j = 0; j < g.cols(); ++j) w.labels.push_back("g" + std::to_string(j + 1));
    }
    return w;
}

/// GF(q) transform sending the rows of each listed subspace basis to
/// consecutive standard basis vectors, completed greedily.
Mat base_change_to_standard(const Field& base, int t, const std::vector<std::vector<code_t>>& front) {
    Mat cols(base, t, 0);
    EchelonAccum acc(base, t);
    std::vector<std::vector<code_t>> chosen;
    for (const auto& v : front) {
        if (!acc.push(v)) throw VerificationError("base change rows are dependent");
        chosen.push_back(v);
    }
    for (int i = 0; i < t && int(chosen.size()) < t; ++i) {
        std::vector<code_t> e(t, 0);
        e[i] = 1;
        if (acc.push(e)) chosen.push_back(e);
    }
    Mat m(base, t, t);
    for (int j = 0; j < t; ++j)
        for (int i = 0; i < t; ++i) m.at(i, j) = chosen[j][i];
    return inverse(m);
}

}  // namespace

std::optional<BadnessCertificate> q_badness(const Mat& a, int t) {
    if (t < 3) throw std::invalid_argument("badness test needs ambient rank at least 3");
    if (a.rows() != t) throw std::invalid_argument("extension block has wrong row count");
    auto ls = column_l_subspaces(a);
    const int n = a.cols();

    for (int i = 0; i < n; ++i) {
        if (ls[i].dim() != 2) continue;
        for (int j = i + 1; j < n; ++j) {
            if (ls[j].dim() != 2) continue;
            if (ls[i].intersect(ls[j]).dim() != 0) continue;
            if (rank_of(a.cols_subset({i, j})) != 2) continue;
            return BadnessCertificate{{i, j}, true};
        }
    }
    for (int i = 0; i < n; ++i) {
        if (ls[i].dim() != 2) continue;
        for (int j = i + 1; j < n; ++j) {
            if (ls[j].dim() != 2) continue;
            Subspace lij = ls[i].intersect(ls[j]);
            for (int k = j + 1; k < n; ++k) {
                if (ls[k].dim() != 2) continue;
                if (lij.intersect(ls[k]).dim() != 0) continue;
                if (rank_of(a.cols_subset({i, j, k})) != 3) continue;
                return BadnessCertificate{{i, j, k}, false};
            }
        }
    }
    return std::nullopt;
}

bool verify_badness(const Mat& a, const BadnessCertificate& cert) {
    const size_t zs = cert.z.size();
    if (zs != 2 && zs != 3) return false;
    if (cert.strong != (zs == 2)) return false;
    for (int z : cert.z)
        if (z < 0 || z >= a.cols()) return false;
    if (rank_of(a.cols_subset(cert.z)) != int(zs)) return false;
    std::optional<Subspace> common;
    for (int z : cert.z) {
        Subspace l = l_subspace(a.field(), a.col(z));
        if (l.dim() != 2) return false;
        common = common ? common->intersect(l) : l;
    }
    return common->dim() == 0;
}

EmbeddingCertificate embed_certificate(const Mat& a, const Mat& g) {
    const Field& ext = a.field();
    const Field& base = ext.base();
    const int t = a.rows();
    const int q = int(base.size());
    if (g.rows() != t || &g.field() != &base) throw std::invalid_argument("PG block mismatch");

    auto ls = column_l_subspaces(a);
    std::vector<int> yprime;
    for (int j = 0; j < a.cols(); ++j)
        if (ls[j].dim() == 2) yprime.push_back(j);

    EmbeddingCertificate cert;
    Mat t_base = Mat::identity(base, t);

    if (!yprime.empty()) {
        Subspace common = ls[yprime[0]];
        for (int j : yprime) common = common.intersect(ls[j]);
        if (common.dim() >= 1) {
            // hat case: send a common direction to the first standard vector
            std::vector<code_t> d = common.basis().row(0);
            t_base = base_change_to_standard(base, t, {d});
            cert.target = FamilyKind::HAT;
        } else {
            // bar case: all L-subspaces lie in a plane P; the extension block
            // spans a 2-dimensional line over GF(q^2) with one rational point
            Subspace p = ls[yprime[0]];
            for (int j : yprime) p = p.sum(ls[j]);
            if (p.dim() != 3) throw VerificationError("non-bad block without a common plane");
            Mat span_rows(ext, int(yprime.size()), t);
            for (size_t r = 0; r < yprime.size(); ++r)
                for (int i = 0; i < t; ++i) span_rows.at(int(r), i) = a.at(i, yprime[r]);
            Subspace l0 = Subspace::span_rows(span_rows);
            if (l0.dim() != 2) throw VerificationError("non-bad block spans more than a line");
            std::vector<code_t> v = subfield_vector_in_span(p, l0);

            // basis (p1, p2, v) of P, v third
            std::vector<std::vector<code_t>> front;
            EchelonAccum acc(base, t);
            acc.push(v);
            for (int r = 0; r < 3 && int(front.size()) < 2; ++r)
                if (acc.push(p.basis().row(r))) front.push_back(p.basis().row(r));
            if (front.size() != 2) throw VerificationError("plane completion failed");
            front.push_back(v);
            Mat t1 = base_change_to_standard(base, t, front);

            // direction of the line modulo e3 in the transformed coordinates
            std::vector<code_t> vext(t);
            for (int i = 0; i < t; ++i) vext[i] = ext.embed(v[i]);
            int w0 = -1;
            for (int j : yprime)
                if (!vectors_parallel(ext, a.col(j), vext)) {
                    w0 = j;
                    break;
                }
            if (w0 < 0) throw VerificationError("line has no second direction");
            Mat t1e = t1.embedded_into(ext);
            std::vector<code_t> wv(t, 0);
            for (int i = 0; i < t; ++i) {
                code_t acc2 = 0;
                for (int k = 0; k < t; ++k) acc2 = ext.add(acc2, ext.mul(t1e.at(i, k), a.at(k, w0)));
                wv[i] = acc2;
            }
            code_t aa = wv[0], cc = wv[1];
            if (aa == 0 && cc == 0) throw VerificationError("direction collapsed onto e3");

            // GL2(q) element sending the direction (a : c) to (1 : omega);
            // identity when the direction already matches
            const code_t omega = code_t(base.size());
            Mat m2 = Mat::identity(base, 2);
            bool found = cc == ext.mul(omega, aa);
            for (std::uint32_t m00 = 0; m00 < base.size() && !found; ++m00)
                for (std::uint32_t m01 = 0; m01 < base.size() && !found; ++m01)
                    for (std::uint32_t m10 = 0; m10 < base.size() && !found; ++m10)
                        for (std::uint32_t m11 = 0; m11 < base.size() && !found; ++m11) {
                            code_t det = base.sub(base.mul(code_t(m00), code_t(m11)),
                                                  base.mul(code_t(m01), code_t(m10)));
                            if (det == 0) continue;
                            code_t na = ext.add(ext.mul(ext.embed(code_t(m00)), aa),
                                                ext.mul(ext.embed(code_t(m01)), cc));
                            code_t nc = ext.add(ext.mul(ext.embed(code_t(m10)), aa),
                                                ext.mul(ext.embed(code_t(m11)), cc));
                            if (na == 0) continue;
                            if (nc == ext.mul(omega, na)) {
                                m2.at(0, 0) = code_t(m00);
                                m2.at(0, 1) = code_t(m01);
                                m2.at(1, 0) = code_t(m10);
                                m2.at(1, 1) = code_t(m11);
                                found = true;
                            }
                        }
            if (!found) throw VerificationError("no subfield transform fixes the line direction");
            Mat t2 = Mat::identity(base, t);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) t2.at(i, j) = m2.at(i, j);
            t_base = t2.mul(t1);
            cert.target = FamilyKind::BAR;
        }
    } else {
        cert.target = FamilyKind::HAT;
    }

    FamilyMatrix target = cert.target == FamilyKind::HAT ? hat_matrix(t, q) : bar_matrix(t, q);
    Mat w = combine_instance(a, g);
    Mat w2 = t_base.embedded_into(ext).mul(w);

    cert.row_transform = t_base;
    cert.col_scale.assign(w.cols(), 1);
    cert.target_col.assign(w.cols(), -1);
    for (int j = 0; j < w.cols(); ++j) {
        std::vector<code_t> col = w2.col(j);
        bool loop = std::all_of(col.begin(), col.end(), [](code_t c) { return c == 0; });
        if (loop) continue;
        bool matched = false;
        for (int tc = 0; tc < target.mat.cols() && !matched; ++tc) {
            std::vector<code_t> tcol = target.mat.col(tc);
            if (!vectors_parallel(ext, col, tcol)) continue;
            int nz = 0;
            while (col[nz] == 0) ++nz;
            cert.col_scale[j] = ext.div(tcol[nz], col[nz]);
            cert.target_col[j] = tc;
            matched = true;
        }
        if (!matched) throw VerificationError("a column has no parallel target-family column");
    }

    if (!verify_certificate(a, g, cert)) throw VerificationError("embedding certificate failed re-verification");
    return cert;
}

bool verify_certificate(const Mat& a, const Mat& g, const EmbeddingCertificate& cert) {
    const Field& ext = a.field();
    const int t = a.rows();
    const int q = int(ext.base().size());
    if (cert.row_transform.rows() != t || cert.row_transform.cols() != t) return false;
    if (&cert.row_transform.field() != &ext.base()) return false;
    if (!is_invertible(cert.row_transform)) return false;

    Mat w = combine_instance(a, g);
    if (int(cert.col_scale.size()) != w.cols() || int(cert.target_col.size()) != w.cols()) return false;
    FamilyMatrix target;
    try {
        target = cert.target == FamilyKind::HAT ? hat_matrix(t, q) : bar_matrix(t, q);
    } catch (const std::exception&) {
        return false;
    }

    Mat w2 = cert.row_transform.embedded_into(ext).mul(w);
    RepMatroid wm(w);
    for (int j = 0; j < w.cols(); ++j) {
        std::vector<code_t> col = w2.col(j);
        bool loop = std::all_of(col.begin(), col.end(), [](code_t c) { return c == 0; });
        if (loop) {
            if (cert.target_col[j] != -1) return false;
            continue;
        }
        int tc = cert.target_col[j];
        if (tc < 0 || tc >= target.mat.cols()) return false;
        if (cert.col_scale[j] == 0) return false;
        for (int i = 0; i < t; ++i)
            if (ext.mul(cert.col_scale[j], col[i]) != target.mat.at(i, tc)) return false;
    }
    // distinct parallel classes must land on distinct target columns
    const auto& classes = wm.parallel_classes();
    std::vector<int> used;
    for (const auto& cls : classes) {
        int tc = cert.target_col[cls[0]];
        for (int j : cls)
            if (cert.target_col[j] != tc) return false;
        used.push_back(tc);
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end()) return false;
    return true;
}

namespace {

Mat compress_rows(const Mat& m) {
    RrefResult rr = rref(m);
    std::vector<int> keep(rr.rank);
    for (int i = 0; i < rr.rank; ++i) keep[i] = i;
    return rr.mat.rows_subset(keep);
}

OMinorRecipe finish_recipe(const Mat& w, const Mat& t_base, const std::vector<int>& contract,
                           const std::vector<int>& keep) {
    const Field& ext = w.field();
    Mat w2 = t_base.embedded_into(ext).mul(w);
    RepMatroid m(w2);
    RepMatroid contracted = contract.empty() ? m : m.minor({}, contract, /*keep_loops=*/true);
    std::vector<int> keep_sorted = keep;
    std::sort(keep_sorted.begin(), keep_sorted.end());
    RepMatroid member = contracted.restriction(keep_sorted);
    Mat result = compress_rows(member.mat());
    auto witness = verify_obstruction(result);
    if (!witness) throw VerificationError("recipe output failed the obstruction verifier");
    OMinorRecipe r;
    r.row_transform = t_base;
    r.contract = contract;
    r.keep = keep_sorted;
    r.result = result;
    r.witness = *witness;
    return r;
}

}  // namespace

OMinorRecipe o_minor_from_bad(const Mat& a, const Mat& g, const BadnessCertificate& cert) {
    if (!verify_badness(a, cert)) throw VerificationError("badness certificate failed re-verification");
    const Field& ext = a.field();
    const Field& base = ext.base();
    const int t = a.rows();
    Mat w = combine_instance(a, g);

    if (!cert.strong) {
        // restriction to the plane spanned by the three L-subspaces
        Subspace p = l_subspace(ext, a.col(cert.z[0]));
        for (int z : cert.z) p = p.sum(l_subspace(ext, a.col(z)));
        if (p.dim() != 3) throw VerificationError("triple L-subspaces do not span a plane");
        std::vector<int> keep = cert.z;
        for (int j = 0; j < g.cols(); ++j)
            if (p.contains(g.col(j))) keep.push_back(a.cols() + j);
        return finish_recipe(w, Mat::identity(base, t), {}, keep);
    }

    if (t < 4) throw std::invalid_argument("strong recipe needs ambient rank at least 4");
    const int z1 = cert.z[0], z2 = cert.z[1];
    Subspace l1 = l_subspace(ext, a.col(z1));
    Subspace l2 = l_subspace(ext, a.col(z2));
    std::vector<std::vector<code_t>> front = {l1.basis().row(0), l1.basis().row(1),
                                              l2.basis().row(0), l2.basis().row(1)};
    Mat t_base = base_change_to_standard(base, t, front);

    // after the transform: z1 on rows {0,1}, z2 on rows {2,3}
    Mat ge = t_base.mul(g);
    auto in_four_space = [&](int j) {
        for (int i = 4; i < t; ++i)
            if (ge.at(i, j) != 0) return false;
        return true;
    };
    std::vector<int> keep = {z2};
    std::optional<int> special1, special2;  // columns parallel to (1,0,1,0,..), (1,0,0,1,..)
    for (int j = 0; j < g.cols(); ++j) {
        if (!in_four_space(j)) continue;
        std::vector<code_t> col = ge.col(j);
        if (col[0] == 0) {
            keep.push_back(a.cols() + j);
            continue;
        }
        std::vector<code_t> s1(t, 0), s2(t, 0);
        s1[0] = 1;
        s1[2] = 1;
        s2[0] = 1;
        s2[3] = 1;
        if (!special1 && vectors_parallel(base, col, s1)) special1 = a.cols() + j;
        if (!special2 && vectors_parallel(base, col, s2)) special2 = a.cols() + j;
    }
    if (!special1 || !special2) throw VerificationError("expected rational directions are missing");
    keep.push_back(*special1);
    keep.push_back(*special2);
    return finish_recipe(w, t_base, {z1}, keep);
}

OMinorRecipe o_minor_contract_pair(const Mat& a, const Mat& g, const BadnessCertificate& cert) {
    if (!cert.strong) throw std::invalid_argument("contract-pair recipe needs a strong certificate");
    if (!verify_badness(a, cert)) throw VerificationError("badness certificate failed re-verification");
    const Field& ext = a.field();
    const Field& base = ext.base();
    const int t = a.rows();
    if (t < 5) throw std::invalid_argument("contract-pair recipe needs ambient rank at least 5");
    Mat w = combine_instance(a, g);

    const int z1 = cert.z[0], z2 = cert.z[1];
    Subspace l1 = l_subspace(ext, a.col(z1));
    Subspace l2 = l_subspace(ext, a.col(z2));
    std::vector<std::vector<code_t>> front = {l1.basis().row(0), l1.basis().row(1),
                                              l2.basis().row(0), l2.basis().row(1)};
    Mat t_base = base_change_to_standard(base, t, front);

    Mat ge = t_base.mul(g);
    Mat ae = t_base.embedded_into(ext).mul(a);
    auto in_five_space = [&](int j) {
        for (int i = 5; i < t; ++i)
            if (ge.at(i, j) != 0) return false;
        return true;
    };
    // ratios alpha1 = z1[1]/z1[0], alpha2 = z2[3]/z2[2] in the new coordinates
    code_t alpha1 = ext.div(ae.at(1, z1), ae.at(0, z1));
    code_t alpha2 = ext.div(ae.at(3, z2), ae.at(2, z2));

    std::vector<int> candidates;
    std::vector<std::vector<code_t>> images;  // contraction image (3 coords) per candidate
    std::vector<int> pg_block;
    for (int j = 0; j < g.cols(); ++j) {
        if (!in_five_space(j)) continue;
        std::vector<code_t> col = ge.col(j);
        std::vector<code_t> img(3);
        img[0] = ext.sub(ext.embed(col[1]), ext.mul(alpha1, ext.embed(col[0])));
        img[1] = ext.sub(ext.embed(col[3]), ext.mul(alpha2, ext.embed(col[2])));
        img[2] = ext.embed(col[4]);
        if (std::all_of(img.begin(), img.end(), [](code_t c) { return c == 0; })) continue;
        candidates.push_back(a.cols() + j);
        images.push_back(img);
        if (col[0] == 0 && col[2] == 0) pg_block.push_back(a.cols() + j);
    }

    // first triple of contraction images forming an obstruction configuration
    const int nc = int(candidates.size());
    for (int i = 0; i < nc; ++i) {
        Subspace li = l_subspace(ext, images[i]);
        if (li.dim() != 2) continue;
        for (int j = i + 1; j < nc; ++j) {
            Subspace lj = l_subspace(ext, images[j]);
            if (lj.dim() != 2) continue;
            Subspace lij = li.intersect(lj);
            for (int k = j + 1; k < nc; ++k) {
                Subspace lk = l_subspace(ext, images[k]);
                if (lk.dim() != 2) continue;
                if (lij.intersect(lk).dim() != 0) continue;
                Mat trip(ext, 3, 3);
                trip.set_col(0, images[i]);
                trip.set_col(1, images[j]);
                trip.set_col(2, images[k]);
                if (rank_of(trip) != 3) continue;
                std::vector<int> keep = pg_block;
                for (int c : {candidates[i], candidates[j], candidates[k]})
                    if (std::find(keep.begin(), keep.end(), c) == keep.end()) keep.push_back(c);
                try {
                    return finish_recipe(w, t_base, {z1, z2}, keep);
                } catch (const VerificationError&) {
                    continue;  // overlapping choice spoiled the member; try the next triple
                }
            }
        }
    }
    throw VerificationError("no obstruction triple found after contracting the strong pair");
}

Decision decide_structure(const Mat& w, const std::vector<int>& pg_cols) {
    const Field& ext = w.field();
    if (!ext.is_quadratic_extension()) throw std::invalid_argument("input must be over a quadratic extension");
    const int t = w.rows();
    const int q = int(ext.base().size());

    std::vector<char> is_pg_col(w.cols(), 0);
    for (int j : pg_cols) {
        if (j < 0 || j >= w.cols()) throw std::invalid_argument("pg column index out of range");
        is_pg_col[j] = 1;
    }
    std::vector<int> a_cols;
    for (int j = 0; j < w.cols(); ++j)
        if (!is_pg_col[j]) a_cols.push_back(j);

    Mat g_ext = w.cols_subset(pg_cols);
    ConfineResult conf = confine_pg(g_ext, t, q);  // validates the spanning PG block
    bool preprocessed = false;
    for (int i = 0; i < t && !preprocessed; ++i)
        for (int j = 0; j < t && !preprocessed; ++j)
            preprocessed = conf.row_transform.at(i, j) != Mat::identity(ext, t).at(i, j);

    Mat a = conf.row_transform.mul(w.cols_subset(a_cols));

    Decision d;
    d.instance_a = a;
    d.instance_g = conf.confined;
    d.a_cols = a_cols;
    d.g_cols = pg_cols;
    d.preprocessed = preprocessed;

    auto bad = q_badness(a, t);
    if (bad) {
        d.verdict = StructureVerdict::BAD;
        d.bad = bad;
        d.recipe = o_minor_from_bad(a, conf.confined, *bad);
        if (bad->strong && t >= 5) d.moreover = o_minor_contract_pair(a, conf.confined, *bad);
        return d;
    }
    d.embedding = embed_certificate(a, conf.confined);
    d.verdict = d.embedding->target == FamilyKind::HAT ? StructureVerdict::HAT : StructureVerdict::BAR;
    return d;
}

}  // namespace gfq
