#ifndef GFQ_REGULARITY_HPP
#define GFQ_REGULARITY_HPP

#include <optional>
#include <vector>

#include "gfq/geometry.hpp"

namespace gfq {

enum class StructureVerdict { HAT, BAR, BAD };

/// A set Z of extension columns, independent, whose L-subspaces all have
/// dimension 2 and trivial common intersection. |Z| = 2 is the strong case.
struct BadnessCertificate {
    std::vector<int> z;  // indices into the extension block A
    bool strong = false;
};

/// Witness that the simplification embeds into the hat or bar family:
/// a subfield row transform plus per-column scalings, and an injection of
/// parallel-class representatives into target-family columns.
struct EmbeddingCertificate {
    FamilyKind target = FamilyKind::HAT;  // HAT or BAR
    Mat row_transform;                    // over GF(q)
    std::vector<code_t> col_scale;        // per instance column; 1 on loops
    std::vector<int> target_col;          // per instance column; -1 on loops
};

/// Delete/contract recipe on M(A | G) realizing an obstruction minor.
struct OMinorRecipe {
    Mat row_transform;          // over GF(q), applied before the minor
    std::vector<int> contract;  // instance column indices
    std::vector<int> keep;      // instance columns restricted to afterwards
    Mat result;                 // realized member, row-compressed
    ObstructionWitness witness;
};

struct Decision {
    StructureVerdict verdict = StructureVerdict::HAT;
    Mat instance_a;  // extension block after any confinement preprocessing
    Mat instance_g;  // PG block over GF(q)
    std::vector<int> a_cols, g_cols;  // positions in the original input matrix
    std::optional<BadnessCertificate> bad;
    std::optional<EmbeddingCertificate> embedding;
    std::optional<OMinorRecipe> recipe;
    std::optional<OMinorRecipe> moreover;  // strong case with t >= 5
    bool preprocessed = false;             // PG block needed confinement
};

/// Search pairs then triples of extension columns in column order; the first
/// certificate found wins, pairs (strong) preferred.
std::optional<BadnessCertificate> q_badness(const Mat& a, int t);

bool verify_badness(const Mat& a, const BadnessCertificate& cert);

/// Case analysis for non-bad inputs: a common 1-dimensional subspace of all
/// 2-dimensional L-subspaces yields a hat embedding; otherwise the extension
/// block spans a 2-dimensional space over GF(q^2) and embeds into the bar
/// line. The returned certificate has been verified.
EmbeddingCertificate embed_certificate(const Mat& a, const Mat& g);

/// Replay a certificate: the transformed, scaled instance columns must equal
/// their assigned target-family columns, injectively across parallel classes.
bool verify_certificate(const Mat& a, const Mat& g, const EmbeddingCertificate& cert);

/// Constructive obstruction minor from a badness certificate. Strong
/// certificates need t >= 4; with t >= 5 a second recipe through M / Z is
/// produced by decide_structure.
OMinorRecipe o_minor_from_bad(const Mat& a, const Mat& g, const BadnessCertificate& cert);

/// The strong-case recipe that contracts both elements of Z and deletes the
/// rest of the extension block; t >= 5.
OMinorRecipe o_minor_contract_pair(const Mat& a, const Mat& g, const BadnessCertificate& cert);

/// Top-level spanning-case decision: W[pg_cols] must represent a spanning
/// PG(t-1,q) (confined on the fly if needed); the other columns form the
/// extension block. Exactly one verdict is returned and its certificate or
/// recipe has been verified.
Decision decide_structure(const Mat& w, const std::vector<int>& pg_cols);

}  // namespace gfq

#endif
