#ifndef GFQ_FIELD_HPP
#define GFQ_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gfq {

// Element encoding: sum_i c_i * p^i for the coefficient tuple (c_0,...) over GF(p).
using code_t = std::uint16_t;

struct SizeBoundError : std::runtime_error {
    explicit SizeBoundError(const std::string& what) : std::runtime_error(what) {}
};

struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

// Global limits for the exhaustive searches. Overridable per call; the defaults
// can be raised through the GFQ_MAX_CLASSES / GFQ_MAX_FIELD environment variables.
struct Bounds {
    int max_classes = 24;       // parallel classes entering a subset scan
    std::uint32_t max_field = 1u << 16;  // largest constructible field
    static const Bounds& global();
};

/// A finite field GF(p^k), either as polynomials over GF(p) modulo the
/// lexicographically smallest monic irreducible (constant term first), or as a
/// quadratic tower GF(q)(w) with w^2 = s + t*w over a smaller field.
/// Instances are interned, immutable and safe to share between threads.
class Field {
public:
    static const Field& get(int p, int k);
    static const Field& quadratic_extension(const Field& base);

    int characteristic() const { return p_; }
    int degree() const { return deg_; }  // over the prime field
    std::uint32_t size() const { return size_; }

    // Tower structure. For prime bases the degree-2 polynomial field and the
    // tower coincide, so every GF(p^2) knows its extension constants.
    bool is_quadratic_extension() const { return base_ != nullptr; }
    const Field& base() const;
    code_t ext_s() const { return s_; }
    code_t ext_t() const { return t_; }

    // Modulus over GF(p), constant term first, monic. Polynomial fields only.
    const std::vector<int>& modulus() const;

    code_t zero() const { return 0; }
    code_t one() const { return 1; }

    code_t add(code_t a, code_t b) const;
    code_t sub(code_t a, code_t b) const;
    code_t neg(code_t a) const;
    code_t mul(code_t a, code_t b) const;
    code_t inv(code_t a) const;
    code_t div(code_t a, code_t b) const;
    code_t pow(code_t a, long e) const;

    // Subfield interface of a quadratic tower: w = u + omega*v.
    code_t embed(code_t base_code) const;
    std::pair<code_t, code_t> decompose(code_t w) const;
    bool in_subfield(code_t w) const { return decompose(w).second == 0; }

    std::vector<int> coeffs(code_t a) const;  // base-p digits, length degree()
    code_t from_coeffs(const std::vector<int>& c) const;
    std::string show(code_t a) const;

    bool operator==(const Field& o) const { return this == &o; }

private:
    Field() = default;
    void build_tables();
    code_t mul_direct(code_t a, code_t b) const;

    int p_ = 0, deg_ = 0;
    std::uint32_t size_ = 0;
    std::vector<int> modulus_;       // polynomial fields
    const Field* base_ = nullptr;    // towers
    code_t s_ = 0, t_ = 0;           // tower constants (base codes)
    // log/exp with respect to a fixed generator; full tables for small fields
    std::vector<std::uint32_t> log_, exp_;
    std::vector<code_t> add_tab_, mul_tab_, inv_tab_, neg_tab_;
    bool small_tables_ = false;
};

/// Checked element wrapper for the public arithmetic interface.
struct Elem {
    const Field* f = nullptr;
    code_t c = 0;

    Elem() = default;
    Elem(const Field& field, code_t code) : f(&field), c(code) {}

    friend Elem operator+(Elem a, Elem b) { return {a.same(b), a.f->add(a.c, b.c)}; }
    friend Elem operator-(Elem a, Elem b) { return {a.same(b), a.f->sub(a.c, b.c)}; }
    friend Elem operator*(Elem a, Elem b) { return {a.same(b), a.f->mul(a.c, b.c)}; }
    friend Elem operator/(Elem a, Elem b) { return {a.same(b), a.f->div(a.c, b.c)}; }
    friend bool operator==(Elem a, Elem b) { return a.f == b.f && a.c == b.c; }
    Elem inverse() const { return {*f, f->inv(c)}; }
    Elem power(long e) const { return {*f, f->pow(c, e)}; }
    bool is_zero() const { return c == 0; }

private:
    const Field& same(const Elem& o) const {
        if (f != o.f) throw std::invalid_argument("field mismatch");
        return *f;
    }
};

bool is_prime(int n);

// Polynomial helpers over GF(p) used for modulus construction; coefficient
// vectors store the constant term first.
std::vector<int> lex_smallest_irreducible(int p, int k);
bool poly_irreducible(const std::vector<int>& m, int p);

}  // namespace gfq

#endif
