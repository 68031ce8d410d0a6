#include "gfq/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>

namespace gfq {

const Bounds& Bounds::global() {
    static Bounds b = [] {
        Bounds r;
        if (const char* e = std::getenv("GFQ_MAX_CLASSES")) r.max_classes = std::atoi(e);
        if (const char* e = std::getenv("GFQ_MAX_FIELD")) r.max_field = std::uint32_t(std::atol(e));
        return r;
    }();
    return b;
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// ---- polynomial arithmetic over GF(p), constant term first ----

std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
    const int dm = int(m.size()) - 1;
    while (int(a.size()) > dm) {
        int lead = a.back();
        int da = int(a.size()) - 1;
        if (lead != 0) {
            // m is monic: subtract lead * x^(da-dm) * m
            for (int i = 0; i <= dm; ++i) {
                int& c = a[da - dm + i];
                c = ((c - lead * m[i]) % p + p) % p;
            }
        }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return r;
}

bool poly_divides(const std::vector<int>& d, std::vector<int> a, int p) {
    // d monic
    return poly_mod(std::move(a), d, p).empty();
}

}  // namespace

bool poly_irreducible(const std::vector<int>& m, int p) {
    const int k = int(m.size()) - 1;
    if (k <= 0) return false;
    if (k == 1) return true;
    // trial division by every monic polynomial of degree 1..k/2
    for (int d = 1; 2 * d <= k; ++d) {
        std::vector<int> cand(d + 1, 0);
        cand[d] = 1;
        // enumerate the p^d monic candidates of degree d
        long total = 1;
        for (int i = 0; i < d; ++i) total *= p;
        for (long idx = 0; idx < total; ++idx) {
            long v = idx;
            for (int i = 0; i < d; ++i) {
                cand[i] = int(v % p);
                v /= p;
            }
            if (poly_divides(cand, m, p)) return false;
        }
    }
    return true;
}

std::vector<int> lex_smallest_irreducible(int p, int k) {
    std::vector<int> m(k + 1, 0);
    m[k] = 1;
    long total = 1;
    for (int i = 0; i < k; ++i) total *= p;
    for (long idx = 0; idx < total; ++idx) {
        long v = idx;
        // lexicographic by coefficient tuple, constant term most significant
        for (int i = k - 1; i >= 0; --i) {
            m[i] = int(v % p);
            v /= p;
        }
        if (poly_irreducible(m, p)) return m;
    }
    throw std::logic_error("no irreducible polynomial found");
}

// ---- Field construction ----

code_t Field::mul_direct(code_t a, code_t b) const {
    if (a == 0 || b == 0) return 0;
    if (base_ != nullptr && base_->degree() > 1) {
        // tower: (u1 + w v1)(u2 + w v2) with w^2 = s + t w
        const Field& B = *base_;
        code_t u1 = code_t(a % B.size()), v1 = code_t(a / B.size());
        code_t u2 = code_t(b % B.size()), v2 = code_t(b / B.size());
        code_t vv = B.mul(v1, v2);
        code_t u = B.add(B.mul(u1, u2), B.mul(s_, vv));
        code_t v = B.add(B.add(B.mul(u1, v2), B.mul(v1, u2)), B.mul(t_, vv));
        return code_t(u + B.size() * v);
    }
    // polynomial representation over GF(p)
    std::vector<int> pa = coeffs(a), pb = coeffs(b);
    while (!pa.empty() && pa.back() == 0) pa.pop_back();
    while (!pb.empty() && pb.back() == 0) pb.pop_back();
    std::vector<int> r = poly_mod(poly_mul(pa, pb, p_), modulus_, p_);
    r.resize(deg_, 0);
    return from_coeffs(r);
}

void Field::build_tables() {
    const std::uint32_t n = size_;
    neg_tab_.resize(n);
    for (std::uint32_t a = 0; a < n; ++a) {
        std::vector<int> c = coeffs(code_t(a));
        for (int& x : c) x = (p_ - x) % p_;
        neg_tab_[a] = from_coeffs(c);
    }
    // discrete log tables for multiplication
    log_.assign(n, 0);
    exp_.assign(n, 0);
    std::vector<char> seen;
    for (std::uint32_t g = 1; g < n; ++g) {
        seen.assign(n, 0);
        code_t x = 1;
        std::uint32_t ord = 0;
        do {
            seen[x] = 1;
            x = mul_direct(x, code_t(g));
            ++ord;
        } while (x != 1 && ord < n);
        if (ord == n - 1) {
            x = 1;
            for (std::uint32_t i = 0; i < n - 1; ++i) {
                exp_[i] = x;
                log_[x] = i;
                x = mul_direct(x, code_t(g));
            }
            break;
        }
    }
    inv_tab_.resize(n);
    inv_tab_[0] = 0;
    for (std::uint32_t a = 1; a < n; ++a) inv_tab_[a] = code_t(exp_[(n - 1 - log_[a]) % (n - 1)]);

    small_tables_ = n <= 1024;
    if (small_tables_) {
        add_tab_.resize(n * n);
        mul_tab_.resize(n * n);
        for (std::uint32_t a = 0; a < n; ++a) {
            std::vector<int> ca = coeffs(code_t(a));
            for (std::uint32_t b = 0; b < n; ++b) {
                std::vector<int> cb = coeffs(code_t(b));
                std::vector<int> cc(deg_);
                for (int i = 0; i < deg_; ++i) cc[i] = (ca[i] + cb[i]) % p_;
                add_tab_[a * n + b] = from_coeffs(cc);
                mul_tab_[a * n + b] = mul_direct(code_t(a), code_t(b));
            }
        }
    }
}

code_t Field::add(code_t a, code_t b) const {
    if (small_tables_) return add_tab_[std::uint32_t(a) * size_ + b];
    std::vector<int> ca = coeffs(a), cb = coeffs(b);
    for (int i = 0; i < deg_; ++i) ca[i] = (ca[i] + cb[i]) % p_;
    return from_coeffs(ca);
}

code_t Field::neg(code_t a) const { return neg_tab_[a]; }

code_t Field::sub(code_t a, code_t b) const { return add(a, neg(b)); }

code_t Field::mul(code_t a, code_t b) const {
    if (small_tables_) return mul_tab_[std::uint32_t(a) * size_ + b];
    if (a == 0 || b == 0) return 0;
    return code_t(exp_[(log_[a] + log_[b]) % (size_ - 1)]);
}

code_t Field::inv(code_t a) const {
    if (a == 0) throw std::domain_error("division by zero");
    return inv_tab_[a];
}

code_t Field::div(code_t a, code_t b) const { return mul(a, inv(b)); }

code_t Field::pow(code_t a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    code_t r = 1, x = a;
    while (e > 0) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

const Field& Field::base() const {
    if (base_ == nullptr) throw std::logic_error("not a quadratic extension");
    return *base_;
}

const std::vector<int>& Field::modulus() const {
    if (modulus_.empty()) throw std::logic_error("tower field has no prime-field modulus");
    return modulus_;
}

code_t Field::embed(code_t base_code) const {
    const Field& B = base();
    if (base_code >= B.size()) throw std::invalid_argument("code outside base field");
    return base_code;  // (u, 0) encodes as u
}

std::pair<code_t, code_t> Field::decompose(code_t w) const {
    const Field& B = base();
    if (w >= size_) throw std::invalid_argument("code outside field");
    return {code_t(w % B.size()), code_t(w / B.size())};
}

std::vector<int> Field::coeffs(code_t a) const {
    std::vector<int> c(deg_);
    std::uint32_t v = a;
    for (int i = 0; i < deg_; ++i) {
        c[i] = int(v % p_);
        v /= p_;
    }
    return c;
}

code_t Field::from_coeffs(const std::vector<int>& c) const {
    std::uint32_t v = 0, m = 1;
    for (int i = 0; i < deg_; ++i) {
        v += std::uint32_t(((c[i] % p_) + p_) % p_) * m;
        m *= p_;
    }
    return code_t(v);
}

std::string Field::show(code_t a) const { return std::to_string(std::uint32_t(a)); }

namespace {
// get() re-enters for the base field of a degree-2 modulus
std::recursive_mutex g_registry_mutex;
std::map<std::pair<int, int>, std::unique_ptr<Field>>& poly_registry() {
    static std::map<std::pair<int, int>, std::unique_ptr<Field>> r;
    return r;
}
std::map<const Field*, std::unique_ptr<Field>>& tower_registry() {
    static std::map<const Field*, std::unique_ptr<Field>> r;
    return r;
}

// Row-reduce-free root scan: the lex-smallest monic irreducible quadratic over
// an arbitrary base field, returned as (s, t) with x^2 - t x - s irreducible.
std::pair<code_t, code_t> canonical_quadratic(const Field& B) {
    for (std::uint32_t c0 = 0; c0 < B.size(); ++c0) {
        for (std::uint32_t c1 = 0; c1 < B.size(); ++c1) {
            bool has_root = false;
            for (std::uint32_t x = 0; x < B.size(); ++x) {
                code_t v = B.add(B.add(B.mul(code_t(x), code_t(x)), B.mul(code_t(c1), code_t(x))), code_t(c0));
                if (v == 0) {
                    has_root = true;
                    break;
                }
            }
            if (!has_root) return {B.neg(code_t(c0)), B.neg(code_t(c1))};
        }
    }
    throw std::logic_error("no irreducible quadratic over base field");
}
}  // namespace

const Field& Field::get(int p, int k) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    if (k < 1) throw std::invalid_argument("degree must be positive");
    double sz = 1;
    for (int i = 0; i < k; ++i) sz *= p;
    if (sz > double(Bounds::global().max_field)) throw SizeBoundError("field size exceeds bound");

    std::lock_guard<std::recursive_mutex> lock(g_registry_mutex);
    auto& reg = poly_registry();
    auto it = reg.find({p, k});
    if (it != reg.end()) return *it->second;

    auto f = std::unique_ptr<Field>(new Field());
    f->p_ = p;
    f->deg_ = k;
    f->size_ = 1;
    for (int i = 0; i < k; ++i) f->size_ *= std::uint32_t(p);
    f->modulus_ = (k == 1) ? std::vector<int>{0, 1} : lex_smallest_irreducible(p, k);
    if (k == 2) {
        // the degree-2 polynomial field doubles as the tower over GF(p)
        f->base_ = &Field::get(p, 1);
        f->s_ = code_t(((-f->modulus_[0]) % p + p) % p);
        f->t_ = code_t(((-f->modulus_[1]) % p + p) % p);
    }
    f->build_tables();
    const Field& ref = *f;
    reg.emplace(std::make_pair(p, k), std::move(f));
    return ref;
}

const Field& Field::quadratic_extension(const Field& B) {
    if (B.degree() == 1) return Field::get(B.characteristic(), 2);
    double sz = double(B.size()) * double(B.size());
    if (sz > double(Bounds::global().max_field)) throw SizeBoundError("field size exceeds bound");

    std::lock_guard<std::recursive_mutex> lock(g_registry_mutex);
    auto& reg = tower_registry();
    auto it = reg.find(&B);
    if (it != reg.end()) return *it->second;

    auto f = std::unique_ptr<Field>(new Field());
    f->p_ = B.characteristic();
    f->deg_ = 2 * B.degree();
    f->size_ = B.size() * B.size();
    f->base_ = &B;
    auto st = canonical_quadratic(B);
    f->s_ = st.first;
    f->t_ = st.second;
    f->build_tables();
    const Field& ref = *f;
    reg.emplace(&B, std::move(f));
    return ref;
}

}  // namespace gfq
