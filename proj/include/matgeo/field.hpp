#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "matgeo/common.hpp"

namespace matgeo {

// Exact arithmetic in GF(p^k) on a fixed monic irreducible polynomial basis.
// Elements are canonical indices: e = sum coeffs[i] * p^i, low degree first.
// For q <= 32 all operations are table lookups; above that, schoolbook
// polynomial arithmetic with reduction.
class Field {
public:
    Field(unsigned p, unsigned k, std::vector<unsigned> poly) : p_(p), k_(k), poly_(std::move(poly)) {
        if (p_ < 2 || !is_prime(p_)) throw error("field modulus must be prime, got " + std::to_string(p_));
        if (k_ < 1) throw error("extension degree must be >= 1");
        if (poly_.size() != k_ + 1) throw error("defining polynomial must have degree k");
        if (poly_[k_] != 1) throw error("defining polynomial must be monic");
        for (unsigned c : poly_)
            if (c >= p_) throw error("polynomial coefficient out of range");
        q_ = 1;
        for (unsigned i = 0; i < k_; ++i) {
            q_ *= p_;
            if (q_ > 60000) throw error("field order too large");
        }
        if (!is_irreducible()) throw error("defining polynomial is reducible: " + spec_string());
        if (q_ <= 32) build_tables();
    }

    unsigned p() const { return p_; }
    unsigned k() const { return k_; }
    unsigned q() const { return static_cast<unsigned>(q_); }
    const std::vector<unsigned>& poly() const { return poly_; }

    bool operator==(const Field& o) const { return p_ == o.p_ && k_ == o.k_ && poly_ == o.poly_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    Elt zero() const { return 0; }
    Elt one() const { return 1; }

    std::vector<unsigned> coeffs_of(Elt e) const {
        std::vector<unsigned> c(k_);
        unsigned v = e;
        for (unsigned i = 0; i < k_; ++i) { c[i] = v % p_; v /= p_; }
        return c;
    }
    Elt from_coeffs(const std::vector<unsigned>& c) const {
        Elt e = 0;
        for (unsigned i = k_; i-- > 0;) e = static_cast<Elt>(e * p_ + c[i] % p_);
        return e;
    }

    Elt add(Elt a, Elt b) const {
        if (!add_tab_.empty()) return add_tab_[a * q_ + b];
        return zip(a, b, +1);
    }
    Elt sub(Elt a, Elt b) const {
        if (!sub_tab_.empty()) return sub_tab_[a * q_ + b];
        return zip(a, b, -1);
    }
    Elt neg(Elt a) const { return sub(0, a); }
    Elt mul(Elt a, Elt b) const {
        if (!mul_tab_.empty()) return mul_tab_[a * q_ + b];
        return poly_mul(a, b);
    }
    Elt inv(Elt a) const {
        if (a == 0) throw division_by_zero();
        if (!inv_tab_.empty()) return inv_tab_[a];
        return pow(a, q_ - 2);
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    Elt pow(Elt a, std::uint64_t e) const {
        Elt r = 1, base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    // x -> x^(p^i), the i-th power of the Frobenius endomorphism; i = 0 is the identity.
    Elt frobenius(Elt a, unsigned i) const {
        if (i >= k_) throw error("frobenius power out of range");
        Elt r = a;
        for (unsigned t = 0; t < i; ++t) r = pow(r, p_);
        return r;
    }

    // `field p=<p> k=<k> poly=<c0,c1,...,ck>`
    std::string spec_string() const {
        std::ostringstream os;
        os << "p=" << p_ << " k=" << k_ << " poly=";
        for (unsigned i = 0; i <= k_; ++i) os << (i ? "," : "") << poly_[i];
        return os.str();
    }

private:
    static bool is_prime(unsigned n) {
        for (unsigned d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    // Coefficientwise a + sign*b mod p on the packed representation.
    Elt zip(Elt a, Elt b, int sign) const {
        unsigned av = a, bv = b, out = 0, mult = 1;
        for (unsigned i = 0; i < k_; ++i) {
            unsigned s = (av % p_ + (sign > 0 ? bv % p_ : p_ - bv % p_)) % p_;
            out += s * mult;
            mult *= p_;
            av /= p_;
            bv /= p_;
        }
        return static_cast<Elt>(out);
    }

    Elt poly_mul(Elt a, Elt b) const {
        std::vector<unsigned> ac = coeffs_of(a), bc = coeffs_of(b);
        std::vector<unsigned> prod(2 * k_ - 1, 0);
        for (unsigned i = 0; i < k_; ++i)
            for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ac[i] * bc[j]) % p_;
        // reduce modulo the monic defining polynomial
        for (unsigned d = 2 * k_ - 2; d + 1 > k_; --d) {
            unsigned c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            for (unsigned i = 0; i < k_; ++i)
                prod[d - k_ + i] = (prod[d - k_ + i] + c * (p_ - poly_[i])) % p_;
        }
        prod.resize(k_);
        return from_coeffs(prod);
    }

    // Exhaustive trial division by all lower-degree monic polynomials; fine for k <= 4.
    bool is_irreducible() const {
        if (k_ == 1) return true;
        for (unsigned d = 1; 2 * d <= k_; ++d) {
            std::uint64_t count = ipow(p_, d);
            for (std::uint64_t t = 0; t < count; ++t) {
                std::vector<unsigned> div(d + 1, 0);
                std::uint64_t v = t;
                for (unsigned i = 0; i < d; ++i) { div[i] = static_cast<unsigned>(v % p_); v /= p_; }
                div[d] = 1;
                if (divides(div)) return false;
            }
        }
        return true;
    }
    bool divides(const std::vector<unsigned>& div) const {
        std::vector<unsigned> rem(poly_);
        unsigned dd = static_cast<unsigned>(div.size()) - 1;  // dd >= 1
        for (unsigned d = k_; d >= dd; --d) {
            unsigned c = rem[d];
            if (c != 0)
                for (unsigned i = 0; i <= dd; ++i)
                    rem[d - dd + i] = (rem[d - dd + i] + c * (p_ - div[i])) % p_;
            if (d == dd) break;
        }
        for (unsigned i = 0; i < dd; ++i)
            if (rem[i] != 0) return false;
        return true;
    }

    void build_tables() {
        add_tab_.resize(q_ * q_);
        sub_tab_.resize(q_ * q_);
        mul_tab_.resize(q_ * q_);
        for (unsigned a = 0; a < q_; ++a)
            for (unsigned b = 0; b < q_; ++b) {
                add_tab_[a * q_ + b] = zip(static_cast<Elt>(a), static_cast<Elt>(b), +1);
                sub_tab_[a * q_ + b] = zip(static_cast<Elt>(a), static_cast<Elt>(b), -1);
                mul_tab_[a * q_ + b] = poly_mul(static_cast<Elt>(a), static_cast<Elt>(b));
            }
        inv_tab_.assign(q_, 0);
        for (unsigned a = 1; a < q_; ++a)
            for (unsigned b = 1; b < q_; ++b)
                if (mul_tab_[a * q_ + b] == 1) { inv_tab_[a] = static_cast<Elt>(b); break; }
    }

    unsigned p_, k_;
    std::uint64_t q_;
    std::vector<unsigned> poly_;
    std::vector<Elt> add_tab_, sub_tab_, mul_tab_, inv_tab_;
};

// A unital ring homomorphism between finite fields, materialized as a total table.
struct FieldHom {
    const Field* src = nullptr;
    const Field* dst = nullptr;
    std::vector<Elt> table;  // indexed by src element

    Elt operator()(Elt e) const { return table[e]; }

    bool is_valid() const {
        if (table.size() != src->q() || table[1] != 1) return false;
        for (unsigned a = 0; a < src->q(); ++a)
            for (unsigned b = 0; b < src->q(); ++b) {
                if (table[src->add(Elt(a), Elt(b))] != dst->add(table[a], table[b])) return false;
                if (table[src->mul(Elt(a), Elt(b))] != dst->mul(table[a], table[b])) return false;
            }
        std::vector<Elt> sorted(table);
        std::sort(sorted.begin(), sorted.end());
        return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();  // injective
    }

    bool surjective() const { return src->q() == dst->q(); }

    FieldHom compose(const FieldHom& inner) const {
        FieldHom h;
        h.src = inner.src;
        h.dst = dst;
        h.table.resize(inner.table.size());
        for (std::size_t e = 0; e < inner.table.size(); ++e) h.table[e] = table[inner.table[e]];
        return h;
    }
};

// All unital ring homomorphisms src -> dst.  Nonempty iff the characteristics
// agree and src.k divides dst.k; the count then equals src.k.  Each root r of
// src's defining polynomial in dst induces the homomorphism sending the
// polynomial-basis generator to r.
inline std::vector<FieldHom> enumerate_field_homs(const Field& src, const Field& dst) {
    std::vector<FieldHom> out;
    if (src.p() != dst.p()) return out;
    // image of the prime subfield: c -> c * 1
    std::vector<Elt> prime(src.p());
    for (unsigned c = 0; c < src.p(); ++c) {
        Elt v = 0;
        for (unsigned t = 0; t < c; ++t) v = dst.add(v, dst.one());
        prime[c] = v;
    }
    for (unsigned r = 0; r < dst.q(); ++r) {
        // evaluate src.poly at r over dst
        Elt acc = 0, power = 1;
        for (unsigned i = 0; i <= src.k(); ++i) {
            acc = dst.add(acc, dst.mul(prime[src.poly()[i]], power));
            power = dst.mul(power, static_cast<Elt>(r));
        }
        if (acc != 0) continue;
        FieldHom h;
        h.src = &src;
        h.dst = &dst;
        h.table.resize(src.q());
        for (unsigned e = 0; e < src.q(); ++e) {
            auto c = src.coeffs_of(static_cast<Elt>(e));
            Elt v = 0, rp = 1;
            for (unsigned i = 0; i < src.k(); ++i) {
                v = dst.add(v, dst.mul(prime[c[i]], rp));
                rp = dst.mul(rp, static_cast<Elt>(r));
            }
            h.table[e] = v;
        }
        if (!h.is_valid()) throw error("internal: constructed field map fails the homomorphism laws");
        out.push_back(std::move(h));
    }
    return out;
}

// Shipped defining polynomials (Conway's conventional choices) so element
// indices are reproducible across runs.  Users may override via field_table().
inline const std::map<unsigned, std::pair<unsigned, std::vector<unsigned>>>& default_polys() {
    static const std::map<unsigned, std::pair<unsigned, std::vector<unsigned>>> t = {
        {2, {2, {1, 1}}},           {3, {3, {1, 1}}},           {4, {2, {1, 1, 1}}},
        {5, {5, {3, 1}}},           {7, {7, {4, 1}}},           {8, {2, {1, 1, 0, 1}}},
        {9, {3, {2, 2, 1}}},        {16, {2, {1, 1, 0, 0, 1}}}, {25, {5, {2, 4, 1}}},
        {27, {3, {1, 2, 0, 1}}},
    };
    return t;
}

// Registry of interned fields.  Field objects are immutable and live for the
// whole process, so raw pointers to them are safe to share.
class FieldTable {
public:
    const Field& by_order(unsigned q) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = default_polys().find(q);
        if (it == default_polys().end() && overrides_.find(q) == overrides_.end())
            throw error("no defining polynomial on file for q=" + std::to_string(q));
        auto ov = overrides_.find(q);
        unsigned p = ov != overrides_.end() ? ov->second.first : it->second.first;
        const auto& poly = ov != overrides_.end() ? ov->second.second : it->second.second;
        unsigned k = static_cast<unsigned>(poly.size()) - 1;
        return intern(p, k, poly);
    }
    const Field& get(unsigned p, unsigned k, const std::vector<unsigned>& poly) {
        std::lock_guard<std::mutex> lock(mu_);
        return intern(p, k, poly);
    }
    void override_poly(unsigned q, unsigned p, std::vector<unsigned> poly) {
        std::lock_guard<std::mutex> lock(mu_);
        overrides_[q] = {p, std::move(poly)};
    }

private:
    const Field& intern(unsigned p, unsigned k, const std::vector<unsigned>& poly) {
        auto key = std::make_tuple(p, k, poly);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, std::make_unique<Field>(p, k, poly)).first;
        return *it->second;
    }
    std::mutex mu_;
    std::map<std::tuple<unsigned, unsigned, std::vector<unsigned>>, std::unique_ptr<Field>> cache_;
    std::map<unsigned, std::pair<unsigned, std::vector<unsigned>>> overrides_;
};

inline FieldTable& field_table() {
    static FieldTable t;
    return t;
}

inline const Field& gf(unsigned q) { return field_table().by_order(q); }

// Parses "p=<p> k=<k> poly=<c0,...,ck>" (the `field` keyword, if present, is
// handled by the caller).
inline const Field& parse_field_spec(const std::string& text) {
    unsigned p = 0, k = 0;
    std::vector<unsigned> poly;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (tok.rfind("p=", 0) == 0) p = std::stoul(tok.substr(2));
        else if (tok.rfind("k=", 0) == 0) k = std::stoul(tok.substr(2));
        else if (tok.rfind("poly=", 0) == 0) {
            std::istringstream cs(tok.substr(5));
            std::string c;
            while (std::getline(cs, c, ',')) poly.push_back(std::stoul(c));
        } else if (tok != "field") {
            throw parse_error("unrecognized token in field spec: " + tok);
        }
    }
    if (p == 0 || k == 0 || poly.size() != k + 1) throw parse_error("incomplete field spec: " + text);
    return field_table().get(p, k, poly);
}

}  // namespace matgeo
