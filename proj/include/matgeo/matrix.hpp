#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "matgeo/field.hpp"

namespace matgeo {

// Dense matrix over a finite field.  Row-major, value semantics, entrywise
// equality.  The field is referenced, never owned; Field objects are interned
// for the process lifetime.
class Mat {
public:
    Mat() = default;
    Mat(const Field& f, int m, int n) : f_(&f), m_(m), n_(n), e_(static_cast<std::size_t>(m) * n, 0) {}
    Mat(const Field& f, int m, int n, std::vector<Elt> entries)
        : f_(&f), m_(m), n_(n), e_(std::move(entries)) {
        if (e_.size() != static_cast<std::size_t>(m_) * n_) throw error("entry count does not match shape");
    }

    const Field& field() const { return *f_; }
    int rows() const { return m_; }
    int cols() const { return n_; }

    Elt operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }
    Elt& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<Elt>& entries() const { return e_; }

    bool operator==(const Mat& o) const { return m_ == o.m_ && n_ == o.n_ && *f_ == *o.f_ && e_ == o.e_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (Elt v : e_)
            if (v) return false;
        return true;
    }

    Mat operator+(const Mat& o) const { return zipped(o, true); }
    Mat operator-(const Mat& o) const { return zipped(o, false); }
    Mat operator-() const {
        Mat r(*this);
        for (Elt& v : r.e_) v = f_->neg(v);
        return r;
    }
    Mat operator*(const Mat& o) const {
        check_same_field(o);
        if (n_ != o.m_) throw shape_mismatch("inner dimensions differ");
        Mat r(*f_, m_, o.n_);
        for (int i = 0; i < m_; ++i)
            for (int k = 0; k < n_; ++k) {
                Elt a = (*this)(i, k);
                if (!a) continue;
                for (int j = 0; j < o.n_; ++j)
                    r(i, j) = f_->add(r(i, j), f_->mul(a, o(k, j)));
            }
        return r;
    }
    Mat scaled(Elt c) const {
        Mat r(*this);
        for (Elt& v : r.e_) v = f_->mul(c, v);
        return r;
    }
    Mat transposed() const {
        Mat r(*f_, n_, m_);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    // Entrywise image under a field homomorphism.
    Mat mapped(const FieldHom& h) const {
        if (*h.src != *f_) throw field_mismatch("homomorphism source differs from the matrix field");
        Mat r(*h.dst, m_, n_);
        for (std::size_t t = 0; t < e_.size(); ++t) r.e_[t] = h.table[e_[t]];
        return r;
    }

    static Mat identity(const Field& f, int n) {
        Mat r(f, n, n);
        for (int i = 0; i < n; ++i) r(i, i) = 1;
        return r;
    }
    static Mat unit(const Field& f, int m, int n, int i, int j) {
        Mat r(f, m, n);
        r(i, j) = 1;
        return r;
    }

    void check_same_field(const Mat& o) const {
        if (*f_ != *o.f_) throw field_mismatch();
    }
    void check_same_space(const Mat& o) const {
        check_same_field(o);
        if (m_ != o.m_ || n_ != o.n_) throw shape_mismatch();
    }

    // Comma-separated element indices, row-major: `1,0,0,1` is I_2.
    std::string text() const {
        std::ostringstream os;
        for (std::size_t t = 0; t < e_.size(); ++t) os << (t ? "," : "") << e_[t];
        return os.str();
    }

private:
    Mat zipped(const Mat& o, bool add) const {
        check_same_space(o);
        Mat r(*f_, m_, n_);
        for (std::size_t t = 0; t < e_.size(); ++t)
            r.e_[t] = add ? f_->add(e_[t], o.e_[t]) : f_->sub(e_[t], o.e_[t]);
        return r;
    }

    const Field* f_ = nullptr;
    int m_ = 0, n_ = 0;
    std::vector<Elt> e_;
};

// The ambient space D^{m x n} with its canonical base-q encoding of matrices:
// enc = sum entries[t] * q^t over the row-major entry sequence.
struct Space {
    const Field* field = nullptr;
    int m = 0, n = 0;

    Space() = default;
    Space(const Field& f, int m_, int n_) : field(&f), m(m_), n(n_) {}

    bool operator==(const Space& o) const { return *field == *o.field && m == o.m && n == o.n; }
    bool operator!=(const Space& o) const { return !(*this == o); }

    std::uint64_t count() const { return ipow(field->q(), static_cast<unsigned>(m) * n); }

    Enc encode(const Mat& a) const {
        Enc e = 0;
        const auto& v = a.entries();
        for (std::size_t t = v.size(); t-- > 0;) e = e * field->q() + v[t];
        return e;
    }
    Mat decode(Enc e) const {
        Mat a(*field, m, n);
        std::vector<Elt> v(static_cast<std::size_t>(m) * n);
        for (std::size_t t = 0; t < v.size(); ++t) {
            v[t] = static_cast<Elt>(e % field->q());
            e /= field->q();
        }
        return Mat(*field, m, n, std::move(v));
    }
    Mat parse(const std::string& csv) const {
        std::vector<Elt> v;
        std::istringstream is(csv);
        std::string tok;
        while (std::getline(is, tok, ',')) v.push_back(static_cast<Elt>(std::stoul(tok)));
        if (v.size() != static_cast<std::size_t>(m) * n)
            throw parse_error("expected " + std::to_string(m * n) + " entries, got " + std::to_string(v.size()));
        for (Elt x : v)
            if (x >= field->q()) throw parse_error("entry index out of range: " + std::to_string(x));
        return Mat(*field, m, n, std::move(v));
    }
};

// Row rank = column rank by Gaussian elimination with exact field arithmetic.
// Pivot rule everywhere: first nonzero entry scanning left-to-right,
// top-to-bottom; row swaps only downward.
inline int rank(const Mat& a) {
    Mat w(a);
    const Field& f = w.field();
    int m = w.rows(), n = w.cols(), r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (w(i, c)) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < n; ++j) std::swap(w(piv, j), w(r, j));
        Elt s = f.inv(w(r, c));
        for (int j = 0; j < n; ++j) w(r, j) = f.mul(s, w(r, j));
        for (int i = 0; i < m; ++i) {
            if (i == r || !w(i, c)) continue;
            Elt t = w(i, c);
            for (int j = 0; j < n; ++j) w(i, j) = f.sub(w(i, j), f.mul(t, w(r, j)));
        }
        ++r;
    }
    return r;
}

inline Mat inverse(const Mat& a) {
    if (a.rows() != a.cols()) throw shape_mismatch("inverse of a non-square matrix");
    const Field& f = a.field();
    int n = a.rows();
    Mat w(a), inv = Mat::identity(f, n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (w(i, c)) { piv = i; break; }
        if (piv < 0) throw error("matrix is singular");
        if (piv != c)
            for (int j = 0; j < n; ++j) {
                std::swap(w(piv, j), w(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        Elt s = f.inv(w(c, c));
        for (int j = 0; j < n; ++j) {
            w(c, j) = f.mul(s, w(c, j));
            inv(c, j) = f.mul(s, inv(c, j));
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || !w(i, c)) continue;
            Elt t = w(i, c);
            for (int j = 0; j < n; ++j) {
                w(i, j) = f.sub(w(i, j), f.mul(t, w(c, j)));
                inv(i, j) = f.sub(inv(i, j), f.mul(t, inv(c, j)));
            }
        }
    }
    return inv;
}

inline bool is_invertible(const Mat& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

struct NormalForm {
    Mat p;   // invertible m x m
    Mat q;   // invertible n x n
    int r;   // rank
};

// A = P diag(I_r, 0) Q, deterministic under the fixed pivot rule.
inline NormalForm normal_form(const Mat& a) {
    const Field& f = a.field();
    int m = a.rows(), n = a.cols();
    Mat w(a), e = Mat::identity(f, m);  // row ops mirrored into e:  e * a = w
    int r = 0;
    std::vector<int> pivot_cols;
    for (int c = 0; c < n && r < m; ++c) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (w(i, c)) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < n; ++j) std::swap(w(piv, j), w(r, j));
        if (piv != r)
            for (int j = 0; j < m; ++j) std::swap(e(piv, j), e(r, j));
        Elt s = f.inv(w(r, c));
        for (int j = 0; j < n; ++j) w(r, j) = f.mul(s, w(r, j));
        for (int j = 0; j < m; ++j) e(r, j) = f.mul(s, e(r, j));
        for (int i = 0; i < m; ++i) {
            if (i == r || !w(i, c)) continue;
            Elt t = w(i, c);
            for (int j = 0; j < n; ++j) w(i, j) = f.sub(w(i, j), f.mul(t, w(r, j)));
            for (int j = 0; j < m; ++j) e(i, j) = f.sub(e(i, j), f.mul(t, e(r, j)));
        }
        pivot_cols.push_back(c);
        ++r;
    }
    // Column ops: w * fmat = diag(I_r, 0).  In the RREF w, pivot columns are
    // unit vectors; build fmat as the permutation pulling pivots forward, then
    // clear the non-pivot columns against them.
    Mat fmat = Mat::identity(f, n);
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int t = 0; t < r; ++t) is_pivot[pivot_cols[t]] = true;
    std::vector<int> order;
    for (int c : pivot_cols) order.push_back(c);
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) order.push_back(c);
    Mat perm(f, n, n);
    for (int j = 0; j < n; ++j) perm(order[j], j) = 1;  // column j of result = column order[j] of w
    Mat wp = w * perm;
    // wp = (I_r | B ; 0 | 0); clearing B subtracts wp(i,j) times unit column i
    // from column j, which collapses into one elementary matrix.
    Mat elim = Mat::identity(f, n);
    for (int j = r; j < n; ++j)
        for (int i = 0; i < r; ++i) elim(i, j) = f.neg(wp(i, j));
    fmat = perm * elim;
    Mat p = inverse(e);
    Mat q = inverse(fmat);
    return NormalForm{std::move(p), std::move(q), r};
}

inline Mat diag_rect(const Field& f, int m, int n, int r) {
    Mat d(f, m, n);
    for (int i = 0; i < r && i < m && i < n; ++i) d(i, i) = 1;
    return d;
}

// G with A G A = A, the canonical one from the normal form; for A = 0 the
// convention is G = 0.
inline Mat g_inverse(const Mat& a) {
    NormalForm nf = normal_form(a);
    return inverse(nf.q) * diag_rect(a.field(), a.cols(), a.rows(), nf.r) * inverse(nf.p);
}

inline bool is_adjacent(const Mat& a, const Mat& b) {
    a.check_same_space(b);
    return rank(a - b) == 1;
}

inline int distance(const Mat& a, const Mat& b) {
    a.check_same_space(b);
    return rank(a - b);
}

// Minus partial order: A <= B iff rank(B - A) = rank(B) - rank(A).
inline bool minus_le(const Mat& a, const Mat& b) {
    a.check_same_space(b);
    return rank(b - a) == rank(b) - rank(a);
}

// Same order decided through the existential g-inverse characterization:
// some g-inverse G1 of A has A G1 = B G1, and some g-inverse G2 of A has
// G2 A = G2 B.  Decided by exhaustive search over all g-inverses at desk
// scale; a single canonical g-inverse would not settle the existential.
inline bool minus_le_via_ginverse(const Mat& a, const Mat& b) {
    a.check_same_space(b);
    const Field& f = a.field();
    Space gspace(f, a.cols(), a.rows());
    require_cap(gspace.count(), "g-inverse enumeration");
    bool left = false, right = false;
    for (Enc e = 0; e < gspace.count() && !(left && right); ++e) {
        Mat g = gspace.decode(e);
        if (a * g * a != a) continue;
        if (!left && a * g == b * g) left = true;
        if (!right && g * a == g * b) right = true;
    }
    return left && right;
}

// Writes a rank-1 matrix as an outer product u w with the column factor u
// projectively normalized (first nonzero entry 1).
inline std::pair<std::vector<Elt>, std::vector<Elt>> factor_rank_one(const Mat& r) {
    if (rank(r) != 1) throw error("factor_rank_one needs a rank-1 matrix");
    const Field& f = r.field();
    int i0 = -1, j0 = -1;
    for (int i = 0; i < r.rows() && i0 < 0; ++i)
        for (int j = 0; j < r.cols(); ++j)
            if (r(i, j)) { i0 = i; j0 = j; break; }
    std::vector<Elt> u(static_cast<std::size_t>(r.rows()));
    Elt denom = f.inv(r(i0, j0));
    for (int i = 0; i < r.rows(); ++i) u[i] = f.mul(r(i, j0), denom);
    std::vector<Elt> w(static_cast<std::size_t>(r.cols()));
    for (int j = 0; j < r.cols(); ++j) w[j] = r(i0, j);
    return {std::move(u), std::move(w)};
}

// Every rank-r matrix exactly once, in encoding order.
inline std::vector<Mat> enumerate_rank(const Field& f, int m, int n, int r) {
    if (r < 0 || r > std::min(m, n)) throw error("rank out of range");
    Space s(f, m, n);
    require_cap(s.count(), "matrix enumeration");
    std::vector<Mat> out;
    for (Enc e = 0; e < s.count(); ++e) {
        Mat a = s.decode(e);
        if (rank(a) == r) out.push_back(std::move(a));
    }
    return out;
}

inline std::vector<Enc> enumerate_rank_encs(const Space& s, int r) {
    require_cap(s.count(), "matrix enumeration");
    std::vector<Enc> out;
    for (Enc e = 0; e < s.count(); ++e)
        if (rank(s.decode(e)) == r) out.push_back(e);
    return out;
}

}  // namespace matgeo
