#pragma once

#include "matgeo/map_table.hpp"

namespace matgeo {

enum class FormVariant {
    AdditiveStandard,       // X -> P X^tau Q, ranks of P and Q >= 2
    AdditiveTranspose,      // X -> P tX^sigma Q
    SemrlStandard,          // X -> P [ (I + X^tau L)^{-1} X^tau    (+) 0 ] Q
    SemrlTranspose,         // X -> P [ tX^sigma (I + L tX^sigma)^{-1} (+) 0 ] Q
    ShiftedSemrlStandard,   // X -> P [ (I + X^tau L)^{-1}(X^tau - A0^tau) (+) 0 ] Q + offset
    ShiftedSemrlTranspose,  // X -> P [ (tX^sigma - tA0^sigma)(I + L tX^sigma)^{-1} (+) 0 ] Q + offset
};

inline const char* variant_name(FormVariant v) {
    switch (v) {
        case FormVariant::AdditiveStandard: return "additive-standard";
        case FormVariant::AdditiveTranspose: return "additive-transpose";
        case FormVariant::SemrlStandard: return "semrl-standard";
        case FormVariant::SemrlTranspose: return "semrl-transpose";
        case FormVariant::ShiftedSemrlStandard: return "shifted-semrl-standard";
        case FormVariant::ShiftedSemrlTranspose: return "shifted-semrl-transpose";
    }
    return "?";
}

inline bool is_semrl(FormVariant v) {
    return v != FormVariant::AdditiveStandard && v != FormVariant::AdditiveTranspose;
}
inline bool is_shifted(FormVariant v) {
    return v == FormVariant::ShiftedSemrlStandard || v == FormVariant::ShiftedSemrlTranspose;
}
inline bool is_transpose(FormVariant v) {
    return v == FormVariant::AdditiveTranspose || v == FormVariant::SemrlTranspose ||
           v == FormVariant::ShiftedSemrlTranspose;
}

// All L over the destination field for which I + X^tau L is invertible for
// every source X; decided exhaustively, never algebraically.  Always contains
// 0; when tau is surjective the result collapses to {0} (a fact the harness
// asserts rather than assumes).
inline std::vector<Mat> valid_Ls(const FieldHom& tau, int n) {
    const Field& df = *tau.dst;
    Space lspace(df, n, n);
    Space xspace(*tau.src, n, n);
    require_cap(lspace.count(), "L enumeration");
    require_cap(xspace.count(), "X enumeration inside L validity");
    // the sweep is pure in (tau, n) and the recovery loops hammer it
    static std::mutex mu;
    static std::map<std::tuple<const Field*, const Field*, std::vector<Elt>, int>, std::vector<Mat>> memo;
    auto key = std::make_tuple(tau.src, tau.dst, tau.table, n);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    std::vector<Mat> ximages;
    ximages.reserve(xspace.count());
    for (Enc xe = 0; xe < xspace.count(); ++xe) ximages.push_back(xspace.decode(xe).mapped(tau));
    Mat id = Mat::identity(df, n);
    auto good = parallel_map<char>(lspace.count(), [&](std::uint64_t le) -> char {
        Mat l = lspace.decode(le);
        for (const Mat& xt : ximages)
            if (!is_invertible(id + xt * l)) return 0;
        return 1;
    });
    std::vector<Mat> out;
    for (Enc le = 0; le < lspace.count(); ++le)
        if (good[le]) out.push_back(lspace.decode(le));
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(std::move(key), out);
    return out;
}

inline bool is_valid_L(const FieldHom& tau, const Mat& l) {
    Space xspace(*tau.src, l.rows(), l.rows());
    Mat id = Mat::identity(*tau.dst, l.rows());
    for (Enc xe = 0; xe < xspace.count(); ++xe)
        if (!is_invertible(id + xspace.decode(xe).mapped(tau) * l)) return false;
    return true;
}

// One canonical homomorphism form with recovered-parameter semantics: the
// variant plus (P, Q, tau, L, A0, offset) pin the map down exactly.
struct CanonicalForm {
    FormVariant variant;
    Space src;
    Space dst;
    Mat p;
    Mat q;
    FieldHom tau;   // also plays the anti-homomorphism role; over fields the
                    // transpose variant alone distinguishes the two families
    Mat l;          // Semrl variants only
    Mat a0;         // shifted variants only, over src
    Mat offset;     // shifted variants only, over dst
};

inline CanonicalForm additive_form(FormVariant v, Space src, Space dst, Mat p, const FieldHom& tau, Mat q) {
    if (is_semrl(v)) throw error("additive_form expects an additive variant");
    if (*tau.src != *src.field || *tau.dst != *dst.field) throw field_mismatch("tau does not match spaces");
    bool tr = is_transpose(v);
    int pin = tr ? src.n : src.m, qin = tr ? src.m : src.n;
    if (p.rows() != dst.m || p.cols() != pin || q.rows() != qin || q.cols() != dst.n)
        throw shape_mismatch("additive form parameter shapes");
    if (rank(p) < 2 || rank(q) < 2) throw error("additive form needs rank(P) >= 2 and rank(Q) >= 2");
    return CanonicalForm{v, src, dst, std::move(p), std::move(q), tau, Mat(), Mat(), Mat()};
}

inline CanonicalForm semrl_form(FormVariant v, Space src, Space dst, Mat p, Mat l, const FieldHom& tau,
                                Mat q, Mat a0 = Mat(), Mat offset = Mat()) {
    if (!is_semrl(v)) throw error("semrl_form expects a Semrl variant");
    if (src.m != src.n) throw shape_mismatch("Semrl forms need a square source");
    int n = src.n;
    if (dst.m < n || dst.n < n) throw shape_mismatch("Semrl forms need destination shape at least n x n");
    if (*tau.src != *src.field || *tau.dst != *dst.field) throw field_mismatch("tau does not match spaces");
    if (p.rows() != dst.m || p.cols() != dst.m || q.rows() != dst.n || q.cols() != dst.n)
        throw shape_mismatch("Semrl form needs square invertible P and Q over the destination");
    if (!is_invertible(p) || !is_invertible(q)) throw error("Semrl form needs invertible P and Q");
    if (l.rows() != n || l.cols() != n || *tau.dst != l.field()) throw shape_mismatch("L must be n x n over dst");
    if (!is_valid_L(tau, l)) throw invalid_l("L fails the validity sweep");
    if (is_shifted(v)) {
        if (a0.rows() != src.m || a0.cols() != src.n || a0.field() != *src.field)
            throw shape_mismatch("A0 must live in the source space");
        if (offset.rows() != dst.m || offset.cols() != dst.n || offset.field() != *dst.field)
            throw shape_mismatch("offset must live in the destination space");
    } else {
        a0 = Mat(*src.field, src.m, src.n);
        offset = Mat(*dst.field, dst.m, dst.n);
    }
    return CanonicalForm{v, src, dst, std::move(p), std::move(q), tau, std::move(l), std::move(a0),
                         std::move(offset)};
}

// n x n block dropped into the top-left corner of an m' x n' zero matrix.
inline Mat embed_block(const Mat& c, Space dst) {
    Mat r(*dst.field, dst.m, dst.n);
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) r(i, j) = c(i, j);
    return r;
}

inline Mat eval(const CanonicalForm& form, const Mat& x) {
    if (x.rows() != form.src.m || x.cols() != form.src.n || x.field() != *form.src.field)
        throw shape_mismatch("input does not live in the form's source space");
    switch (form.variant) {
        case FormVariant::AdditiveStandard:
            return form.p * x.mapped(form.tau) * form.q;
        case FormVariant::AdditiveTranspose:
            return form.p * x.mapped(form.tau).transposed() * form.q;
        default: break;
    }
    const Field& df = *form.dst.field;
    int n = form.src.n;
    Mat id = Mat::identity(df, n);
    Mat center(df, n, n);
    bool tr = is_transpose(form.variant);
    Mat xt = tr ? x.mapped(form.tau).transposed() : x.mapped(form.tau);
    Mat denom = tr ? id + form.l * xt : id + xt * form.l;
    if (!is_invertible(denom)) throw invalid_l();
    if (!is_shifted(form.variant)) {
        center = tr ? xt * inverse(denom) : inverse(denom) * xt;
        return form.p * embed_block(center, form.dst) * form.q;
    }
    Mat at = tr ? form.a0.mapped(form.tau).transposed() : form.a0.mapped(form.tau);
    center = tr ? (xt - at) * inverse(denom) : inverse(denom) * (xt - at);
    return form.p * embed_block(center, form.dst) * form.q + form.offset;
}

inline MapTable tabulate(const CanonicalForm& form) {
    require_cap(form.src.count(), "form tabulation");
    MapTable t(form.src, form.dst);
    for (Enc e = 0; e < form.src.count(); ++e) t.out[e] = form.dst.encode(eval(form, form.src.decode(e)));
    return t;
}

// Proper colouring into a target clique via the field-tower trick: read the
// columns of X as elements of GF(q^m) and take a weighted sum with weights
// independent over GF(q).  A rank-1 difference then has a nonzero colour
// difference, so adjacent inputs land on distinct points of the clique.
// Always verified before returning.
inline MapTable make_colouring(Space src, const MaximalSet& target, const std::vector<Elt>& weights) {
    const Field& f = *src.field;
    bool flip = src.n > src.m;  // work on the transpose when rows are short
    int em = flip ? src.n : src.m, en = flip ? src.m : src.n;
    std::uint64_t tower_order = ipow(f.q(), static_cast<unsigned>(em));
    if (tower_order > 60000) throw error("colour tower field too large");
    const Field& tower = gf(static_cast<unsigned>(tower_order));
    auto embs = enumerate_field_homs(f, tower);
    if (embs.empty()) throw error("no embedding into the colour tower field");
    const FieldHom& emb = embs.front();
    if (static_cast<int>(weights.size()) != en)
        throw improper_colouring("expected " + std::to_string(en) + " weights");
    for (Elt w : weights)
        if (w >= tower.q()) throw improper_colouring("weight index out of range");
    // generator powers form a GF(q)-basis of the tower
    Elt g = static_cast<Elt>(tower.p());
    std::vector<Elt> gpow(em);
    gpow[0] = 1;
    for (int i = 1; i < em; ++i) gpow[i] = tower.mul(gpow[i - 1], g);
    // reject GF(q)-dependent weights by brute force over all combinations
    std::uint64_t combos = ipow(f.q(), static_cast<unsigned>(en));
    for (std::uint64_t t = 1; t < combos; ++t) {
        std::uint64_t w = t;
        Elt acc = 0;
        for (int j = 0; j < en; ++j) {
            Elt a = static_cast<Elt>(w % f.q());
            w /= f.q();
            acc = tower.add(acc, tower.mul(emb(a), weights[j]));
        }
        if (acc == 0) throw improper_colouring("weights are linearly dependent over the base field");
    }
    if (target.cardinality() < tower_order)
        throw target_too_small("target clique has " + std::to_string(target.cardinality()) +
                               " points, need " + std::to_string(tower_order));
    const Field& tf = target.field();
    int plen = target.kind == SetKind::RowType ? target.cols() : target.rows();
    auto point_for_colour = [&](Elt colour) {
        std::vector<Elt> v(static_cast<std::size_t>(plen));
        std::uint64_t w = colour;
        for (int i = 0; i < plen; ++i) {
            v[i] = static_cast<Elt>(w % tf.q());
            w /= tf.q();
        }
        return target.at(v);
    };
    Space dst = target.space();
    require_cap(src.count(), "colouring tabulation");
    MapTable table(src, dst);
    for (Enc e = 0; e < src.count(); ++e) {
        Mat x = src.decode(e);
        if (flip) x = x.transposed();
        Elt colour = 0;
        for (int j = 0; j < en; ++j) {
            Elt xi = 0;  // column j read as a tower element
            for (int i = 0; i < em; ++i) xi = tower.add(xi, tower.mul(emb(x(i, j)), gpow[i]));
            colour = tower.add(colour, tower.mul(weights[j], xi));
        }
        table.out[e] = dst.encode(point_for_colour(colour));
    }
    if (auto bad = table.hom_violation())
        throw improper_colouring("adjacent sources " + src.decode(bad->first).text() + " and " +
                                 src.decode(bad->second).text() + " collide or separate");
    return table;
}

}  // namespace matgeo
