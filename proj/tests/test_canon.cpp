#include <catch2/catch_amalgamated.hpp>

#include "matgeo/classify.hpp"

using namespace matgeo;

namespace {

Mat from_rows(const Field& f, std::vector<std::vector<unsigned>> rows) {
    int m = static_cast<int>(rows.size()), n = static_cast<int>(rows[0].size());
    Mat a(f, m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = static_cast<Elt>(rows[i][j]);
    return a;
}

}  // namespace

TEST_CASE("identity form tabulates to the identity table") {
    const Field& f2 = gf(2);
    Space s(f2, 2, 2);
    auto id_hom = enumerate_field_homs(f2, f2).front();
    CanonicalForm form = additive_form(FormVariant::AdditiveStandard, s, s, Mat::identity(f2, 2), id_hom,
                                       Mat::identity(f2, 2));
    MapTable t = tabulate(form);
    for (Enc e = 0; e < s.count(); ++e) REQUIRE(t.out[e] == e);
}

TEST_CASE("unshifted forms fix zero") {
    const Field& f2 = gf(2);
    const Field& f4 = gf(4);
    Space s2(f2, 2, 2), s4(f4, 2, 2);
    auto emb = enumerate_field_homs(f2, f4).front();
    Mat l = Mat::unit(f4, 2, 2, 0, 0).scaled(2);  // omega E_11
    CanonicalForm semrl = semrl_form(FormVariant::SemrlStandard, s2, s4, Mat::identity(f4, 2), l, emb,
                                     Mat::identity(f4, 2));
    Mat zero(f2, 2, 2);
    REQUIRE(eval(semrl, zero).is_zero());
    CanonicalForm add = additive_form(FormVariant::AdditiveTranspose, s2, s4, Mat::identity(f4, 2), emb,
                                      Mat::identity(f4, 2));
    REQUIRE(eval(add, zero).is_zero());
    // the Semrl evaluation is defined on all 16 inputs
    REQUIRE_NOTHROW(tabulate(semrl));
}

TEST_CASE("valid L sweep") {
    const Field& f4 = gf(4);
    auto id_hom = enumerate_field_homs(f4, f4).front();
    auto ls = valid_Ls(id_hom, 2);
    REQUIRE(ls.size() == 1);  // surjective tau forces L = 0
    REQUIRE(ls[0].is_zero());

    const Field& f2 = gf(2);
    auto emb = enumerate_field_homs(f2, f4).front();
    auto ls2 = valid_Ls(emb, 2);
    REQUIRE_FALSE(ls2.empty());
    REQUIRE(ls2.front().is_zero());  // 0 is always valid and sorts first
    Mat omega_e11 = Mat::unit(f4, 2, 2, 0, 0).scaled(2);
    bool has_omega = false;
    for (const auto& l : ls2) has_omega = has_omega || l == omega_e11;
    REQUIRE(has_omega);
    // every reported L really keeps I + X^tau L invertible
    Space xs(f2, 2, 2);
    for (const auto& l : ls2)
        for (Enc xe = 0; xe < xs.count(); ++xe)
            REQUIRE(is_invertible(Mat::identity(f4, 2) + xs.decode(xe).mapped(emb) * l));
}

TEST_CASE("additive tabulations are additive and homomorphic") {
    const Field& f3 = gf(3);
    Space s(f3, 2, 2), d(f3, 3, 3);
    auto id_hom = enumerate_field_homs(f3, f3).front();
    Mat p = from_rows(f3, {{1, 0}, {0, 1}, {1, 2}});  // rank 2, not square
    Mat q = from_rows(f3, {{1, 0, 1}, {0, 1, 2}});    // rank 2
    CanonicalForm form = additive_form(FormVariant::AdditiveStandard, s, d, p, id_hom, q);
    MapTable t = tabulate(form);
    REQUIRE_FALSE(t.hom_violation().has_value());
    REQUIRE(is_additive(t));
    CanonicalForm tform = additive_form(FormVariant::AdditiveTranspose, s, d, p, id_hom,
                                        from_rows(f3, {{1, 0, 0}, {0, 1, 0}}));
    MapTable tt = tabulate(tform);
    REQUIRE_FALSE(tt.hom_violation().has_value());
    REQUIRE(is_additive(tt));
}

TEST_CASE("Semrl tabulations preserve distance, including shifted ones") {
    const Field& f2 = gf(2);
    const Field& f4 = gf(4);
    Space s2(f2, 2, 2), s4(f4, 2, 2);
    auto emb = enumerate_field_homs(f2, f4).front();
    Mat l = Mat::unit(f4, 2, 2, 0, 0).scaled(2);
    Mat p = from_rows(f4, {{2, 1}, {1, 1}});
    Mat q = from_rows(f4, {{1, 2}, {0, 3}});
    REQUIRE(is_invertible(p));
    REQUIRE(is_invertible(q));
    for (FormVariant v : {FormVariant::SemrlStandard, FormVariant::SemrlTranspose}) {
        CanonicalForm form = semrl_form(v, s2, s4, p, l, emb, q);
        MapTable t = tabulate(form);
        REQUIRE_FALSE(t.hom_violation().has_value());
        REQUIRE(is_distance_preserving(t));
        REQUIRE_FALSE(is_additive(t));  // nonzero L breaks additivity
    }
    Mat a0 = Mat::identity(f2, 2);
    Mat offset = from_rows(f4, {{1, 2}, {3, 0}});
    for (FormVariant v : {FormVariant::ShiftedSemrlStandard, FormVariant::ShiftedSemrlTranspose}) {
        CanonicalForm form = semrl_form(v, s2, s4, p, l, emb, q, a0, offset);
        MapTable t = tabulate(form);
        REQUIRE(is_distance_preserving(t));
        REQUIRE(t.apply(a0) == offset);  // the shift base maps to the offset
    }
}

TEST_CASE("L = 0 with invertible P and Q preserves rank") {
    const Field& f3 = gf(3);
    Space s(f3, 2, 2), d(f3, 2, 3);
    auto id_hom = enumerate_field_homs(f3, f3).front();
    Mat p = Mat::identity(f3, 2);
    Mat q = from_rows(f3, {{1, 0, 2}, {0, 1, 1}, {0, 0, 1}});
    CanonicalForm form = semrl_form(FormVariant::SemrlStandard, s, d, p, Mat(f3, 2, 2), id_hom, q);
    for (Enc e = 0; e < s.count(); ++e) {
        Mat x = s.decode(e);
        REQUIRE(rank(eval(form, x)) == rank(x));
    }
}

TEST_CASE("form constructors reject invalid parameters") {
    const Field& f2 = gf(2);
    const Field& f4 = gf(4);
    Space s(f2, 2, 2), d(f4, 2, 2);
    auto emb = enumerate_field_homs(f2, f4).front();
    REQUIRE_THROWS_AS(additive_form(FormVariant::AdditiveStandard, s, d, Mat::unit(f4, 2, 2, 0, 0), emb,
                                    Mat::identity(f4, 2)),
                      error);
    REQUIRE_THROWS_AS(semrl_form(FormVariant::SemrlStandard, s, d, Mat::unit(f4, 2, 2, 0, 0), Mat(f4, 2, 2),
                                 emb, Mat::identity(f4, 2)),
                      error);
    // L = I is invalid for tau = id over GF(2): I + I L vanishes at X = I
    auto id2 = enumerate_field_homs(f2, f2).front();
    REQUIRE_THROWS_AS(semrl_form(FormVariant::SemrlStandard, s, Space(f2, 2, 2), Mat::identity(f2, 2),
                                 Mat::identity(f2, 2), id2, Mat::identity(f2, 2)),
                      invalid_l);
}

TEST_CASE("colouring construction") {
    const Field& f2 = gf(2);
    const Field& f4 = gf(4);
    Space src(f2, 2, 2);
    Mat zero4(f4, 2, 2);
    MaximalSet target = row_set_through(zero4, {1, 0});
    // weights {1, omega} are independent over GF(2) inside GF(4)
    MapTable t = make_colouring(src, target, {1, 2});
    REQUIRE_FALSE(t.hom_violation().has_value());
    auto img = image_encs(t);
    REQUIRE(img.size() == 4);  // q^m colours
    for (Enc e : img) REQUIRE(contains(target, t.dst.decode(e)));
    for (std::size_t i = 0; i < img.size(); ++i)
        for (std::size_t j = i + 1; j < img.size(); ++j)
            REQUIRE(rank(t.dst.decode(img[i]) - t.dst.decode(img[j])) == 1);
    REQUIRE_THROWS_AS(make_colouring(src, target, {1, 1}), improper_colouring);
    // the 4-point cliques of GF(2)^{2x2} cannot hold the 16 colours of a GF(4) source
    Space src4(f4, 2, 2);
    MaximalSet small = row_set_through(Mat(f2, 2, 2), {1, 0});
    REQUIRE(small.cardinality() == 4);
    REQUIRE_THROWS_AS(make_colouring(src4, small, {1, 2}), target_too_small);
}

TEST_CASE("colouring of a wide space flips to the transpose internally") {
    const Field& f2 = gf(2);
    Space src(f2, 2, 3);  // n > m, tower is GF(q^n) = GF(8)
    Mat zero(gf(8), 2, 2);
    MaximalSet target = row_set_through(zero, {1, 0});
    REQUIRE(target.cardinality() == 64);  // plenty of room for the 8 colours
    MapTable t = make_colouring(src, target, {1, 2});  // two weights for the two rows
    REQUIRE_FALSE(t.hom_violation().has_value());
    REQUIRE(image_encs(t).size() == 8);
}
