#include <catch2/catch_amalgamated.hpp>

#include "matgeo/search.hpp"

using namespace matgeo;

namespace {

SearchProblem basic_problem(unsigned qs, unsigned qd) {
    SearchProblem p;
    p.src = Space(gf(qs), 2, 2);
    p.dst = Space(gf(qd), 2, 2);
    return p;
}

}  // namespace

TEST_CASE("fully pinned problems only verify") {
    SearchProblem p = basic_problem(2, 2);
    for (Enc e = 0; e < p.src.count(); ++e) p.pins.emplace_back(e, e);
    SearchResult r = search_hom(p);
    REQUIRE(r.status == SearchStatus::Found);
    REQUIRE(r.table.has_value());
    for (Enc e = 0; e < p.src.count(); ++e) REQUIRE(r.table->out[e] == e);
    auto all = enumerate_homs(p, 10);
    REQUIRE(all.size() == 1);
}

TEST_CASE("enumeration yields verified homomorphisms") {
    SearchProblem p = basic_problem(2, 2);
    p.fix_zero_to_zero = true;
    auto homs = enumerate_homs(p, 10);
    REQUIRE(homs.size() == 10);
    for (const auto& t : homs) {
        REQUIRE_FALSE(t.hom_violation().has_value());
        REQUIRE(t.out[0] == 0);
    }
    REQUIRE(enumerate_homs(p, 0).empty());
}

TEST_CASE("budget of one is reported as exceeded with one node") {
    SearchProblem p = basic_problem(2, 2);
    p.budget = 1;
    SearchResult r = search_hom(p);
    REQUIRE(r.status == SearchStatus::BudgetExceeded);
    REQUIRE(r.stats.nodes == 1);
}

TEST_CASE("inconsistent pins are rejected at construction") {
    SearchProblem p = basic_problem(2, 2);
    p.pins.emplace_back(0, 0);
    p.pins.emplace_back(1, 0);  // E11 adjacent to 0, images equal
    REQUIRE_THROWS_AS(search_hom(p), invalid_problem);
    SearchProblem dup = basic_problem(2, 2);
    dup.pins.emplace_back(0, 0);
    dup.pins.emplace_back(0, 1);
    REQUIRE_THROWS_AS(search_hom(dup), invalid_problem);
}

TEST_CASE("sampling is reproducible and sound") {
    SearchProblem p = basic_problem(2, 2);
    p.fix_zero_to_zero = true;
    auto s1 = sample_homs(p, 5, 42);
    auto s2 = sample_homs(p, 5, 42);
    REQUIRE(s1.size() == 5);
    REQUIRE(s2.size() == 5);
    for (std::size_t i = 0; i < s1.size(); ++i) REQUIRE(s1[i] == s2[i]);
    for (std::size_t i = 0; i < s1.size(); ++i)
        for (std::size_t j = i + 1; j < s1.size(); ++j) REQUIRE(s1[i].out != s1[j].out);
    for (const auto& t : s1) {
        REQUIRE_FALSE(t.hom_violation().has_value());
        REQUIRE(t.out[0] == 0);
    }
    auto s3 = sample_homs(p, 5, 43);
    bool any_diff = false;
    for (std::size_t i = 0; i < 5; ++i) any_diff = any_diff || s3[i].out != s1[i].out;
    REQUIRE(any_diff);
}

TEST_CASE("distance-2 image constraint on the designated pair") {
    SearchProblem p = basic_problem(2, 2);
    p.fix_zero_to_zero = true;
    p.require_distance2_image_pair = true;
    SearchResult r = search_hom(p);
    REQUIRE(r.status == SearchStatus::Found);
    Enc designated = p.src.encode(Mat::identity(*p.src.field, 2));
    Mat img = r.table->dst.decode(r.table->out[designated]);
    REQUIRE(rank(img) == 2);
}

TEST_CASE("degenerate witness constraint filters solutions") {
    SearchProblem p = basic_problem(2, 2);
    p.fix_zero_to_zero = true;
    p.require_degenerate_witness = true;
    SearchResult r = search_hom(p);
    REQUIRE(r.status == SearchStatus::Found);
    REQUIRE(is_degenerate(*r.table).has_value());
}

TEST_CASE("no degenerate map with a distance-2 image pair exists on GF(2) at 2x2") {
    // over one field degenerate means colouring, and colourings have image
    // diameter 1, so the combined constraints are unsatisfiable
    SearchProblem p = basic_problem(2, 2);
    p.fix_zero_to_zero = true;
    p.require_distance2_image_pair = true;
    p.require_degenerate_witness = true;
    p.symmetry_reduction = true;
    SearchResult r = search_hom(p);
    REQUIRE(r.status == SearchStatus::Unsat);
    // the reduction does not change satisfiability on the positive instance
    SearchProblem sat = basic_problem(2, 2);
    sat.fix_zero_to_zero = true;
    sat.require_distance2_image_pair = true;
    sat.symmetry_reduction = true;
    REQUIRE(search_hom(sat).status == SearchStatus::Found);
}

TEST_CASE("complete enumeration reproduces the census of maps fixing zero") {
    // independent cross-check of the searcher against the additive sweep: at
    // GF(2), 2x2 -> 2x2 every homomorphism fixing 0 is additive, and the
    // census splits into 72 clique colourings and 72 distance-preserving
    // bijective forms
    SearchProblem p = basic_problem(2, 2);
    p.fix_zero_to_zero = true;
    auto all = enumerate_homs(p, 100000);
    REQUIRE(all.size() == 144);
    int colourings = 0, additive = 0, dpres = 0;
    for (const auto& t : all) {
        colourings += is_colouring(t);
        additive += is_additive(t);
        dpres += is_distance_preserving(t);
    }
    REQUIRE(colourings == 72);
    REQUIRE(additive == 144);
    REQUIRE(dpres == 72);
    SearchProblem d2 = p;
    d2.require_distance2_image_pair = true;
    REQUIRE(enumerate_homs(d2, 100000).size() == 72);  // exactly the bijective forms
    SearchProblem deg = p;
    deg.require_degenerate_witness = true;
    REQUIRE(enumerate_homs(deg, 100000).size() == 72);  // exactly the colourings
}

TEST_CASE("sampling an unsatisfiable problem returns nothing") {
    SearchProblem p = basic_problem(3, 2);
    p.fix_zero_to_zero = true;
    p.require_distance2_image_pair = true;
    REQUIRE(sample_homs(p, 3, 1, 1000, 10).empty());
}

TEST_CASE("symmetry reduction refuses foreign pins") {
    SearchProblem p = basic_problem(2, 2);
    p.pins.emplace_back(1, 1);
    p.symmetry_reduction = true;
    REQUIRE_THROWS_AS(search_hom(p), invalid_problem);
}

TEST_CASE("sanity inversion: a small-to-large homomorphism with a distance-2 image pair exists") {
    SearchProblem p = basic_problem(2, 3);
    p.fix_zero_to_zero = true;
    p.require_distance2_image_pair = true;
    p.symmetry_reduction = true;
    SearchResult r = search_hom(p);
    REQUIRE(r.status == SearchStatus::Found);
    REQUIRE_FALSE(r.table->hom_violation().has_value());
    REQUIRE_FALSE(is_colouring(*r.table));
}

TEST_CASE("problem files parse") {
    std::string text =
        "problem v1\n"
        "src field p=3 k=1 poly=1,1\n"
        "src shape 2 2\n"
        "dst field p=2 k=1 poly=1,1\n"
        "dst shape 2 2\n"
        "pin 0,0,0,0 => 0,0,0,0\n"
        "constraint require_distance2_image_pair\n"
        "constraint symmetry_reduction\n"
        "budget 5000\n"
        "seed 7\n";
    std::istringstream is(text);
    SearchProblem p = read_problem(is);
    REQUIRE(p.src.field->q() == 3);
    REQUIRE(p.dst.field->q() == 2);
    REQUIRE(p.pins.size() == 1);
    REQUIRE(p.require_distance2_image_pair);
    REQUIRE(p.symmetry_reduction);
    REQUIRE(p.budget == 5000);
    REQUIRE(p.seed == 7);
    std::istringstream bad("problem v1\nsrc field p=2 k=1 poly=1,1\nsrc shape 2 2\n"
                           "dst field p=2 k=1 poly=1,1\ndst shape 2 2\nconstraint bogus\n");
    REQUIRE_THROWS_AS(read_problem(bad), parse_error);
}
