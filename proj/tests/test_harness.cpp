#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "matgeo/harness.hpp"

using namespace matgeo;
using namespace matgeo::harness;

TEST_CASE("metric and structure suite passes at the small regime") {
    auto reports = verify_metric_and_structure({{2, 2, 2}});
    REQUIRE(all_pass(reports));
    // the metric report counted all ordered pairs of the 16-vertex graph
    for (const auto& r : reports)
        if (r.theorem_id == "metric.rank-equals-path-distance") REQUIRE(r.checked == 256);
}

TEST_CASE("additive classification sweep") {
    AdditiveSweepCounts counts;
    auto reports = verify_additive_classification(&counts);
    REQUIRE(all_pass(reports));
    REQUIRE(counts.total == 65536);
    REQUIRE(counts.homs == counts.colourings + counts.recovered);
    REQUIRE(counts.homs > 0);
    // identity map is additive, a homomorphism, and recovered
    REQUIRE(counts.recovered > 0);
    REQUIRE(counts.colourings > 0);
}

TEST_CASE("Semrl suite") {
    auto reports = verify_semrl_theorem();
    for (const auto& r : reports) {
        INFO(r.theorem_id);
        for (const auto& w : r.witnesses) INFO(w);
        REQUIRE(r.pass());
    }
}

TEST_CASE("colouring bound suite") {
    auto reports = verify_colouring_bound();
    for (const auto& r : reports) {
        INFO(r.theorem_id);
        for (const auto& w : r.witnesses) INFO(w);
        REQUIRE(r.pass());
    }
}

TEST_CASE("degenerate range sampling at the small regime") {
    auto reports = verify_degenerate_range(42, 120, Regime{2, 2, 2}, false);
    for (const auto& r : reports) {
        INFO(r.theorem_id);
        for (const auto& w : r.witnesses) INFO(w);
        REQUIRE(r.pass());
    }
}

TEST_CASE("non-degenerate properties suite") {
    auto reports = verify_nondegenerate_props(0);
    for (const auto& r : reports) {
        INFO(r.theorem_id);
        for (const auto& w : r.witnesses) INFO(w);
        REQUIRE(r.pass());
    }
}

TEST_CASE("reports are reproducible") {
    auto once = verify_colouring_bound();
    auto twice = verify_colouring_bound();
    std::ostringstream a, b;
    write_reports(a, once);
    write_reports(b, twice);
    REQUIRE(a.str() == b.str());
}

TEST_CASE("report format") {
    VerificationReport r{"demo.claim", "GF(2)^{2x2}", "exhaustive"};
    r.checked = 10;
    std::ostringstream os;
    r.write(os);
    REQUIRE(os.str().rfind("demo.claim pass 10 0\n", 0) == 0);
    r.fail("bad pair");
    std::ostringstream os2;
    r.write(os2);
    REQUIRE(os2.str().rfind("demo.claim fail 10 1\n", 0) == 0);
    REQUIRE(os2.str().find("witness: bad pair") != std::string::npos);
}

TEST_CASE("the suites cover the in-scope claims manifest") {
    // manifest of claim families the harness must touch, one id per claim
    std::set<std::string> manifest = {
        "metric.rank-equals-path-distance", "metric.edge-in-two-cliques", "metric.clique-intersections",
        "metric.line-length",               "metric.three-point-membership", "metric.support-dichotomy",
        "additive.classification-sweep",    "additive.degenerate-implies-colouring",
        "semrl.surjective-forces-zero-l",   "semrl.embedding-valid-l",
        "semrl.forms-distance-preserving",  "semrl.recovery-round-trip",
        "bound.large-to-small-unsat",       "bound.small-to-large-found", "bound.budget-semantics",
        "range.trichotomy-sample-sweep",    "range.full-rank-degenerate-adjacent-sets",
        "range.exploratory-above-bound",    "nondeg.image-clique-uniqueness",
        "nondeg.dim-bound",                 "nondeg.order-monotonicity",
    };
    std::set<std::string> seen;
    for (const auto& r : verify_metric_and_structure({{2, 2, 2}})) seen.insert(r.theorem_id);
    for (const auto& r : verify_additive_classification()) seen.insert(r.theorem_id);
    for (const auto& r : verify_semrl_theorem()) seen.insert(r.theorem_id);
    for (const auto& r : verify_colouring_bound()) seen.insert(r.theorem_id);
    for (const auto& r : verify_degenerate_range(1, 100, Regime{2, 2, 2}, true)) seen.insert(r.theorem_id);
    for (const auto& r : verify_nondegenerate_props(0)) seen.insert(r.theorem_id);
    REQUIRE(seen == manifest);
}
