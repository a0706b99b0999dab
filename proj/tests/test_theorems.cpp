// Closed-form theorem verification against the shipped seed fixtures.  These
// tests require the fixtures directory (SODIST_FIXTURES or ./fixtures).

#include <catch2/catch_amalgamated.hpp>

#include <sodist/table.hpp>

#include "support/oracles.hpp"

using namespace sodist;

namespace {

SeedCache& fixture_cache() {
    static SeedCache cache(oracle::fixtures_dir(), /*persistent=*/false);
    return cache;
}

const TheoremRow* find_row(const TheoremReport& r, int n) {
    for (const auto& row : r.rows)
        if (row.n == n) return &row;
    return nullptr;
}

}  // namespace

TEST_CASE("fixtures are present and verified") {
    SeedCache& cache = fixture_cache();
    // The anchors every theorem leans on.
    REQUIRE(cache.contains(5, 45));
    REQUIRE(cache.contains(5, 53));
    REQUIRE(cache.contains(5, 60));
    REQUIRE(cache.contains(5, 13));
    REQUIRE(cache.contains(5, 21));
    REQUIRE(cache.contains(5, 28));
    REQUIRE(cache.contains(5, 37));
    REQUIRE(cache.contains(6, 63));
    REQUIRE(cache.contains(6, 71));
    REQUIRE(cache.contains(6, 73));
    REQUIRE(cache.contains(6, 124));
}

TEST_CASE("d_so(31m + 14, 5) = 16m + 6 and companions") {
    TheoremReport r = verify_theorem("4.1", 3, fixture_cache());
    REQUIRE(r.ok);
    REQUIRE(r.rows.size() == 9);  // three residues, m = 1..3
    const TheoremRow* row = find_row(r, 45);
    REQUIRE(row != nullptr);
    REQUIRE(row->expected == 22);
    REQUIRE(row->entry.status == TableStatus::Certified);
    row = find_row(r, 76);  // m = 2: padded [45,5,22]
    REQUIRE(row != nullptr);
    REQUIRE(row->expected == 38);
    REQUIRE(row->entry.lower.provenance == "n5_45_d22_so.txt + 1 simplex pad + 0 zero cols");
    row = find_row(r, 122);  // m = 3 of residue 29
    REQUIRE(row != nullptr);
    REQUIRE(row->expected == 62);
}

TEST_CASE("d_so(31m + 6, 5) = 16m with its residual refutations") {
    TheoremReport r = verify_theorem("4.3", 3, fixture_cache());
    REQUIRE(r.ok);
    REQUIRE(r.rows.size() == 12);  // four residues, m = 1..3
    const TheoremRow* row = find_row(r, 37);
    REQUIRE(row != nullptr);
    REQUIRE(row->expected == 16);
    REQUIRE(row->refutation == "[37,5,18]so -> [19,4,10]even-like");
    row = find_row(r, 68);  // m = 2 of residue 6
    REQUIRE(row != nullptr);
    REQUIRE(row->expected == 32);
    REQUIRE(row->refutation == "[68,5,34]so -> [34,4,18]even-like");
    row = find_row(r, 44);  // m = 1 of residue 13
    REQUIRE(row != nullptr);
    REQUIRE(row->expected == 20);
}

TEST_CASE("the sixteen k = 6 windows certify") {
    TheoremReport r = verify_theorem("5.2", 2, fixture_cache());
    REQUIRE(r.ok);
    REQUIRE(r.rows.size() == 110);  // 55 residues per period, m = 1..2
    const TheoremRow* row = find_row(r, 63);
    REQUIRE(row != nullptr);
    REQUIRE(row->expected == 32);   // the simplex itself
    row = find_row(r, 69);
    REQUIRE(row != nullptr);
    REQUIRE(row->expected == 32);   // right edge of the first window
    row = find_row(r, 126);
    REQUIRE(row != nullptr);
    REQUIRE(row->expected == 64);   // doubled simplex length
    row = find_row(r, 187);         // m = 2, residue 61
    REQUIRE(row != nullptr);
    REQUIRE(row->expected == 94);
}

TEST_CASE("d_so(63m + 7, 6) = 32m and companions, with chains") {
    TheoremReport r = verify_theorem("5.3", 2, fixture_cache());
    REQUIRE(r.ok);
    REQUIRE(r.rows.size() == 16);  // eight residues, m = 1..2
    const TheoremRow* row = find_row(r, 70);
    REQUIRE(row != nullptr);
    REQUIRE(row->expected == 32);
    REQUIRE(row->refutation == "[70,6,34]so -> [36,5,18]even-like");
    row = find_row(r, 133);  // m = 2 of residue 7
    REQUIRE(row != nullptr);
    REQUIRE(row->expected == 64);
    REQUIRE(row->refutation == "[133,6,66]so -> [67,5,34]even-like");
    row = find_row(r, 116);  // m = 1 of residue 53
    REQUIRE(row != nullptr);
    REQUIRE(row->expected == 56);
}

TEST_CASE("verify_theorem argument validation") {
    SeedCache empty;
    REQUIRE_THROWS_AS(verify_theorem("9.9", 1, empty), std::invalid_argument);
    REQUIRE_THROWS_AS(verify_theorem("4.1", 0, empty), std::invalid_argument);
}

TEST_CASE("a missing anchor raises MissingSeed instead of failing silently") {
    SeedCache empty;
    try {
        verify_theorem("4.1", 1, empty);
        FAIL("expected MissingSeed");
    } catch (const MissingSeed& e) {
        REQUIRE(e.fixture == "n5_45_d22_so.txt");
    }
}

TEST_CASE("certified theorem values are also monotone and even") {
    SeedCache& cache = fixture_cache();
    int prev = 0;
    for (int n = 63; n <= 188; ++n) {
        DistanceTableEntry e = dso(n, 6, cache);
        REQUIRE(e.status == TableStatus::Certified);
        REQUIRE(e.lower.value % 2 == 0);
        REQUIRE(e.lower.value >= prev);
        prev = e.lower.value;
    }
}
