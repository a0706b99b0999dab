// Bit-packed matrix layer against an explicit 0/1-vector oracle plus frozen
// values for the canonical [8,4,4] generator.

#include <catch2/catch_amalgamated.hpp>

#include <sodist/binary_matrix.hpp>

#include <set>
#include <sstream>

#include "support/oracles.hpp"

using namespace sodist;

namespace {

const std::vector<std::string> kExtendedHamming = {
    "10001110",
    "01001101",
    "00101011",
    "00010111",
};

// Independent rank: the row space of a k-row matrix has 2^rank distinct
// elements, so counting distinct span vectors recovers the rank.
int oracle_rank(const BinaryMatrix& m) {
    auto words = oracle::span(oracle::rows_of(m), m.cols());
    std::set<oracle::Row> distinct(words.begin(), words.end());
    int r = 0;
    while ((std::size_t{1} << r) < distinct.size()) ++r;
    return r;
}

}  // namespace

TEST_CASE("get/set/flip round trip") {
    BinaryMatrix m(3, 70);  // spans two 64-bit words
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 70);
    REQUIRE_FALSE(m.get(2, 69));
    m.set(2, 69, true);
    REQUIRE(m.get(2, 69));
    m.flip(2, 69);
    REQUIRE_FALSE(m.get(2, 69));
    REQUIRE_THROWS_AS(m.get(3, 0), std::out_of_range);
    REQUIRE_THROWS_AS(m.get(0, 70), std::out_of_range);
    REQUIRE_THROWS_AS(BinaryMatrix(-1, 2), std::invalid_argument);
}

TEST_CASE("canonical [8,4,4] generator: frozen code-level values") {
    BinaryMatrix g = BinaryMatrix::from_rows(kExtendedHamming);
    REQUIRE(g.rank() == 4);
    REQUIRE(g.is_self_orthogonal());
    REQUIRE(g.is_even_like());
    REQUIRE(g.min_distance() == 4);

    WeightDistribution dist = g.weight_distribution();
    REQUIRE(dist.size() == 9);
    CHECK(dist[0] == 1);
    CHECK(dist[4] == 14);
    CHECK(dist[8] == 1);
    CHECK(dist[1] + dist[2] + dist[3] + dist[5] + dist[6] + dist[7] == 0);
}

TEST_CASE("row_dot and row_weight match the oracle") {
    std::mt19937 rng(2026);
    for (int trial = 0; trial < 25; ++trial) {
        BinaryMatrix m = oracle::random_matrix(rng, 4, 70, false);
        auto rows = oracle::rows_of(m);
        for (int i = 0; i < 4; ++i) {
            REQUIRE(m.row_weight(i) == oracle::weight(rows[std::size_t(i)]));
            for (int j = 0; j < 4; ++j) {
                int dot = 0;
                for (int c = 0; c < 70; ++c)
                    dot ^= rows[std::size_t(i)][std::size_t(c)] & rows[std::size_t(j)][std::size_t(c)];
                REQUIRE(int(m.row_dot(i, j)) == dot);
            }
        }
    }
}

TEST_CASE("rank matches the distinct-span oracle") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        int k = 1 + int(rng() % 6);
        int n = 1 + int(rng() % 20);
        BinaryMatrix m = oracle::random_matrix(rng, k, n, false);
        REQUIRE(m.rank() == oracle_rank(m));
    }
    BinaryMatrix zero(4, 9);
    REQUIRE(zero.rank() == 0);
}

TEST_CASE("min_distance and weight_distribution match the oracle") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        int k = 1 + int(rng() % 6);
        int n = k + int(rng() % 30);
        BinaryMatrix m = oracle::random_matrix(rng, k, n, true);
        auto rows = oracle::rows_of(m);
        REQUIRE(m.min_distance() == oracle::min_distance(rows, n));
        REQUIRE(m.weight_distribution() == oracle::weight_distribution(rows, n));
        REQUIRE(m.is_self_orthogonal() == oracle::self_orthogonal(rows, n));
    }
}

TEST_CASE("enumeration refuses rank-deficient and oversized generators") {
    BinaryMatrix dup = BinaryMatrix::from_rows({"1100", "1100"});
    REQUIRE(dup.rank() == 1);
    REQUIRE_THROWS_AS(dup.min_distance(), RankDeficient);
    REQUIRE_THROWS_AS(dup.weight_distribution(), RankDeficient);

    BinaryMatrix wide(kMaxEnumerationDim + 1, kMaxEnumerationDim + 1);
    REQUIRE_THROWS_AS(wide.min_distance(), std::invalid_argument);
}

TEST_CASE("hconcat") {
    BinaryMatrix a = BinaryMatrix::from_rows({"10", "01"});
    BinaryMatrix b = BinaryMatrix::from_rows({"111", "000"});
    BinaryMatrix ab = BinaryMatrix::hconcat(a, b);
    REQUIRE(ab == BinaryMatrix::from_rows({"10111", "01000"}));
    BinaryMatrix c(3, 2);
    REQUIRE_THROWS_AS(BinaryMatrix::hconcat(a, c), std::invalid_argument);
}

TEST_CASE("parse/serialize round trip and the exact text format") {
    BinaryMatrix g = BinaryMatrix::from_rows(kExtendedHamming);
    std::string text = g.to_text();
    REQUIRE(text ==
            "4 8\n"
            "10001110\n"
            "01001101\n"
            "00101011\n"
            "00010111\n");
    REQUIRE(BinaryMatrix::parse(text) == g);

    // Windows line endings are tolerated.
    std::string crlf = "2 3\r\n101\r\n010\r\n";
    REQUIRE(BinaryMatrix::parse(crlf) == BinaryMatrix::from_rows({"101", "010"}));
}

TEST_CASE("parse rejects malformed input") {
    REQUIRE_THROWS_AS(BinaryMatrix::parse("x y\n"), ParseError);
    REQUIRE_THROWS_AS(BinaryMatrix::parse("2 3\n101\n"), ParseError);       // missing row
    REQUIRE_THROWS_AS(BinaryMatrix::parse("2 3\n101\n01\n"), ParseError);   // short row
    REQUIRE_THROWS_AS(BinaryMatrix::parse("1 3\n1x1\n"), ParseError);       // bad character
    REQUIRE_THROWS_AS(BinaryMatrix::parse("-1 3\n"), ParseError);           // negative header
    REQUIRE_THROWS_AS(BinaryMatrix::from_rows({"10", "1"}), std::invalid_argument);
}

TEST_CASE("is_even_like is a subspace property checked on the rows") {
    REQUIRE(BinaryMatrix::from_rows({"1100", "0110"}).is_even_like());
    REQUIRE_FALSE(BinaryMatrix::from_rows({"1110", "0110"}).is_even_like());
    // All rows even implies every codeword even.
    std::mt19937 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        BinaryMatrix m = oracle::random_matrix(rng, 4, 12, false);
        if (!m.is_even_like()) continue;
        for (const auto& w : oracle::span(oracle::rows_of(m), 12))
            REQUIRE(oracle::weight(w) % 2 == 0);
    }
}
