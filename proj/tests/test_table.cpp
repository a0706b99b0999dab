// Seed cache and the certification layer: verified loading, best-seed
// retention, analytic bounds, search closing at n and n - 1, table output,
// and integrity when seeds disappear.

#include <catch2/catch_amalgamated.hpp>

#include <sodist/table.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "support/oracles.hpp"

using namespace sodist;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("sodist-table-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const std::vector<std::string> kSeedRows = {
    "10001110",
    "01001101",
    "00101011",
    "00010111",
};

// A second [8,4] self-orthogonal code, distance only 2.
const std::vector<std::string> kWeakRows = {
    "11000000",
    "00110000",
    "00001100",
    "00000011",
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// The table's ground truth at k = 3: best over all zero-column splits of the
// exhaustive multiset optimum.
int brute_dso(int n, int k) {
    int best = 0;
    for (int nz = k; nz <= n; ++nz) {
        auto r = oracle::brute_force_best(nz, k, true);
        if (r.feasible && r.best_d > best) best = r.best_d;
    }
    return best;
}

}  // namespace

TEST_CASE("seed cache: insert, persist, reload, query") {
    TempDir tmp;
    {
        SeedCache cache(tmp.path);
        const SeedEntry& e = cache.insert(BinaryMatrix::from_rows(kSeedRows), "fixture");
        REQUIRE(e.file == "n4_8_d4_so.txt");
        REQUIRE(e.witness.params == CodeParams{8, 4, 4});
        REQUIRE(fs::exists(tmp.path / "n4_8_d4_so.txt"));
        REQUIRE(cache.contains(4, 8));
    }
    SeedCache reloaded(tmp.path);
    REQUIRE(reloaded.contains(4, 8));
    const SeedEntry* e = reloaded.find(4, 8);
    REQUIRE(e != nullptr);
    REQUIRE(e->witness.params.d == 4);
    REQUIRE(reloaded.entries().size() == 1);
    REQUIRE(reloaded.erase(4, 8));
    REQUIRE_FALSE(reloaded.contains(4, 8));
}

TEST_CASE("seed cache keeps the best distance per (k, n)") {
    TempDir tmp;
    SeedCache cache(tmp.path);
    cache.insert(BinaryMatrix::from_rows(kSeedRows), "fixture");   // d = 4
    cache.insert(BinaryMatrix::from_rows(kWeakRows), "fixture");   // d = 2
    REQUIRE(cache.find(4, 8)->witness.params.d == 4);

    SeedCache other(tmp.path / "other");
    other.insert(BinaryMatrix::from_rows(kWeakRows), "fixture");
    other.insert(BinaryMatrix::from_rows(kSeedRows), "fixture");
    REQUIRE(other.find(4, 8)->witness.params.d == 4);
}

TEST_CASE("seed cache refuses non-self-orthogonal and corrupt input") {
    TempDir tmp;
    SeedCache cache(tmp.path);
    REQUIRE_THROWS_AS(cache.insert(BinaryMatrix::from_rows({"100", "010"}), "fixture"),
                      VerificationFailed);

    // A tampered file on disk fails the load of a fresh cache.
    std::ofstream(tmp.path / "n4_8_d6_so.txt")
        << "# 8 4 6 so=1\n4 8\n10001110\n01001101\n00101011\n00010111\n";
    REQUIRE_THROWS_AS(SeedCache(tmp.path), VerificationFailed);
}

TEST_CASE("dso: analytic bounds from one seed") {
    TempDir tmp;
    SeedCache cache(tmp.path);
    cache.insert(simplex(3), "fixture");

    DistanceTableEntry e = dso(7, 3, cache);
    REQUIRE(e.status == TableStatus::Certified);
    REQUIRE(e.lower.value == 4);
    REQUIRE(e.upper.value == 4);
    REQUIRE(e.witness_file == "n3_7_d4_so.txt");

    // Zero-column extension: same distance at n = 10.
    e = dso(10, 3, cache);
    REQUIRE(e.status == TableStatus::Certified);
    REQUIRE(e.lower.value == 4);
    REQUIRE(e.lower.provenance == "n3_7_d4_so.txt + 0 simplex pad + 3 zero cols");

    // One simplex pad: [14,3,8].
    e = dso(14, 3, cache);
    REQUIRE(e.status == TableStatus::Certified);
    REQUIRE(e.lower.value == 8);
    REQUIRE(e.lower.provenance == "n3_7_d4_so.txt + 1 simplex pad + 0 zero cols");
}

TEST_CASE("dso: empty cache reports an honest gap") {
    SeedCache cache;  // in-memory, empty
    DistanceTableEntry e = dso(7, 3, cache);
    REQUIRE(e.status == TableStatus::Gap);
    REQUIRE(e.lower.value == 0);
    REQUIRE(e.lower.provenance == "none");
    REQUIRE(e.upper.value == 4);
    REQUIRE(e.witness_file == "-");
}

TEST_CASE("dso: search closes gaps and certifies both sides") {
    TempDir tmp;
    SeedCache cache(tmp.path);
    DsoOptions opts;
    opts.allow_search = true;
    opts.budget_seconds = 120;

    DistanceTableEntry e = dso(7, 3, cache, opts);
    REQUIRE(e.status == TableStatus::Certified);
    REQUIRE(e.lower.value == 4);
    REQUIRE(cache.contains(3, 7));
    REQUIRE(cache.find(3, 7)->origin == "searched");
    REQUIRE(fs::exists(tmp.path / "n3_7_d4_so.txt"));

    // d_so(14,5) = 4: no chain rule refutes [14,5,6], only exhaustion at
    // lengths 14 and 13 does, and the searched witnesses carry the lower side.
    e = dso(14, 5, cache, opts);
    REQUIRE(e.status == TableStatus::Certified);
    REQUIRE(e.lower.value == 4);
    REQUIRE(e.upper.value == 4);
    REQUIRE(e.upper.provenance == "search-exhausted at n and n-1");
}

TEST_CASE("dso: refutation chains push the upper bound down") {
    SeedCache cache;
    DistanceTableEntry e = dso(37, 5, cache);
    REQUIRE(e.upper.value == 16);  // cap is 18; [37,5,18] falls to a chain
    REQUIRE(e.upper.provenance == "refutation chain below griesmer-cap");
    REQUIRE(e.chains.size() == 1);
    REQUIRE(e.chains[0].claim == CodeParams{37, 5, 18});
}

TEST_CASE("dso rejects malformed queries") {
    SeedCache cache;
    REQUIRE_THROWS_AS(dso(0, 3, cache), std::invalid_argument);
    REQUIRE_THROWS_AS(dso(5, 0, cache), std::invalid_argument);
}

TEST_CASE("build_table at k = 3 equals exhaustive enumeration") {
    TempDir tmp;
    SeedCache cache(tmp.path);
    DsoOptions opts;
    opts.allow_search = true;
    opts.budget_seconds = 120;
    auto rows = build_table(3, 3, 16, cache, opts);
    REQUIRE(rows.size() == 14);
    for (const auto& e : rows) {
        INFO("n=" << e.n);
        REQUIRE(e.status == TableStatus::Certified);
        REQUIRE(e.lower.value == brute_dso(e.n, 3));
        REQUIRE(e.lower.value % 2 == 0);
    }
    // Certified values never decrease in n.
    for (std::size_t i = 1; i < rows.size(); ++i)
        REQUIRE(rows[i].lower.value >= rows[i - 1].lower.value);
}

TEST_CASE("write_tsv: exact layout and chain files") {
    TempDir tmp;
    SeedCache cache(tmp.path / "seeds");
    cache.insert(simplex(3), "fixture");
    std::vector<DistanceTableEntry> rows;
    rows.push_back(dso(7, 3, cache));
    SeedCache empty;
    rows.push_back(dso(37, 5, empty));

    fs::path tsv = tmp.path / "table.tsv";
    fs::path chains = tmp.path / "chains";
    write_tsv(rows, tsv, chains);
    REQUIRE(slurp(tsv) ==
            "n\tk\tlower\tupper\tstatus\twitness-file\tchain-file\n"
            "7\t3\t4\t4\tCertified\tn3_7_d4_so.txt\t-\n"
            "37\t5\t0\t16\tGap\t-\trefute_n5_37.txt\n");
    REQUIRE(slurp(chains / "refute_n5_37.txt") ==
            "CLAIM [37,5,18]so\n"
            "RULE residual: [37,5,18]so -> [19,4,10]even-like\n"
            "RULE griesmer: d(19,4) <= 9 < 10 CONTRADICTION\n");
}

TEST_CASE("a vanished seed degrades to a gap, never to a fabricated value") {
    TempDir tmp;
    SeedCache cache(tmp.path);
    cache.insert(simplex(5), "fixture");  // [31,5,16]
    REQUIRE(dso(31, 5, cache).status == TableStatus::Certified);
    cache.erase(5, 31);
    DistanceTableEntry e = dso(31, 5, cache);
    REQUIRE(e.status == TableStatus::Gap);
    REQUIRE(e.lower.value == 0);
    REQUIRE(e.upper.value == 16);
}
