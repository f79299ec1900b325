#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "bnf/random_gen.hpp"
#include "bnf/serialize.hpp"

using namespace bnf;

TEST_CASE("polynomial jsonl round trip") {
    LatticeConfig lat(0, 4, true);
    RandomPolyOptions opts;
    opts.degree = 4;
    opts.n_pairs = 12;
    opts.structured = true;
    Polynomial f = random_symmetric_poly(lat, opts, 5);

    auto dir = std::filesystem::temp_directory_path() / "bnf_serialize_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "f.jsonl";
    FileMeta meta{"0.0.0-test", "deadbeef", 5, ""};
    write_polynomial_jsonl(f, path, &meta);
    Polynomial g = read_polynomial_jsonl(path, lat);

    REQUIRE(g.term_count() == f.term_count());
    for (const auto& [mi, c] : f.terms()) {
        REQUIRE(g.terms().count(mi) == 1);
        const Coefficient& gc = g.terms().at(mi);
        CHECK(gc.scalar == c.scalar);  // exact round trip
        REQUIRE(gc.ledger.has_value() == c.ledger.has_value());
        if (c.ledger) {
            REQUIRE(gc.ledger->size() == c.ledger->size());
            for (size_t i = 0; i < c.ledger->size(); ++i) {
                CHECK((*gc.ledger)[i].base == (*c.ledger)[i].base);
                CHECK((*gc.ledger)[i].i0 == (*c.ledger)[i].i0);
                CHECK((*gc.ledger)[i].inner == (*c.ledger)[i].inner);
            }
        }
    }

    // deterministic bytes on rewrite
    auto path2 = dir / "f2.jsonl";
    write_polynomial_jsonl(f, path2, &meta);
    std::ifstream a(path), b(path2);
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);

    // tilde round trip
    LatticeConfig lat1(1, 3, false);
    opts.structured = true;
    opts.degree = 3;
    Polynomial t = random_symmetric_poly(lat1, opts, 6);
    write_polynomial_jsonl(t, dir / "t.jsonl");
    Polynomial t2 = read_polynomial_jsonl(dir / "t.jsonl", lat1);
    for (const auto& [mi, c] : t.terms()) {
        REQUIRE(t2.terms().count(mi) == 1);
        REQUIRE(t2.terms().at(mi).tilde.has_value());
        CHECK(*t2.terms().at(mi).tilde == *c.tilde);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("frequency csv round trip") {
    LatticeConfig lat(1, 3, false);
    FrequencyVector fv(lat);
    for (int idx = 0; idx < lat.size(); ++idx)
        fv.omega[size_t(idx)] = -double(idx * idx) + 1.0 / 3.0;
    auto dir = std::filesystem::temp_directory_path() / "bnf_serialize_test2";
    std::filesystem::create_directories(dir);
    write_frequencies_csv(fv, dir / "f.csv");
    FrequencyVector fv2 = read_frequencies_csv(dir / "f.csv", lat);
    for (int idx = 0; idx < lat.size(); ++idx)
        CHECK(fv2.omega[size_t(idx)] == fv.omega[size_t(idx)]);
    std::filesystem::remove_all(dir);
}
