#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "yamabe/errors.hpp"
#include "yamabe/field_io.hpp"
#include "yamabe/random_field.hpp"

using namespace yamabe;

namespace {

struct TempFile {
    explicit TempFile(std::string name) : path(std::move(name)) {}
    ~TempFile() {
        std::remove(path.c_str());
        std::remove((path + ".json").c_str());
    }
    std::string path;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

} // namespace

TEST_CASE("round trip is bit exact") {
    std::mt19937_64 rng(1234);
    for (int t = 0; t < 10; ++t) {
        auto m = (t % 2 == 0) ? random_homogeneous(rng)
                              : random_weighted_graph(rng, 6);
        auto u = random_line_field(rng, m, uniform_int(rng, 2, 12),
                                   uniform_range(rng, 0.25, 1.0));
        TempFile file("io_roundtrip_" + std::to_string(t) + ".csv");
        save_field(u, file.path);
        auto v = load_field(file.path);
        CHECK(u.values() == v.values()); // bitwise
        CHECK(u.manifold() == v.manifold());
        CHECK(u.euclidean() == v.euclidean());
    }
}

TEST_CASE("round trip keeps awkward doubles") {
    std::vector<double> values = {0.0,
                                  1.0 / 3.0,
                                  std::numbers::pi / 7.0,
                                  std::nextafter(1.0, 2.0),
                                  5e-324,
                                  1.2345678901234567e+100,
                                  0.1,
                                  2.0,
                                  0.0};
    Field u(ManifoldFactor::homogeneous(1.0, 0.5),
            EuclideanFactor::line1d(4, 0.25), values);
    TempFile file("io_awkward.csv");
    save_field(u, file.path);
    CHECK(load_field(file.path).values() == values);
}

TEST_CASE("radial fields round trip") {
    std::vector<double> values(24);
    for (std::size_t k = 0; k < values.size(); ++k)
        values[k] = 1.0 / (1.0 + static_cast<double>(k));
    Field u(ManifoldFactor::homogeneous(2.0, 1.0),
            EuclideanFactor::radial(3, 6.0, 24), values);
    TempFile file("io_radial.csv");
    save_field(u, file.path);
    auto v = load_field(file.path);
    CHECK(v.values() == values);
    CHECK(v.euclidean().dim() == 3);
    CHECK(v.euclidean().r_max() == 6.0);
}

TEST_CASE("format violations are rejected") {
    Field u(ManifoldFactor::homogeneous(1.0, 1.0),
            EuclideanFactor::line1d(1, 1.0), {0.0, 2.0, 0.0});
    TempFile file("io_corrupt.csv");

    SUBCASE("negative value") {
        save_field(u, file.path);
        spit(file.path, "m_index,cell_index,value\n0,0,0\n0,1,-2\n0,2,0\n");
        CHECK_THROWS_AS(load_field(file.path), FormatError);
    }

    SUBCASE("row count below the grid size") {
        save_field(u, file.path);
        spit(file.path, "m_index,cell_index,value\n0,0,0\n0,1,2\n");
        CHECK_THROWS_AS(load_field(file.path), FormatError);
    }

    SUBCASE("duplicate entry") {
        save_field(u, file.path);
        spit(file.path, "m_index,cell_index,value\n0,0,0\n0,1,2\n0,1,2\n");
        CHECK_THROWS_AS(load_field(file.path), FormatError);
    }

    SUBCASE("index outside the grid") {
        save_field(u, file.path);
        spit(file.path, "m_index,cell_index,value\n0,0,0\n0,1,2\n0,7,0\n");
        CHECK_THROWS_AS(load_field(file.path), FormatError);
    }

    SUBCASE("missing header") {
        save_field(u, file.path);
        spit(file.path, "0,0,0\n0,1,2\n0,2,0\n");
        CHECK_THROWS_AS(load_field(file.path), FormatError);
    }

    SUBCASE("unknown manifold variant") {
        save_field(u, file.path);
        spit(file.path + ".json",
             R"({"format":"yamabe-field","version":1,)"
             R"("manifold":{"variant":"moebius","volume":1.0},)"
             R"("euclidean":{"variant":"line1d","half_extent":1,"spacing":1.0}})");
        CHECK_THROWS_AS(load_field(file.path), FormatError);
    }

    SUBCASE("metadata is not json") {
        save_field(u, file.path);
        spit(file.path + ".json", "not json at all");
        CHECK_THROWS_AS(load_field(file.path), FormatError);
    }
}

TEST_CASE("missing files raise io errors") {
    CHECK_THROWS_AS(load_field("definitely_not_here.csv"), IoError);
}

TEST_CASE("saved files are byte stable across runs") {
    std::mt19937_64 rng(77);
    auto u = random_line_field(rng, random_homogeneous(rng), 5, 0.5);
    TempFile a("io_stable_a.csv");
    TempFile b("io_stable_b.csv");
    save_field(u, a.path);
    save_field(u, b.path);
    CHECK(slurp(a.path) == slurp(b.path));
    CHECK(slurp(a.path + ".json") == slurp(b.path + ".json"));
}
