#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ctop/fixtures.hpp"
#include "ctop/io.hpp"

using namespace ctop;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(bool(in), "missing file ", p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("shipped fixture files match the built-in table") {
    std::filesystem::path dir = CTOP_FIXTURES_DIR;
    for (const Fixture& f : fixtures()) {
        Graph g = read_instance_file(dir / (f.name + ".ctop"));
        CHECK_MESSAGE(g == f.graph, f.name);
        auto expect = parse_expect(slurp(dir / (f.name + ".expect")));
        REQUIRE(expect.size() == f.expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i) {
            CHECK(expect[i].k == f.expect[i].k);
            CHECK(expect[i].feasible == f.expect[i].feasible);
            CHECK(expect[i].order_count == f.expect[i].order_count);
            CHECK(expect[i].pipeline_check == f.expect[i].pipeline_check);
        }
    }
}

TEST_CASE("expect sidecar grammar") {
    auto one = parse_expect("# comment\nk 3 feasible count 4\n");
    REQUIRE(one.size() == 1);
    CHECK(one[0].k == 3);
    CHECK(one[0].feasible);
    CHECK(one[0].order_count == 4);
    CHECK_FALSE(one[0].pipeline_check.has_value());

    auto two = parse_expect("k 2 infeasible check 5\nk 4 feasible\n");
    REQUIRE(two.size() == 2);
    CHECK(two[0].pipeline_check == 5);
    CHECK_FALSE(two[0].order_count.has_value());
    CHECK(two[1].k == 4);

    CHECK_THROWS_AS(parse_expect(""), std::runtime_error);
    CHECK_THROWS_AS(parse_expect("k 2 maybe\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_expect("k 2 feasible count\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_expect("k 2 feasible check 6\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_expect("k 2 feasible nodes 5\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_expect("q 2 feasible\n"), std::runtime_error);
}

TEST_CASE("expect round trip") {
    for (const Fixture& f : fixtures()) {
        auto back = parse_expect(serialize_expect(f.expect));
        REQUIRE(back.size() == f.expect.size());
        for (std::size_t i = 0; i < back.size(); ++i) {
            CHECK(back[i].k == f.expect[i].k);
            CHECK(back[i].feasible == f.expect[i].feasible);
            CHECK(back[i].order_count == f.expect[i].order_count);
            CHECK(back[i].pipeline_check == f.expect[i].pipeline_check);
        }
    }
}
