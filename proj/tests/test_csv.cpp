#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "obsfeat/csv.hpp"
#include "obsfeat/error.hpp"

using namespace obsfeat;

TEST_SUITE("csv") {
    TEST_CASE("quoted fields, CRLF and blank lines") {
        const auto t = csv::parse("a,b\r\n\"x,1\",\"say \"\"hi\"\"\"\r\n\r\n2,3\n");
        REQUIRE(t.header == std::vector<std::string>{"a", "b"});
        REQUIRE(t.rows.size() == 2);
        CHECK(t.rows[0][0] == "x,1");
        CHECK(t.rows[0][1] == "say \"hi\"");
        CHECK(t.rows[1] == std::vector<std::string>{"2", "3"});
        CHECK(t.line_numbers == std::vector<std::size_t>{2, 4});
    }

    TEST_CASE("byte order mark is ignored") {
        const auto t = csv::parse("\xEF\xBB\xBFid,x\n1,2\n");
        CHECK(t.header[0] == "id");
    }

    TEST_CASE("ragged row and unterminated quote are errors") {
        CHECK_THROWS_AS(csv::parse("a,b\n1\n"), Error);
        CHECK_THROWS_AS(csv::parse("a\n\"open\n"), Error);
    }

    TEST_CASE("escape round-trips through parse") {
        const std::vector<std::string> fields{"plain", "comma,inside", "quote\"inside", "line\nbreak", ""};
        const auto t = csv::parse(csv::join_row(fields) + csv::join_row(fields));
        CHECK(t.header == fields);
        CHECK(t.rows[0] == fields);
    }

    TEST_CASE("format_double round-trips") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-1e6, 1e6);
        for (int i = 0; i < 1000; ++i) {
            const double v = u(rng) / (1 + i);
            CHECK(csv::parse_double(csv::format_double(v), "x") == v);
        }
        CHECK(csv::format_double(0.5) == "0.5");
        CHECK(csv::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    }

    TEST_CASE("parse_double accepts padding and rejects junk") {
        CHECK(csv::parse_double(" +2.5 ", "x") == 2.5);
        CHECK_THROWS_AS(csv::parse_double("abc", "x"), Error);
        CHECK_THROWS_AS(csv::parse_double("1.5x", "x"), Error);
        CHECK_THROWS_AS(csv::parse_double("", "x"), Error);
        CHECK_THROWS_AS(csv::parse_double("nan", "x"), Error);
    }
}
