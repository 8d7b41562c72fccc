#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "pseudoexit/tables.hpp"

using namespace pseudoexit;

TEST_CASE("doubles render with 17 significant digits and round-trip") {
    std::string s = format_double(1.0 / 3.0);
    CHECK(s == "0.33333333333333331");
    CHECK(format_double(1.0) == "1");
    CHECK(std::stod(format_double(M_PI)) == M_PI);
}

TEST_CASE("csv output is deterministic with stable column order") {
    auto make = [] {
        Table t;
        t.add_numeric("t", {0.1, 0.2});
        t.add_numeric("density", {1.5, -2.25});
        t.add_text("exact", {"1/2", "-9/4"});
        return t;
    };
    std::string first = make().to_csv();
    std::string second = make().to_csv();
    CHECK(first == second);
    CHECK(first ==
          "t,density,exact\n"
          "0.10000000000000001,1.5,1/2\n"
          "0.20000000000000001,-2.25,-9/4\n");
}

TEST_CASE("json output carries metadata and mirrors the columns") {
    Table t;
    t.add_numeric("x", {0.5});
    t.add_text("p_lower_exact", {"1/2"});
    std::string json = t.to_json({{"command", "ruin"}, {"version", "0.1.0"}});
    CHECK(json.find("\"metadata\"") != std::string::npos);
    CHECK(json.find("\"command\": \"ruin\"") != std::string::npos);
    CHECK(json.find("\"p_lower_exact\"") != std::string::npos);
    CHECK(json.find("\"1/2\"") != std::string::npos);
    CHECK(json.find("0.5") != std::string::npos);
    // insertion order is preserved
    CHECK(json.find("\"x\"") < json.find("\"p_lower_exact\""));
}

TEST_CASE("ragged tables pad with empty cells") {
    Table t;
    t.add_numeric("a", {1.0, 2.0});
    t.add_text("b", {"x"});
    CHECK(t.row_count() == 2);
    CHECK(t.to_csv() == "a,b\n1,x\n2,\n");
}
