#include <doctest.h>

#include <sstream>

#include "bbsig/csv.hpp"

using namespace bbsig;

namespace {

Dataset parse(const std::string& text, CsvOptions opt) {
    std::istringstream in(text);
    return parse_csv(in, opt);
}

}  // namespace

TEST_CASE("csv with header and response by name") {
    CsvOptions opt;
    opt.response = "y";
    const Dataset d = parse("x1,y,x2\n1.0,10,2.0\n3.0,20,4.0\n", opt);
    CHECK(d.rows() == 2);
    CHECK(d.dim() == 2);
    CHECK(d.column_names == std::vector<std::string>{"x1", "x2"});
    CHECK(d.features(0, 0) == 1.0);
    CHECK(d.features(0, 1) == 2.0);
    CHECK(d.outcomes(1, 0) == 20.0);
}

TEST_CASE("csv response defaults to the last column; index selection works") {
    CsvOptions opt;
    const Dataset d = parse("a,b\n1,2\n3,4\n", opt);
    CHECK(d.dim() == 1);
    CHECK(d.outcomes(0, 0) == 2.0);

    opt.response = "0";
    const Dataset d2 = parse("a,b\n1,2\n3,4\n", opt);
    CHECK(d2.outcomes(0, 0) == 1.0);
    CHECK(d2.features(0, 0) == 2.0);
}

TEST_CASE("csv without header") {
    CsvOptions opt;
    opt.has_header = false;
    opt.response = "1";
    const Dataset d = parse("1,5\n2,6\n3,7\n", opt);
    CHECK(d.rows() == 3);
    CHECK(d.column_names.empty());
    CHECK(d.outcomes(2, 0) == 7.0);
}

TEST_CASE("csv malformed numerics are hard errors") {
    CsvOptions opt;
    CHECK_THROWS_AS(parse("a,b\n1,oops\n2,3\n", opt), CsvError);
    CHECK_THROWS_AS(parse("a,b\n1,\n2,3\n", opt), CsvError);
    CHECK_THROWS_AS(parse("a,b\n1,2,3\n", opt), CsvError);  // ragged row
    CHECK_THROWS_AS(parse("a,b\n1,nan\n", opt), CsvError);  // non-finite
    CHECK_THROWS_AS(parse("", opt), CsvError);
}

TEST_CASE("csv quoting and CRLF") {
    CsvOptions opt;
    opt.response = "v";
    const Dataset d = parse("\"name, quoted\",v\r\n1.5,2\r\n2.5,3\r\n", opt);
    CHECK(d.column_names.front() == "name, quoted");
    CHECK(d.features(1, 0) == 2.5);
}

TEST_CASE("csv classification converts integer labels to one-hot") {
    CsvOptions opt;
    opt.response = "label";
    opt.classification = true;
    const Dataset d = parse("x,label\n0.1,0\n0.2,2\n0.3,1\n0.4,2\n", opt);
    CHECK(d.outcome_dim() == 3);
    CHECK(d.outcomes(0, 0) == 1.0);
    CHECK(d.outcomes(1, 2) == 1.0);
    CHECK(d.outcomes(2, 1) == 1.0);
    CHECK(d.outcomes.rowwise().sum().isOnes(1e-15));

    CHECK_THROWS_AS(parse("x,label\n0.1,0.5\n0.2,1\n", opt), CsvError);
    CHECK_THROWS_AS(parse("x,label\n0.1,0\n0.2,0\n", opt), CsvError);  // one class
}
