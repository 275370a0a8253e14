#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "subfuse/csv.hpp"

using namespace subfuse;

namespace {

struct TempCsv {
    std::string path;
    explicit TempCsv(const std::string& content) {
        path = std::string(std::tmpnam(nullptr)) + ".csv";
        std::ofstream out(path);
        out << content;
    }
    ~TempCsv() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("read_csv_table parses a simple numeric file") {
    const TempCsv f("y,x1,x2\n1.5,2,3\n-0.5,4,5e-1\n");
    const CsvTable t = read_csv_table(f.path);
    REQUIRE(t.columns == std::vector<std::string>{"y", "x1", "x2"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][0] == 1.5);
    CHECK(t.rows[1][2] == 0.5);
}

TEST_CASE("read_csv_table tolerates CRLF and padded cells") {
    const TempCsv f("y,x\r\n 1 , 2 \r\n3,4\r\n");
    const CsvTable t = read_csv_table(f.path);
    CHECK(t.columns == std::vector<std::string>{"y", "x"});
    CHECK(t.rows[0][0] == 1.0);
    CHECK(t.rows[0][1] == 2.0);
}

TEST_CASE("read_csv_table rejects malformed input") {
    const TempCsv bad_cell("y,x\n1,oops\n");
    CHECK_THROWS_AS(read_csv_table(bad_cell.path), parse_error);
    const TempCsv bad_width("y,x\n1,2,3\n");
    CHECK_THROWS_AS(read_csv_table(bad_width.path), parse_error);
    const TempCsv partial("y,x\n1,\n");
    CHECK_THROWS_AS(read_csv_table(partial.path), parse_error);
    const TempCsv header_only("y,x\n");
    CHECK_THROWS_AS(read_csv_table(header_only.path), empty_file);
    const TempCsv empty("");
    CHECK_THROWS_AS(read_csv_table(empty.path), empty_file);
    CHECK_THROWS_AS(read_csv_table("/nonexistent/file.csv"), parse_error);
}

TEST_CASE("read_csv_dataset splits response from covariates in file order") {
    const TempCsv f("x1,y,x2\n1,10,2\n3,20,4\n0,30,6\n");
    const Dataset d = read_csv_dataset(f.path, "y");
    REQUIRE(d.n() == 3);
    REQUIRE(d.p() == 2);
    CHECK(d.y()[0] == 10.0);
    CHECK(d.y()[2] == 30.0);
    CHECK(d.X()(0, 0) == 1.0);  // x1 stays first
    CHECK(d.X()(0, 1) == 2.0);  // x2 second
    CHECK_THROWS_AS(read_csv_dataset(f.path, "z"), missing_column);
}

TEST_CASE("read_csv_dataset with only a response column") {
    const TempCsv f("y\n1\n2\n3\n");
    const Dataset d = read_csv_dataset(f.path, "y");
    CHECK(d.n() == 3);
    CHECK(d.p() == 0);
}
