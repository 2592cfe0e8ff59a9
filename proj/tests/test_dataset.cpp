#include <cstdio>
#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <string>

#include "frullani/dataset.hpp"

using namespace frullani;

namespace {

struct TempCsv {
    std::filesystem::path path;
    explicit TempCsv(const std::string& content) {
        path = std::filesystem::temp_directory_path() /
               ("frullani_test_" + std::to_string(counter++) + ".csv");
        std::ofstream(path) << content;
    }
    ~TempCsv() { std::filesystem::remove(path); }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("three-row fixture with one censored row") {
    const TempCsv csv("time,status\n1.5,1\n2.0,0\n0.7,1\n");
    const auto ds = io::load_dataset(csv.path.string(), "time", "status", {});
    CHECK(ds.size() == 3);
    CHECK(ds.event_count() == 2);
    CHECK(ds.observations[1].time == 2.0);
    CHECK_FALSE(ds.observations[1].event);
    CHECK(ds.summary().find("3 observations") != std::string::npos);
    CHECK(ds.summary().find("2 events") != std::string::npos);
}

TEST_CASE("covariate columns are read in the requested order") {
    const TempCsv csv("age,time,bmi,status\n30,1.5,22.5,1\n41,2.0,27.0,0\n");
    const auto ds = io::load_dataset(csv.path.string(), "time", "status",
                                     {"bmi", "age"});
    REQUIRE(ds.size() == 2);
    CHECK(ds.observations[0].covariates == std::vector<double>{22.5, 30.0});
    CHECK(ds.observations[1].covariates == std::vector<double>{27.0, 41.0});
}

TEST_CASE("missing column error lists the available candidates") {
    const TempCsv csv("time,event\n1.5,1\n");
    try {
        io::load_dataset(csv.path.string(), "time", "status", {});
        FAIL("expected an error");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("status") != std::string::npos);
        CHECK(msg.find("event") != std::string::npos);  // candidate list
    }
}

TEST_CASE("bad values carry 1-based row numbers") {
    const TempCsv bad_time("time,status\n1.5,1\n-2.0,1\n");
    try {
        io::load_dataset(bad_time.path.string(), "time", "status", {});
        FAIL("expected an error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }

    const TempCsv bad_status("time,status\n1.5,2\n");
    try {
        io::load_dataset(bad_status.path.string(), "time", "status", {});
        FAIL("expected an error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("status must be 0 or 1") !=
              std::string::npos);
    }

    const TempCsv not_a_number("time,status\n1.5,1\nabc,1\n");
    try {
        io::load_dataset(not_a_number.path.string(), "time", "status", {});
        FAIL("expected an error");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("row 2") != std::string::npos);
        CHECK(msg.find("abc") != std::string::npos);
    }
}

TEST_CASE("structural problems are rejected") {
    const TempCsv ragged("time,status\n1.5,1\n2.0\n");
    CHECK_THROWS(io::load_dataset(ragged.path.string(), "time", "status", {}));

    const TempCsv header_only("time,status\n");
    CHECK_THROWS(
        io::load_dataset(header_only.path.string(), "time", "status", {}));

    CHECK_THROWS(io::load_dataset("/nonexistent/file.csv", "time", "status",
                                  {}));
}

TEST_CASE("blank lines and padding are tolerated") {
    const TempCsv csv("time, status\n 1.5 , 1\n\n2.0,0\n\n");
    const auto ds = io::load_dataset(csv.path.string(), "time", "status", {});
    CHECK(ds.size() == 2);
    CHECK(ds.observations[0].time == 1.5);
}
