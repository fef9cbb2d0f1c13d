#include <doctest.h>

#include "psimr/scans.hpp"

using namespace psimr;

TEST_CASE("partition enumeration") {
    std::vector<std::vector<long>> got;
    for_each_partition(5, 2, 0, [&](const std::vector<long>& d) { got.push_back(d); });
    CHECK(got == std::vector<std::vector<long>>{{5, 0}, {4, 1}, {3, 2}});
    CHECK(count_partitions(5, 2, 0) == 3);
    CHECK(count_partitions(5, 2, 3) == 0);  // both parts >= 3 impossible
    CHECK(count_partitions(6, 2, 3) == 1);  // (3,3)
    CHECK(count_partitions(0, 3, 0) == 1);  // (0,0,0)
    CHECK(count_partitions(7, 1, 0) == 1);
}

TEST_CASE("dgzz scan at n=1 is identically zero") {
    Engine engine;
    auto rows = dgzz_scan(engine, 1, {3, 7});
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(row.value == 0);
        CHECK(row.argmax == std::vector<long>{3 * row.g - 2});
    }
}

TEST_CASE("dgzz scan deviations shrink between g=5 and g=10 at n=2") {
    Engine engine;
    auto rows = dgzz_scan(engine, 2, {5, 10});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].value > rows[1].value);
    CHECK(rows[1].value > 0);
}

TEST_CASE("theorem3 scan with K=0 reduces to the dgzz scan") {
    Engine engine;
    auto dgzz = dgzz_scan(engine, 2, {5});
    auto t3 = theorem3_scan(engine, 2, 0, {5});
    REQUIRE(t3.size() == 1);
    CHECK(t3[0].value == dgzz[0].value);
    CHECK(t3[0].argmax == dgzz[0].argmax);
}

TEST_CASE("theorem3 scan skips empty restricted sets") {
    Engine engine;
    // g=2, n=2, K=2: parts >= 3 summing to 5 do not exist
    auto rows = theorem3_scan(engine, 2, 2, {2});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].skipped);
}

TEST_CASE("caps produce explicit refusals") {
    Engine engine;
    CHECK_THROWS_WITH_AS(dgzz_scan(engine, 6, {3}), doctest::Contains("exceeds cap"),
                         std::invalid_argument);
    ScanCaps tiny;
    tiny.max_sum = 5;
    CHECK_THROWS_WITH_AS(dgzz_scan(engine, 2, {10}, tiny), doctest::Contains("exceeds cap"),
                         std::invalid_argument);
    ScanCaps few;
    few.max_partitions = 2;
    CHECK_THROWS_WITH_AS(dgzz_scan(engine, 2, {5}, few), doctest::Contains("partitions exceed"),
                         std::invalid_argument);
    CHECK_THROWS_AS(dgzz_scan(engine, 2, {0}), std::invalid_argument);  // unstable
}

TEST_CASE("parallel scans are deterministic") {
    Engine engine;
    auto serial = dgzz_scan(engine, 2, {6}, ScanCaps{}, 1);
    auto parallel = dgzz_scan(engine, 2, {6}, ScanCaps{}, 4);
    REQUIRE(serial.size() == parallel.size());
    CHECK(serial[0].value == parallel[0].value);
    CHECK(serial[0].argmax == parallel[0].argmax);
}
