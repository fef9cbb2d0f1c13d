#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "psimr/store.hpp"

using namespace psimr;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = (std::filesystem::temp_directory_path() / name).string();
        std::remove(path.c_str());
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("in-memory round trip and isolation") {
    CorrelatorStore store;
    CorrelatorKey key = CorrelatorKey::canonical(1, {1, 1});
    CHECK(!store.get(Producer::mr, key, ValueKind::correlator));
    store.put(Producer::mr, key, ValueKind::correlator, make_rational(1, 24));
    auto got = store.get(Producer::mr, key, ValueKind::correlator);
    REQUIRE(got);
    CHECK(*got == make_rational(1, 24));
    // cross-producer and cross-kind isolation
    CHECK(!store.get(Producer::virasoro, key, ValueKind::correlator));
    CHECK(!store.get(Producer::mr, key, ValueKind::normalized));
}

TEST_CASE("idempotent puts and the integrity alarm") {
    CorrelatorStore store;
    CorrelatorKey key = CorrelatorKey::canonical(2, {4});
    store.put(Producer::virasoro, key, ValueKind::correlator, make_rational(1, 1152));
    CHECK_NOTHROW(store.put(Producer::virasoro, key, ValueKind::correlator, make_rational(1, 1152)));
    CHECK_THROWS_WITH_AS(
        store.put(Producer::virasoro, key, ValueKind::correlator, make_rational(1, 24)),
        doctest::Contains("integrity"), std::runtime_error);
}

TEST_CASE("canonical keys sort descending") {
    CorrelatorKey key = CorrelatorKey::canonical(3, {0, 5, 2});
    CHECK(key.ds == std::vector<long>{5, 2, 0});
}

TEST_CASE("flush and reopen preserve records bit-exactly") {
    TempFile tmp("psimr_store_test_1.txt");
    {
        CorrelatorStore store(tmp.path);
        store.put(Producer::mr, CorrelatorKey::canonical(1, {1, 1}), ValueKind::normalized,
                  make_rational(3, 5));
        store.put(Producer::virasoro, CorrelatorKey::canonical(5, {13}), ValueKind::correlator,
                  make_rational(1, 1 << 20));
        store.flush();
    }
    {
        std::ifstream in(tmp.path);
        std::string first;
        std::getline(in, first);
        CHECK(first == CorrelatorStore::kHeader);
    }
    CorrelatorStore reopened(tmp.path);
    auto a = reopened.get(Producer::mr, CorrelatorKey::canonical(1, {1, 1}), ValueKind::normalized);
    auto b = reopened.get(Producer::virasoro, CorrelatorKey::canonical(5, {13}),
                          ValueKind::correlator);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(*a == make_rational(3, 5));
    CHECK(*b == make_rational(1, 1 << 20));
    CHECK(reopened.size() == 2);
}

TEST_CASE("destructor flushes pending records") {
    TempFile tmp("psimr_store_test_2.txt");
    {
        CorrelatorStore store(tmp.path);
        store.put(Producer::mr, CorrelatorKey::canonical(0, {0, 0, 0}), ValueKind::correlator,
                  Rational(1));
    }
    CorrelatorStore reopened(tmp.path);
    CHECK(reopened.size() == 1);
}

TEST_CASE("corrupt records are reported with their line") {
    TempFile tmp("psimr_store_test_3.txt");
    {
        std::ofstream out(tmp.path);
        out << CorrelatorStore::kHeader << "\n";
        out << "mr;correlator;1;1,1;1/24\n";
        out << "mr;correlator;oops\n";
    }
    CHECK_THROWS_WITH_AS(CorrelatorStore{tmp.path}, doctest::Contains(":3:"), std::runtime_error);
}

TEST_CASE("duplicate identical lines tolerated, conflicting ones rejected") {
    TempFile tmp("psimr_store_test_4.txt");
    {
        std::ofstream out(tmp.path);
        out << CorrelatorStore::kHeader << "\n";
        out << "mr;correlator;1;1,1;1/24\n";
        out << "mr;correlator;1;1,1;1/24\n";
    }
    CHECK_NOTHROW(CorrelatorStore{tmp.path});
    {
        std::ofstream out(tmp.path, std::ios::app);
        out << "mr;correlator;1;1,1;1/25\n";
    }
    CHECK_THROWS_WITH_AS(CorrelatorStore{tmp.path}, doctest::Contains("conflicting"),
                         std::runtime_error);
}

TEST_CASE("store line format") {
    StoreRecord rec{Producer::virasoro, ValueKind::normalized,
                    CorrelatorKey::canonical(2, {3, 1}), make_rational(-5, 8)};
    CHECK(format_store_line(rec) == "virasoro;normalized;2;3,1;-5/8");
    StoreRecord back = parse_store_line("virasoro;normalized;2;3,1;-5/8");
    CHECK(back.producer == Producer::virasoro);
    CHECK(back.kind == ValueKind::normalized);
    CHECK(back.key == rec.key);
    CHECK(back.value == rec.value);
    CHECK_THROWS(parse_store_line("mr;correlator;1;1,3;1/24"));  // unsorted exponents
}
