#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "psimr/rational.hpp"

namespace psimr {

enum class Producer { mr, virasoro };
enum class ValueKind { correlator, normalized };

const char* to_string(Producer p);
const char* to_string(ValueKind k);

// Canonical key of a correlator: genus plus exponents sorted descending.
struct CorrelatorKey {
    long g = 0;
    std::vector<long> ds;  // sorted descending

    static CorrelatorKey canonical(long g, std::vector<long> ds);
    auto operator<=>(const CorrelatorKey&) const = default;
};

struct StoreRecord {
    Producer producer;
    ValueKind kind;
    CorrelatorKey key;
    Rational value;
};

// Producer-namespaced cache of computed values, with optional file backing:
// a line-delimited text log, one record per line,
//   producer;kind;g;d1,d2,...;num/den
// under a one-line versioned header. Appends only; identical duplicate lines
// are tolerated at read time, conflicting ones abort. A conflicting put is
// the artifact's primary bug alarm and always throws.
class CorrelatorStore {
public:
    CorrelatorStore() = default;                       // in-memory only
    explicit CorrelatorStore(const std::string& path); // loads if file exists

    CorrelatorStore(const CorrelatorStore&) = delete;
    CorrelatorStore& operator=(const CorrelatorStore&) = delete;
    ~CorrelatorStore();

    std::optional<Rational> get(Producer producer, const CorrelatorKey& key, ValueKind kind) const;
    void put(const StoreRecord& record);
    void put(Producer producer, const CorrelatorKey& key, ValueKind kind, const Rational& value);

    // Appends unwritten records to the backing file (no-op when in-memory).
    void flush();

    size_t size() const;
    const std::string& path() const { return path_; }

    static constexpr const char* kHeader = "# psimr store v1";

private:
    using MapKey = std::tuple<int, int, CorrelatorKey>;
    void load();

    std::string path_;
    mutable std::mutex mutex_;
    std::map<MapKey, Rational> records_;
    std::vector<std::string> pending_;
    bool file_has_header_ = false;
};

std::string format_store_line(const StoreRecord& record);
StoreRecord parse_store_line(const std::string& line);

}  // namespace psimr
