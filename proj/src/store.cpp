#include "psimr/store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace psimr {

const char* to_string(Producer p) { return p == Producer::mr ? "mr" : "virasoro"; }

const char* to_string(ValueKind k) { return k == ValueKind::correlator ? "correlator" : "normalized"; }

namespace {

Producer parse_producer(const std::string& s) {
    if (s == "mr") return Producer::mr;
    if (s == "virasoro") return Producer::virasoro;
    throw std::runtime_error("unknown producer '" + s + "'");
}

ValueKind parse_kind(const std::string& s) {
    if (s == "correlator") return ValueKind::correlator;
    if (s == "normalized") return ValueKind::normalized;
    throw std::runtime_error("unknown kind '" + s + "'");
}

}  // namespace

CorrelatorKey CorrelatorKey::canonical(long g, std::vector<long> ds) {
    std::sort(ds.begin(), ds.end(), std::greater<long>());
    return CorrelatorKey{g, std::move(ds)};
}

std::string format_store_line(const StoreRecord& record) {
    std::ostringstream os;
    os << to_string(record.producer) << ';' << to_string(record.kind) << ';' << record.key.g << ';';
    for (size_t i = 0; i < record.key.ds.size(); ++i) {
        if (i) os << ',';
        os << record.key.ds[i];
    }
    os << ';' << to_fraction_string(record.value);
    return os.str();
}

StoreRecord parse_store_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ';') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    if (fields.size() != 5) throw std::runtime_error("expected 5 ';'-separated fields");
    StoreRecord rec{parse_producer(fields[0]), parse_kind(fields[1]), {}, Rational(0)};
    rec.key.g = std::stol(fields[2]);
    std::istringstream ds(fields[3]);
    std::string item;
    while (std::getline(ds, item, ',')) rec.key.ds.push_back(std::stol(item));
    if (rec.key.ds.empty()) throw std::runtime_error("empty exponent list");
    if (!std::is_sorted(rec.key.ds.begin(), rec.key.ds.end(), std::greater<long>()))
        throw std::runtime_error("exponents not sorted descending");
    rec.value = parse_fraction(fields[4]);
    return rec;
}

CorrelatorStore::CorrelatorStore(const std::string& path) : path_(path) { load(); }

CorrelatorStore::~CorrelatorStore() {
    try {
        flush();
    } catch (...) {
        // destructor must not throw; an explicit flush() reports errors
    }
}

void CorrelatorStore::load() {
    std::ifstream in(path_);
    if (!in) return;  // absent file: created on first flush
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (lineno == 1 && line != kHeader)
                throw std::runtime_error(path_ + ":1: unsupported store header '" + line + "'");
            continue;
        }
        StoreRecord rec{Producer::mr, ValueKind::correlator, {}, Rational(0)};
        try {
            rec = parse_store_line(line);
        } catch (const std::exception& e) {
            throw std::runtime_error(path_ + ":" + std::to_string(lineno) + ": " + e.what());
        }
        MapKey mk{static_cast<int>(rec.producer), static_cast<int>(rec.kind), rec.key};
        auto it = records_.find(mk);
        if (it != records_.end()) {
            if (it->second != rec.value)
                throw std::runtime_error(path_ + ":" + std::to_string(lineno) +
                                         ": conflicting duplicate record");
            continue;
        }
        records_.emplace(std::move(mk), std::move(rec.value));
    }
    file_has_header_ = true;
}

std::optional<Rational> CorrelatorStore::get(Producer producer, const CorrelatorKey& key,
                                             ValueKind kind) const {
    std::lock_guard lock(mutex_);
    auto it = records_.find(MapKey{static_cast<int>(producer), static_cast<int>(kind), key});
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

void CorrelatorStore::put(const StoreRecord& record) {
    std::lock_guard lock(mutex_);
    MapKey mk{static_cast<int>(record.producer), static_cast<int>(record.kind), record.key};
    auto it = records_.find(mk);
    if (it != records_.end()) {
        if (it->second != record.value)
            throw std::runtime_error("store integrity error: conflicting value for " +
                                     format_store_line(record) + " (stored " +
                                     to_fraction_string(it->second) + ")");
        return;  // idempotent
    }
    records_.emplace(std::move(mk), record.value);
    if (!path_.empty()) pending_.push_back(format_store_line(record));
}

void CorrelatorStore::put(Producer producer, const CorrelatorKey& key, ValueKind kind,
                          const Rational& value) {
    put(StoreRecord{producer, kind, key, value});
}

void CorrelatorStore::flush() {
    std::lock_guard lock(mutex_);
    if (path_.empty() || pending_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot open store file '" + path_ + "' for append");
    if (!file_has_header_) {
        out << kHeader << '\n';
        file_has_header_ = true;
    }
    for (const auto& line : pending_) out << line << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write to store file '" + path_ + "' failed");
    pending_.clear();
}

size_t CorrelatorStore::size() const {
    std::lock_guard lock(mutex_);
    return records_.size();
}

}  // namespace psimr
