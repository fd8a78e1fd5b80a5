#pragma once

#include <string>
#include <utility>
#include <vector>

namespace vla {

enum class Status { pass, fail, info };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        default: return "info";
    }
}

struct CheckEntry {
    std::string name;
    Status status = Status::pass;
    std::string witness;  // residual or value, canonical text; empty when none
};

struct Report {
    std::vector<CheckEntry> entries;

    void add(std::string name, bool ok, std::string witness = {}) {
        entries.push_back({std::move(name), ok ? Status::pass : Status::fail, std::move(witness)});
    }
    void info(std::string name, std::string witness) {
        entries.push_back({std::move(name), Status::info, std::move(witness)});
    }
    void append(const Report& o) { entries.insert(entries.end(), o.entries.begin(), o.entries.end()); }
    bool passed() const {
        for (auto& e : entries)
            if (e.status == Status::fail) return false;
        return true;
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (auto& e : entries) n += e.status == Status::fail;
        return n;
    }
};

}  // namespace vla
