#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qp {

enum class Status { pass, fail, inconclusive };
enum class Mode { symbolic, sampled };

inline const char* toString(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        default: return "inconclusive";
    }
}
inline const char* toString(Mode m) { return m == Mode::symbolic ? "symbolic" : "sampled"; }

struct CheckItem {
    std::string name;
    Mode mode = Mode::symbolic;
    Status status = Status::pass;
    std::string witness;
    double elapsedMillis = 0;
};

class CheckReport {
public:
    void add(CheckItem item) { items_.push_back(std::move(item)); }

    void record(std::string name, bool ok, std::string witness = {}, Mode mode = Mode::symbolic) {
        add({std::move(name), mode, ok ? Status::pass : Status::fail,
             ok ? std::string{} : std::move(witness), 0});
    }

    // Run `body`, which returns an empty optional on success or a witness string.
    template <class F>
    void timed(std::string name, Mode mode, F&& body) {
        auto start = std::chrono::steady_clock::now();
        CheckItem item{std::move(name), mode, Status::pass, {}, 0};
        auto outcome = body();
        if (outcome) {
            item.status = outcome->first;
            item.witness = std::move(outcome->second);
        }
        item.elapsedMillis =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        add(std::move(item));
    }

    void merge(const CheckReport& other, const std::string& prefix = {}) {
        for (auto item : other.items_) {
            if (!prefix.empty()) item.name = prefix + item.name;
            add(std::move(item));
        }
    }

    bool passed() const {
        for (const auto& i : items_)
            if (i.status != Status::pass) return false;
        return true;
    }
    bool anyFailed() const {
        for (const auto& i : items_)
            if (i.status == Status::fail) return true;
        return false;
    }

    const CheckItem* find(const std::string& name) const {
        for (const auto& i : items_)
            if (i.name == name) return &i;
        return nullptr;
    }

    const std::vector<CheckItem>& items() const { return items_; }

private:
    std::vector<CheckItem> items_;
};

using Outcome = std::optional<std::pair<Status, std::string>>;

inline Outcome failure(std::string witness) {
    return std::make_pair(Status::fail, std::move(witness));
}
inline Outcome inconclusive(std::string why) {
    return std::make_pair(Status::inconclusive, std::move(why));
}

}  // namespace qp
