#pragma once

#include <optional>
#include <string>
#include <utility>

namespace transversal {

enum class FailKind {
    none,
    retries_exhausted,
    not_found,
    no_routing,
    embed_failed,
    budget_exhausted,
    property_r_unattainable,
    bad_input,
};

struct Failure {
    FailKind kind = FailKind::none;
    std::string stage;  // pipeline step or operation that failed, empty for leaf ops
    std::string detail; // worst violation, counts, partial-state summary

    std::string to_string() const {
        std::string s;
        switch (kind) {
            case FailKind::none: return "ok";
            case FailKind::retries_exhausted: s = "retries exhausted"; break;
            case FailKind::not_found: s = "not found"; break;
            case FailKind::no_routing: s = "no routing"; break;
            case FailKind::embed_failed: s = "embed failed"; break;
            case FailKind::budget_exhausted: s = "budget exhausted"; break;
            case FailKind::property_r_unattainable: s = "property R unattainable"; break;
            case FailKind::bad_input: s = "bad input"; break;
        }
        if (!stage.empty()) s = "[" + stage + "] " + s;
        if (!detail.empty()) s += ": " + detail;
        return s;
    }
};

// Desk-scale result: either a value or a structured failure report.
template <typename T>
class Result {
public:
    Result(T value) : value_(std::move(value)) {}
    Result(Failure f) : failure_(std::move(f)) {}

    static Result fail(FailKind kind, std::string stage, std::string detail) {
        return Result(Failure{kind, std::move(stage), std::move(detail)});
    }

    bool ok() const { return value_.has_value(); }
    explicit operator bool() const { return ok(); }

    T& operator*() { return *value_; }
    const T& operator*() const { return *value_; }
    T* operator->() { return &*value_; }
    const T* operator->() const { return &*value_; }

    const Failure& failure() const { return failure_; }

private:
    std::optional<T> value_;
    Failure failure_;
};

} // namespace transversal
