#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace nal {

/// One rejected condition. `path` locates the offending node (derivation
/// node, subformula, or model component); `tag` is a stable machine-readable
/// category; `reason` is the human-readable explanation.
struct Failure {
    std::string path;
    std::string tag;
    std::string reason;
};

/// Accept/reject outcome. A report is accepted iff it carries no failures.
class CheckReport {
public:
    bool accepted() const noexcept { return failures_.empty(); }
    explicit operator bool() const noexcept { return accepted(); }

    const std::vector<Failure>& failures() const noexcept { return failures_; }

    void fail(std::string path, std::string tag, std::string reason) {
        failures_.push_back({std::move(path), std::move(tag), std::move(reason)});
    }

    void merge(const CheckReport& other) {
        failures_.insert(failures_.end(), other.failures_.begin(), other.failures_.end());
    }

    bool has_tag(const std::string& tag) const {
        for (const auto& f : failures_)
            if (f.tag == tag) return true;
        return false;
    }

    static CheckReport accept() { return {}; }
    static CheckReport reject(std::string path, std::string tag, std::string reason) {
        CheckReport r;
        r.fail(std::move(path), std::move(tag), std::move(reason));
        return r;
    }

private:
    std::vector<Failure> failures_;
};

inline std::ostream& operator<<(std::ostream& os, const CheckReport& r) {
    if (r.accepted()) return os << "accepted";
    os << "rejected";
    for (const auto& f : r.failures()) os << "\n  at " << f.path << " [" << f.tag << "] " << f.reason;
    return os;
}

}  // namespace nal
