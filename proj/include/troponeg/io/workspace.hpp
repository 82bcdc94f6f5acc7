#ifndef TROPONEG_IO_WORKSPACE_HPP
#define TROPONEG_IO_WORKSPACE_HPP

// Parsed input plus Newton polytopes cached under a content key, so that
// repeated signomials are processed once.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "troponeg/io/parse.hpp"
#include "troponeg/negative_cones.hpp"

namespace troponeg::io {

/// Canonical text of the terms; equal signomials give equal keys.
inline std::string content_key(const Signomial& f) {
    std::string key = std::to_string(f.dimension()) + ":";
    for (const auto& [e, c] : f.terms()) {
        key += to_string(c) + "@";
        for (const auto& x : e) key += to_string(x) + ",";
        key += ";";
    }
    return key;
}

/// 64-bit FNV-1a of the content key, for display.
inline std::string content_hash(const Signomial& f) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : content_key(f)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

class Workspace {
public:
    explicit Workspace(SignomialSystem system, std::size_t threads = 1) : system_(std::move(system)), threads_(threads) {}

    const SignomialSystem& system() const { return system_; }
    const std::vector<std::string>& variables() const { return system_.variables; }
    const std::vector<Signomial>& signomials() const { return system_.signomials; }
    std::size_t dimension() const { return system_.variables.size(); }
    std::size_t threads() const { return threads_; }

    const NewtonPolytope& newton(const Signomial& f) {
        auto& slot = cache_[content_key(f)];
        if (!slot) slot = std::make_shared<const NewtonPolytope>(newton_polytope(f, threads_));
        return *slot;
    }

    std::vector<NewtonPolytope> newtons() {
        if (signomials().empty()) throw DomainError("no signomials given");
        std::vector<NewtonPolytope> out;
        for (const auto& f : signomials()) out.push_back(newton(f));
        return out;
    }

    std::size_t cached() const { return cache_.size(); }

private:
    SignomialSystem system_;
    std::size_t threads_;
    std::map<std::string, std::shared_ptr<const NewtonPolytope>> cache_;
};

}  // namespace troponeg::io

#endif  // TROPONEG_IO_WORKSPACE_HPP
