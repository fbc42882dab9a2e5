#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace matgeo {

using Elt = std::uint16_t;   // field element, canonical index in [0, q)
using Enc = std::uint64_t;   // matrix encoding, base-q integer of the entry sequence

// Domain errors.  The CLI maps these to exit code 2.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};
struct field_mismatch : error {
    explicit field_mismatch(const std::string& what = "operands belong to different fields") : error(what) {}
};
struct division_by_zero : error {
    explicit division_by_zero(const std::string& what = "inversion of zero") : error(what) {}
};
struct shape_mismatch : error {
    explicit shape_mismatch(const std::string& what = "matrix shapes differ") : error(what) {}
};
struct not_adjacent : error {
    explicit not_adjacent(const std::string& what = "matrices are not adjacent") : error(what) {}
};
struct invalid_witness : error {
    explicit invalid_witness(const std::string& what) : error(what) {}
};
struct improper_colouring : error {
    explicit improper_colouring(const std::string& what) : error(what) {}
};
struct target_too_small : error {
    explicit target_too_small(const std::string& what) : error(what) {}
};
struct invalid_problem : error {
    explicit invalid_problem(const std::string& what) : error(what) {}
};
struct invalid_l : error {
    explicit invalid_l(const std::string& what = "I + X^tau L is singular") : error(what) {}
};
struct cap_exceeded : error {
    explicit cap_exceeded(const std::string& what = "enumeration exceeds the configured cap") : error(what) {}
};
// Malformed input files.  The CLI maps parse errors to exit 2 and missing files to 74.
struct parse_error : error {
    explicit parse_error(const std::string& what) : error(what) {}
};
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Global resource limits.  All sweeps consult these instead of hardcoding sizes.
struct Config {
    std::uint64_t enumeration_cap = 10'000'000;  // max states any exhaustive enumeration may visit
    std::uint64_t pair_cap = 10'000'000;         // max pairs/triples for quadratic and cubic checks
    std::uint64_t node_budget = 100'000'000;     // default search node budget
    unsigned jobs = 1;                           // worker count for parallel sweeps
};

inline Config& config() {
    static Config cfg;
    return cfg;
}

inline void require_cap(std::uint64_t states, const char* what) {
    if (states > config().enumeration_cap)
        throw cap_exceeded(std::string(what) + ": " + std::to_string(states) + " states exceed cap " +
                           std::to_string(config().enumeration_cap));
}

// Deterministic parallel map: fn(i) fills slot i, merge order is index order,
// so the result is independent of the worker count.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::uint64_t n, Fn&& fn) {
    std::vector<T> out(n);
    unsigned jobs = config().jobs;
    if (jobs <= 1 || n < 2 * jobs) {
        for (std::uint64_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            for (std::uint64_t i = w; i < n; i += jobs) out[i] = fn(i);
        });
    }
    for (auto& t : workers) t.join();
    return out;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

}  // namespace matgeo
