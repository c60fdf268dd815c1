#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hublab/graph.hpp"
#include "hublab/parallel.hpp"

namespace hublab {

/// All-pairs (delta, hops) in flat row-major arrays.
class ApspTable {
  public:
    static constexpr node_t kDefaultCap = 5000;

    ApspTable() = default;

    explicit ApspTable(const Graph& g, node_t cap = kDefaultCap, unsigned threads = default_threads())
        : n_(g.node_count()) {
        if (n_ > cap)
            throw std::length_error("all-pairs table for " + std::to_string(n_) + " nodes exceeds the cap of " +
                                    std::to_string(cap));
        delta_.resize(size_t(n_) * n_);
        hops_.resize(size_t(n_) * n_);
        threads = std::max(1u, threads);
        std::vector<SsspWorkspace> ws(threads);
        std::vector<std::vector<DistHop>> rows(threads);
        parallel_for(n_, threads, [&](size_t u, unsigned worker) {
            sssp_01(g, static_cast<node_t>(u), ws[worker], rows[worker]);
            for (node_t v = 0; v < n_; ++v) {
                delta_[u * n_ + v] = rows[worker][v].delta;
                hops_[u * n_ + v] = rows[worker][v].hops;
            }
        });
    }

    [[nodiscard]] node_t size() const { return n_; }
    [[nodiscard]] uint32_t delta(node_t u, node_t v) const { return delta_[size_t(u) * n_ + v]; }
    [[nodiscard]] uint32_t hops(node_t u, node_t v) const { return hops_[size_t(u) * n_ + v]; }

  private:
    node_t n_ = 0;
    std::vector<uint32_t> delta_;
    std::vector<uint32_t> hops_;
};

enum class VerifyMode { exact, additive2, additive1, corrected_exact };

inline const char* verify_mode_name(VerifyMode m) {
    switch (m) {
        case VerifyMode::exact: return "exact";
        case VerifyMode::additive2: return "additive2";
        case VerifyMode::additive1: return "additive1";
        case VerifyMode::corrected_exact: return "corrected-exact";
    }
    return "unknown";
}

inline int64_t allowed_error(VerifyMode m) {
    return m == VerifyMode::additive2 ? 2 : m == VerifyMode::additive1 ? 1 : 0;
}

struct Violation {
    node_t u;
    node_t v;
    uint32_t expected;
    uint32_t got;
};

struct VerifyReport {
    VerifyMode mode = VerifyMode::exact;
    uint64_t pairs = 0;
    int64_t max_error = 0;
    std::map<int64_t, uint64_t> histogram;  // got - expected over reachable pairs
    uint64_t violation_count = 0;
    std::vector<Violation> violations;      // the first kKeep of them
    static constexpr size_t kKeep = 1000;

    [[nodiscard]] bool ok() const { return violation_count == 0; }

    void record(node_t u, node_t v, uint32_t expected, uint32_t got) {
        ++pairs;
        bool bad;
        if (expected == kUnreachable || got == kUnreachable) {
            bad = expected != got;
        } else {
            const int64_t err = int64_t(got) - int64_t(expected);
            ++histogram[err];
            max_error = std::max(max_error, err);
            bad = err < 0 || err > allowed_error(mode);
        }
        if (!bad) return;
        ++violation_count;
        if (violations.size() < kKeep) violations.push_back({u, v, expected, got});
    }

    void merge(const VerifyReport& other) {
        pairs += other.pairs;
        if (other.pairs > 0) max_error = std::max(max_error, other.max_error);
        for (const auto& [e, c] : other.histogram) histogram[e] += c;
        violation_count += other.violation_count;
        for (const auto& v : other.violations)
            if (violations.size() < kKeep) violations.push_back(v);
    }
};

using DecodeFn = std::function<uint32_t(node_t, node_t)>;

/// Checks decode(u, v) for every ordered pair against the table.
inline VerifyReport verify(const ApspTable& truth, const DecodeFn& decode, VerifyMode mode,
                           unsigned threads = default_threads()) {
    const node_t n = truth.size();
    threads = std::max(1u, threads);
    std::vector<VerifyReport> parts(threads);
    for (auto& p : parts) p.mode = mode;
    parallel_for(n, threads, [&](size_t u, unsigned worker) {
        for (node_t v = 0; v < n; ++v)
            parts[worker].record(static_cast<node_t>(u), v, truth.delta(static_cast<node_t>(u), v),
                                 decode(static_cast<node_t>(u), v));
    });
    VerifyReport out;
    out.mode = mode;
    for (const auto& p : parts) out.merge(p);
    std::sort(out.violations.begin(), out.violations.end(),
              [](const Violation& a, const Violation& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    return out;
}

/// Checks `sources` random sources against `targets` random targets each,
/// computing truth by single-source searches. For graphs too large for a table.
inline VerifyReport verify_sampled(const Graph& g, const DecodeFn& decode, VerifyMode mode, uint32_t sources,
                                   uint32_t targets, uint64_t seed, unsigned threads = default_threads()) {
    const node_t n = g.node_count();
    VerifyReport out;
    out.mode = mode;
    if (n == 0) return out;
    std::mt19937_64 rng(seed);
    std::vector<node_t> src(sources);
    std::vector<std::vector<node_t>> dst(sources, std::vector<node_t>(targets));
    for (uint32_t i = 0; i < sources; ++i) {
        src[i] = static_cast<node_t>(rng() % n);
        for (auto& t : dst[i]) t = static_cast<node_t>(rng() % n);
    }
    threads = std::max(1u, threads);
    std::vector<VerifyReport> parts(threads);
    std::vector<SsspWorkspace> ws(threads);
    std::vector<std::vector<DistHop>> rows(threads);
    for (auto& p : parts) p.mode = mode;
    parallel_for(sources, threads, [&](size_t i, unsigned worker) {
        sssp_01(g, src[i], ws[worker], rows[worker]);
        for (node_t t : dst[i]) parts[worker].record(src[i], t, rows[worker][t].delta, decode(src[i], t));
    });
    for (const auto& p : parts) out.merge(p);
    return out;
}

/// Human-readable summary followed by one "pair u v expected got" line per kept violation.
inline void write_report(std::ostream& out, const VerifyReport& r) {
    if (r.ok())
        out << "OK, 0 violations\n";
    else
        out << "FAIL, " << r.violation_count << " violations\n";
    out << "mode " << verify_mode_name(r.mode) << ", " << r.pairs << " pairs, max error " << r.max_error << '\n';
    for (const auto& [e, c] : r.histogram) out << "error " << e << ": " << c << '\n';
    auto show = [](uint32_t d) { return d == kUnreachable ? std::string("inf") : std::to_string(d); };
    for (const auto& v : r.violations)
        out << "pair " << v.u << ' ' << v.v << ' ' << show(v.expected) << ' ' << show(v.got) << '\n';
}

}  // namespace hublab
