#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "hublab/additive.hpp"
#include "hublab/exact.hpp"
#include "hublab/label_io.hpp"
#include "hublab/oracle.hpp"

namespace hublab {

/// Median wall time of `queries` individually timed decode(u, v) calls on
/// uniformly random pairs.
template <class Decode>
double median_query_ns(node_t n, Decode&& decode, uint32_t queries, uint64_t seed) {
    if (n == 0 || queries == 0) return 0.0;
    std::mt19937_64 rng(seed);
    std::vector<std::pair<node_t, node_t>> pairs(queries);
    for (auto& p : pairs) p = {static_cast<node_t>(rng() % n), static_cast<node_t>(rng() % n)};
    std::vector<double> ns(queries);
    volatile uint32_t sink = 0;
    for (uint32_t i = 0; i < queries; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        sink = sink + decode(pairs[i].first, pairs[i].second);
        const auto t1 = std::chrono::steady_clock::now();
        ns[i] = std::chrono::duration<double, std::nano>(t1 - t0).count();
    }
    std::nth_element(ns.begin(), ns.begin() + queries / 2, ns.end());
    return ns[queries / 2];
}

inline constexpr const char* kSweepCsvHeader =
    "scheme,n,m,delta,param,r_prime,max_label_bits,avg_label_bits,max_hub,build_seconds,ns_per_query,verification";

struct SweepRow {
    std::string scheme;
    uint64_t n = 0;
    uint64_t m = 0;
    uint32_t delta = 0;
    uint32_t param = 0;
    uint32_t r_prime = 0;
    uint64_t max_label_bits = 0;
    double avg_label_bits = 0;
    uint64_t max_hub = 0;
    double build_seconds = 0;
    double ns_per_query = 0;
    std::string verification;
    uint64_t max_layer_bits = 0;  // exact schemes only; not part of the CSV
};

inline void write_csv_row(std::ostream& out, const SweepRow& r) {
    out << r.scheme << ',' << r.n << ',' << r.m << ',' << r.delta << ',' << r.param << ',' << r.r_prime << ','
        << r.max_label_bits << ',' << r.avg_label_bits << ',' << r.max_hub << ',' << r.build_seconds << ','
        << r.ns_per_query << ',' << r.verification << '\n';
}

struct SweepOptions {
    uint32_t queries = 100000;
    uint64_t seed = 1;
    unsigned threads = default_threads();
    node_t exhaustive_limit = 2000;  // larger graphs are verified on sampled pairs
    uint32_t sample_sources = 100;
    uint32_t sample_targets = 1000;
    // replaces the built-in check when set
    std::function<VerifyReport(const DecodeFn&, VerifyMode)> verifier;
};

inline std::string verification_status(const VerifyReport& r) {
    return r.ok() ? "ok" : "fail:" + std::to_string(r.violation_count);
}

/// Verifies a decoder on `g` against the oracle, exhaustively or sampled.
inline VerifyReport verify_against(const Graph& g, const DecodeFn& decode, VerifyMode mode, const SweepOptions& o) {
    if (o.verifier) return o.verifier(decode, mode);
    if (g.node_count() <= o.exhaustive_limit) return verify(ApspTable(g, o.exhaustive_limit, o.threads), decode, mode, o.threads);
    return verify_sampled(g, decode, mode, o.sample_sources, o.sample_targets, o.seed, o.threads);
}

/// One build + verify + bench cycle. `scheme` is "exact", "full" or "additive".
inline SweepRow sweep_row(const Graph& g, const std::string& scheme, uint32_t param, const SweepOptions& o) {
    SweepRow row;
    row.n = g.node_count();
    row.m = g.edge_count();
    row.param = param;
    const auto t0 = std::chrono::steady_clock::now();
    if (scheme == "additive") {
        const AdditiveLabeling l = build_additive(g, param, o.threads);
        row.build_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const AdditiveStats s = additive_stats(l);
        row.scheme = scheme_name(l.info.scheme);
        row.delta = l.info.delta;
        row.param = l.info.param_effective;
        row.r_prime = l.info.r_prime;
        row.max_label_bits = s.max_label_bits;
        row.avg_label_bits = s.avg_label_bits;
        row.max_hub = s.max_hub;
        const auto decode = [&](node_t u, node_t v) { return query(l, u, v); };
        row.verification = verification_status(verify_against(g, decode, VerifyMode::additive2, o));
        row.ns_per_query = median_query_ns(row.n, decode, o.queries, o.seed);
        return row;
    }
    const ExactLabeling l = scheme == "full" ? build_full_labels(g, o.threads) : build_exact_avg(g, param, o.threads);
    row.build_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const HubStats s = hub_stats(l);
    row.scheme = scheme_name(l.info.scheme);
    row.delta = l.info.delta;
    row.r_prime = l.info.r_prime;
    row.max_label_bits = s.max_label_bits;
    row.avg_label_bits = s.avg_label_bits;
    row.max_hub = s.max_hub;
    row.max_layer_bits = s.max_layer_bits;
    const auto decode = [&](node_t u, node_t v) { return query(l, u, v); };
    row.verification = verification_status(verify_against(g, decode, VerifyMode::exact, o));
    row.ns_per_query = median_query_ns(row.n, decode, o.queries, o.seed);
    return row;
}

}  // namespace hublab
