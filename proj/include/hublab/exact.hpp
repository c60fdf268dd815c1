#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hublab/bits.hpp"
#include "hublab/graph.hpp"
#include "hublab/hub_set.hpp"
#include "hublab/label_common.hpp"
#include "hublab/naming.hpp"
#include "hublab/parallel.hpp"
#include "hublab/split.hpp"

namespace hublab {

/// Radius parameters of the exact scheme for a time budget T.
struct ExactParams {
    uint32_t t_requested = 0;
    uint32_t t = 0;       // min(T, n)
    uint32_t delta = 2;   // max(2, max degree)
    double r = 0.0;       // log T / log delta
    uint32_t r_prime = 0; // floor(r); 0 selects full labels (T < delta)
};

inline ExactParams exact_params(uint32_t n, uint32_t max_degree, uint32_t t) {
    if (t < 2) throw std::invalid_argument("time parameter T must be at least 2");
    ExactParams p;
    p.t_requested = t;
    p.t = std::min(t, n);
    p.delta = std::max<uint32_t>(2, max_degree);
    if (p.t < p.delta) return p;
    p.r = std::log(double(p.t)) / std::log(double(p.delta));
    // largest r' with delta^r' <= T, in exact integer arithmetic
    uint64_t power = p.delta;
    p.r_prime = 1;
    while (power * p.delta <= p.t) {
        power *= p.delta;
        ++p.r_prime;
    }
    return p;
}

/// Label of one node. Full labels (r_prime == 0) keep the whole component in
/// `layer` and leave the ball empty.
///
/// Layout: build_id(32) n(32) name(w) component(w) gamma(r'+1)
///         [gamma(offset+1) ball] layer, with w = bit_width(n).
struct ExactLabel {
    uint32_t build_id = 0;
    uint32_t n = 0;
    uint32_t name = 0;
    uint32_t component = 0;
    uint32_t r_prime = 0;
    uint32_t offset = 0;
    std::vector<HubEntry> ball;  // sorted by name
    EncodedHubSet layer;

    [[nodiscard]] bool full() const { return r_prime == 0; }

    [[nodiscard]] uint64_t header_bits() const {
        uint64_t b = 64 + 2 * uint64_t(std::bit_width(n)) + bits::gamma_length(r_prime + 1);
        if (!full()) b += bits::gamma_length(offset + 1) + detail::ball_bits(ball, n);
        return b;
    }

    [[nodiscard]] uint64_t bit_size() const { return header_bits() + layer.bit_size(); }
    [[nodiscard]] uint64_t hub_count() const { return ball.size() + layer.size(); }

    [[nodiscard]] BitBlob serialize() const {
        BitWriter w;
        const unsigned nw = std::bit_width(n);
        w.write(build_id, 32);
        w.write(n, 32);
        w.write(name, nw);
        w.write(component, nw);
        w.write_gamma(r_prime + 1);
        if (!full()) {
            w.write_gamma(offset + 1);
            detail::write_ball(w, ball, n);
        }
        layer.serialize(w);
        return w.take();
    }

    static ExactLabel parse(const BitBlob& blob) {
        BitReader in(blob);
        ExactLabel l;
        l.build_id = static_cast<uint32_t>(in.read(32));
        l.n = static_cast<uint32_t>(in.read(32));
        const unsigned nw = std::bit_width(l.n);
        l.name = static_cast<uint32_t>(in.read(nw));
        l.component = static_cast<uint32_t>(in.read(nw));
        l.r_prime = static_cast<uint32_t>(in.read_gamma() - 1);
        if (!l.full()) {
            l.offset = static_cast<uint32_t>(in.read_gamma() - 1);
            if (l.offset >= l.r_prime) throw DecodeError("layer offset outside [0, r')");
            l.ball = detail::read_ball(in, l.n);
        }
        l.layer = EncodedHubSet::parse(in, l.n);
        if (in.remaining() != 0) throw DecodeError("trailing bits after exact label");
        return l;
    }

    bool operator==(const ExactLabel&) const = default;
};

/// A complete exact labeling. `fwd` maps original node ids to labeled nodes
/// (identity unless the graph was split).
struct ExactLabeling {
    BuildInfo info;
    std::vector<node_t> fwd;
    std::vector<ExactLabel> labels;
    std::vector<std::string> warnings;

    [[nodiscard]] const ExactLabel& label_of(node_t original) const { return labels.at(fwd.at(original)); }
};

/// Residue class of hop counts (mod r') with the fewest members; ties go to the
/// smallest residue. Unreachable entries are ignored.
inline uint32_t choose_offset(std::span<const DistHop> from_u, uint32_t r_prime) {
    if (r_prime <= 1) return 0;
    std::vector<uint64_t> counts(r_prime, 0);
    for (const auto& dh : from_u)
        if (dh.hops != kUnreachable) ++counts[dh.hops % r_prime];
    return static_cast<uint32_t>(std::min_element(counts.begin(), counts.end()) - counts.begin());
}

namespace detail {

inline uint32_t decode_full(const ExactLabel& a, const ExactLabel& b, DecodeCounter* counter) {
    if (counter) ++counter->probes;
    const auto d = a.layer.lookup(b.name);
    if (!d) throw DecodeError("full label is missing a node of its own component");
    return *d;
}

/// One orientation: a's ball against b's layer. Sets `exact` when b lies in a's ball.
inline uint32_t decode_oriented(const ExactLabel& a, const ExactLabel& b, bool& exact, DecodeCounter* counter) {
    if (counter) ++counter->probes;
    if (const HubEntry* hit = find_in_ball(a.ball, b.name)) {
        exact = true;
        return hit->dist;
    }
    uint32_t best = kUnreachable;
    for (const auto& w : a.ball) {
        if (counter) ++counter->probes;
        if (const auto d = b.layer.lookup(w.name)) best = std::min(best, w.dist + *d);
    }
    return best;
}

inline void check_same_build(uint32_t build_a, uint32_t n_a, uint32_t build_b, uint32_t n_b) {
    if (n_a != n_b) throw MismatchError("labels describe graphs of different sizes");
    if (build_a != build_b) throw MismatchError("labels come from different builds");
}

}  // namespace detail

/// Distance between the nodes of two labels, or kUnreachable. Both
/// orientations are evaluated and the smaller candidate wins.
inline uint32_t decode_exact(const ExactLabel& a, const ExactLabel& b, DecodeCounter* counter = nullptr) {
    detail::check_same_build(a.build_id, a.n, b.build_id, b.n);
    if (a.component != b.component) return kUnreachable;
    if (a.name == b.name) return 0;
    if (a.full() || b.full()) {
        if (a.full() != b.full()) throw MismatchError("full and ball/layer labels mixed");
        return detail::decode_full(a, b, counter);
    }
    bool exact = false;
    const uint32_t forward = detail::decode_oriented(a, b, exact, counter);
    if (exact) return forward;
    const uint32_t backward = detail::decode_oriented(b, a, exact, counter);
    return std::min(forward, backward);
}

inline uint32_t query(const ExactLabeling& l, node_t u, node_t v, DecodeCounter* counter = nullptr) {
    return decode_exact(l.label_of(u), l.label_of(v), counter);
}

namespace detail {

/// Builds labels on `g` (already of bounded degree). `fwd` and `n_original`
/// describe the graph the caller will query with.
inline ExactLabeling build_exact_labels(const Graph& g, const ExactParams& p, bool force_full, uint64_t graph_hash,
                                        std::vector<node_t> fwd, uint32_t n_original, unsigned threads) {
    const node_t n = g.node_count();
    ExactLabeling out;
    out.fwd = std::move(fwd);
    const bool full = force_full || p.r_prime == 0;
    out.info.scheme = full ? Scheme::full : Scheme::exact;
    out.info.graph_hash = graph_hash;
    out.info.n_original = n_original;
    out.info.n_labeled = n;
    out.info.param_requested = p.t_requested;
    out.info.param_effective = p.t;
    out.info.r_prime = full ? 0 : p.r_prime;
    out.info.delta = p.delta;
    out.info.build_id = make_build_id(out.info);

    const Naming naming = build_naming(g);
    out.labels.resize(n);
    const uint32_t r_prime = out.info.r_prime;

    struct Scratch {
        SsspWorkspace ws;
        std::vector<DistHop> dist;
        std::vector<node_t> ball_nodes;
        std::vector<HubEntry> entries;
    };
    threads = std::max(1u, threads);
    std::vector<Scratch> scratch(threads);

    parallel_for(n, threads, [&](size_t ui, unsigned worker) {
        const node_t u = static_cast<node_t>(ui);
        Scratch& s = scratch[worker];
        sssp_01(g, u, s.ws, s.dist);
        ExactLabel& lab = out.labels[u];
        lab.build_id = out.info.build_id;
        lab.n = n;
        lab.name = naming.name[u];
        lab.component = g.component(u);
        lab.r_prime = r_prime;
        const uint32_t first = naming.comp_first[lab.component];
        const uint32_t last = naming.comp_last[lab.component];

        s.entries.clear();
        if (full) {
            for (uint32_t nm = first; nm <= last; ++nm) s.entries.push_back({nm, s.dist[naming.inverse[nm]].delta});
            lab.layer = EncodedHubSet::encode(s.entries, n);
            return;
        }

        hop_ball_nodes(g, u, r_prime, s.ws, s.ball_nodes);
        lab.ball.clear();
        lab.ball.reserve(s.ball_nodes.size());
        for (node_t v : s.ball_nodes) lab.ball.push_back({naming.name[v], s.dist[v].delta});
        std::sort(lab.ball.begin(), lab.ball.end(), [](const HubEntry& a, const HubEntry& b) { return a.name < b.name; });

        lab.offset = choose_offset(s.dist, r_prime);
        for (uint32_t nm = first; nm <= last; ++nm) {
            const DistHop& dh = s.dist[naming.inverse[nm]];
            if (dh.hops % r_prime == lab.offset) s.entries.push_back({nm, dh.delta});
        }
        lab.layer = EncodedHubSet::encode(s.entries, n);
    });
    return out;
}

inline std::vector<node_t> identity_map(node_t n) {
    std::vector<node_t> id(n);
    for (node_t i = 0; i < n; ++i) id[i] = i;
    return id;
}

}  // namespace detail

/// Ball + layer labels on `g` using its own maximum degree. Falls back to full
/// labels when the clamped T is below that degree.
inline ExactLabeling build_exact_bounded(const Graph& g, uint32_t t, unsigned threads = default_threads()) {
    const ExactParams p = exact_params(g.node_count(), g.max_degree(), t);
    return detail::build_exact_labels(g, p, false, g.hash(), detail::identity_map(g.node_count()), g.node_count(),
                                      threads);
}

/// Every label stores the distances to its whole component.
inline ExactLabeling build_full_labels(const Graph& g, unsigned threads = default_threads()) {
    ExactParams p;
    p.t_requested = p.t = 0;
    p.delta = std::max<uint32_t>(2, g.max_degree());
    return detail::build_exact_labels(g, p, true, g.hash(), detail::identity_map(g.node_count()), g.node_count(),
                                      threads);
}

/// Splits high-degree nodes first, then labels the split graph. Queries take
/// original node ids.
inline ExactLabeling build_exact_avg(const Graph& g, uint32_t t, unsigned threads = default_threads()) {
    SplitResult split = split_graph(g);
    const ExactParams p = exact_params(split.graph.node_count(), split.graph.max_degree(), t);
    ExactLabeling out = detail::build_exact_labels(split.graph, p, false, g.hash(), std::move(split.fwd),
                                                   g.node_count(), threads);
    out.warnings = std::move(split.warnings);
    return out;
}

struct HubStats {
    uint64_t max_hub = 0;
    double avg_hub = 0;
    uint64_t max_label_bits = 0;
    double avg_label_bits = 0;
    uint64_t max_layer_bits = 0;
    double avg_layer_bits = 0;
    uint64_t hub_bound = 0;  // delta^r' + 1 + ceil(n / r'), or n for full labels
};

/// Hub-set and bit-size summary over all labels. Throws std::logic_error when
/// a hub set exceeds its bound.
inline HubStats hub_stats(const ExactLabeling& l) {
    HubStats s;
    const uint64_t n = l.info.n_labeled;
    if (l.info.r_prime == 0) {
        s.hub_bound = n;
    } else {
        uint64_t power = 1;
        for (uint32_t i = 0; i < l.info.r_prime; ++i) power *= l.info.delta;
        s.hub_bound = power + 1 + (n + l.info.r_prime - 1) / l.info.r_prime;
    }
    double hub_sum = 0, bit_sum = 0, layer_sum = 0;
    for (const auto& lab : l.labels) {
        const uint64_t hubs = lab.hub_count();
        const uint64_t layer_bits = lab.layer.bit_size();
        const uint64_t bits = lab.header_bits() + layer_bits;
        s.max_hub = std::max(s.max_hub, hubs);
        s.max_label_bits = std::max(s.max_label_bits, bits);
        s.max_layer_bits = std::max(s.max_layer_bits, layer_bits);
        hub_sum += double(hubs);
        bit_sum += double(bits);
        layer_sum += double(layer_bits);
    }
    if (!l.labels.empty()) {
        s.avg_hub = hub_sum / double(l.labels.size());
        s.avg_label_bits = bit_sum / double(l.labels.size());
        s.avg_layer_bits = layer_sum / double(l.labels.size());
    }
    if (s.max_hub > s.hub_bound)
        throw std::logic_error("hub set of " + std::to_string(s.max_hub) + " nodes exceeds bound " +
                               std::to_string(s.hub_bound));
    return s;
}

}  // namespace hublab
