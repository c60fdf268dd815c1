#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "hublab/bits.hpp"
#include "hublab/exact.hpp"
#include "hublab/graph.hpp"
#include "hublab/hub_set.hpp"
#include "hublab/label_common.hpp"
#include "hublab/naming.hpp"
#include "hublab/parallel.hpp"

namespace hublab {

struct AdditiveParams {
    uint32_t tau_requested = 0;
    uint32_t tau = 2;      // clamped to max(2, floor(log2(n) / 2))
    double r = 0.0;        // tau / log2 tau
    uint32_t r_prime = 1;  // max(1, floor(r))
};

inline uint32_t default_tau(uint32_t n) {
    const uint32_t lg = n == 0 ? 0 : static_cast<uint32_t>(std::bit_width(n) - 1);
    return std::max<uint32_t>(2, lg / 2);
}

inline AdditiveParams additive_params(uint32_t n, uint32_t tau) {
    if (tau < 2) throw std::invalid_argument("degree threshold tau must be at least 2");
    AdditiveParams p;
    p.tau_requested = tau;
    p.tau = std::min(tau, default_tau(n));
    p.r = double(p.tau) / std::log2(double(p.tau));
    p.r_prime = std::max<uint32_t>(1, static_cast<uint32_t>(std::floor(p.r + 1e-12)));
    return p;
}

/// Nodes of degree above tau, ascending.
inline std::vector<node_t> high_degree_set(const Graph& g, uint32_t tau) {
    std::vector<node_t> out;
    for (node_t v = 0; v < g.node_count(); ++v)
        if (g.degree(v) > tau) out.push_back(v);
    return out;
}

struct DominatingSet {
    std::vector<node_t> members;  // in the order greedy picked them
    std::vector<node_t> dom;      // node -> its designated dominator, kUnreachable outside V'
};

/// Greedy dominating set for `targets`: repeatedly take the node whose closed
/// neighbourhood covers the most uncovered targets (smallest id on ties). Each
/// target's dominator is the first pick that covered it.
inline DominatingSet greedy_dominating_set(const Graph& g, std::span<const node_t> targets) {
    const node_t n = g.node_count();
    DominatingSet out;
    out.dom.assign(n, kUnreachable);
    std::vector<char> is_target(n, 0), covered(n, 0), candidate(n, 0);
    for (node_t w : targets) is_target[w] = 1;

    auto gain = [&](node_t x) {
        uint32_t c = is_target[x] && !covered[x];
        for (const auto& a : g.neighbors(x)) c += is_target[a.to] && !covered[a.to];
        return c;
    };

    // max-heap on (gain, -id); stale gains are refreshed when popped
    using Item = std::pair<uint32_t, node_t>;
    auto worse = [](const Item& a, const Item& b) { return a.first != b.first ? a.first < b.first : a.second > b.second; };
    std::priority_queue<Item, std::vector<Item>, decltype(worse)> heap(worse);
    for (node_t w : targets) {
        candidate[w] = 1;
        for (const auto& a : g.neighbors(w)) candidate[a.to] = 1;
    }
    for (node_t x = 0; x < n; ++x)
        if (candidate[x]) heap.push({gain(x), x});

    size_t remaining = targets.size();
    while (remaining > 0 && !heap.empty()) {
        const auto [stored, x] = heap.top();
        heap.pop();
        const uint32_t now = gain(x);
        if (now == 0) continue;
        if (now != stored) {
            heap.push({now, x});
            continue;
        }
        out.members.push_back(x);
        auto take = [&](node_t w) {
            if (is_target[w] && !covered[w]) {
                covered[w] = 1;
                out.dom[w] = x;
                --remaining;
            }
        };
        take(x);
        for (const auto& a : g.neighbors(x)) take(a.to);
    }
    return out;
}

/// Upper bound n (1 + ln(tau + 1)) / (tau + 1) on the greedy set size.
inline double dominating_set_bound(uint32_t n, uint32_t tau) {
    return double(n) * (1.0 + std::log(double(tau) + 1.0)) / (double(tau) + 1.0);
}

/// Nodes reached from u within r hops without passing through a node of V'.
/// The root always expands; other members of V' are never entered. BFS order.
inline void restricted_ball_nodes(const Graph& g, node_t u, uint32_t r, const std::vector<char>& in_vprime,
                                  SsspWorkspace& ws, std::vector<node_t>& out) {
    if (ws.bfs_stamp.size() != g.node_count()) {
        ws.bfs_stamp.assign(g.node_count(), 0);
        ws.stamp = 0;
    }
    if (++ws.stamp == 0) {
        std::fill(ws.bfs_stamp.begin(), ws.bfs_stamp.end(), 0);
        ws.stamp = 1;
    }
    out.clear();
    out.push_back(u);
    ws.bfs_stamp[u] = ws.stamp;
    size_t head = 0;
    for (uint32_t depth = 0; depth < r; ++depth) {
        const size_t end = out.size();
        if (head == end) break;
        for (; head < end; ++head)
            for (const auto& a : g.neighbors(out[head]))
                if (ws.bfs_stamp[a.to] != ws.stamp && !in_vprime[a.to]) {
                    ws.bfs_stamp[a.to] = ws.stamp;
                    out.push_back(a.to);
                }
    }
}

/// Restricted ball with true distances from u in g, sorted by node id.
inline std::vector<std::pair<node_t, uint32_t>> restricted_ball(const Graph& g, node_t u, uint32_t r,
                                                               const std::vector<char>& in_vprime,
                                                               const std::vector<DistHop>& from_u) {
    SsspWorkspace ws;
    std::vector<node_t> nodes;
    restricted_ball_nodes(g, u, r, in_vprime, ws, nodes);
    std::vector<std::pair<node_t, uint32_t>> out;
    for (node_t v : nodes) out.emplace_back(v, from_u[v].delta);
    std::sort(out.begin(), out.end());
    return out;
}

/// Dominators of every V' node adjacent to (or inside) the ball, plus dom(u)
/// when u is in V'. Sorted by node id, no duplicates.
inline std::vector<node_t> boundary_hub_subset(const Graph& g, std::span<const node_t> ball,
                                               const std::vector<char>& in_vprime, const std::vector<node_t>& dom,
                                               node_t u) {
    std::vector<node_t> out;
    if (in_vprime[u]) out.push_back(dom[u]);
    for (node_t x : ball)
        for (const auto& a : g.neighbors(x))
            if (in_vprime[a.to]) out.push_back(dom[a.to]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Label of one node in the 2-additive scheme.
///
/// Layout: build_id(32) n(32) name(w) component(w) gamma(r'+1) gamma(offset+1)
///         ball' layer s_all gamma(|s_u|+1) s_u names(w each), w = bit_width(n).
struct AdditiveLabel {
    uint32_t build_id = 0;
    uint32_t n = 0;
    uint32_t name = 0;
    uint32_t component = 0;
    uint32_t r_prime = 1;
    uint32_t offset = 0;
    std::vector<HubEntry> ball;    // restricted ball, sorted by name
    EncodedHubSet layer;
    EncodedHubSet s_all;           // S' within the component, with distances
    std::vector<uint32_t> s_u;     // names, ascending, subset of s_all

    [[nodiscard]] uint64_t bit_size() const {
        const uint64_t nw = std::bit_width(n);
        return 64 + 2 * nw + bits::gamma_length(r_prime + 1) + bits::gamma_length(offset + 1) +
               detail::ball_bits(ball, n) + layer.bit_size() + s_all.bit_size() + bits::gamma_length(s_u.size() + 1) +
               s_u.size() * nw;
    }

    [[nodiscard]] uint64_t hub_count() const { return ball.size() + layer.size() + s_all.size(); }

    [[nodiscard]] BitBlob serialize() const {
        BitWriter w;
        const unsigned nw = std::bit_width(n);
        w.write(build_id, 32);
        w.write(n, 32);
        w.write(name, nw);
        w.write(component, nw);
        w.write_gamma(r_prime + 1);
        w.write_gamma(offset + 1);
        detail::write_ball(w, ball, n);
        layer.serialize(w);
        s_all.serialize(w);
        w.write_gamma(s_u.size() + 1);
        for (uint32_t s : s_u) w.write(s, nw);
        return w.take();
    }

    static AdditiveLabel parse(const BitBlob& blob) {
        BitReader in(blob);
        AdditiveLabel l;
        l.build_id = static_cast<uint32_t>(in.read(32));
        l.n = static_cast<uint32_t>(in.read(32));
        const unsigned nw = std::bit_width(l.n);
        l.name = static_cast<uint32_t>(in.read(nw));
        l.component = static_cast<uint32_t>(in.read(nw));
        l.r_prime = static_cast<uint32_t>(in.read_gamma() - 1);
        if (l.r_prime == 0) throw DecodeError("additive label with zero radius");
        l.offset = static_cast<uint32_t>(in.read_gamma() - 1);
        if (l.offset >= l.r_prime) throw DecodeError("layer offset outside [0, r')");
        l.ball = detail::read_ball(in, l.n);
        l.layer = EncodedHubSet::parse(in, l.n);
        l.s_all = EncodedHubSet::parse(in, l.n);
        const uint64_t count = in.read_gamma() - 1;
        if (count > l.s_all.size()) throw DecodeError("S'_u larger than S'");
        l.s_u.resize(count);
        for (auto& s : l.s_u) {
            s = static_cast<uint32_t>(in.read(nw));
            if (!l.s_all.member(s)) throw DecodeError("S'_u member missing from S'");
        }
        for (size_t i = 1; i < l.s_u.size(); ++i)
            if (l.s_u[i] <= l.s_u[i - 1]) throw DecodeError("S'_u names are not increasing");
        if (in.remaining() != 0) throw DecodeError("trailing bits after additive label");
        return l;
    }

    bool operator==(const AdditiveLabel&) const = default;
};

struct AdditiveLabeling {
    BuildInfo info;
    std::vector<node_t> fwd;  // identity; kept for a uniform query interface
    std::vector<AdditiveLabel> labels;
    std::vector<std::string> warnings;
    std::vector<std::string> violations;  // |ball'| or |S'_u| above their nominal bounds
    uint32_t vprime_size = 0;
    uint32_t sprime_size = 0;

    [[nodiscard]] const AdditiveLabel& label_of(node_t original) const { return labels.at(fwd.at(original)); }
};

namespace detail {

inline uint32_t decode_additive_oriented(const AdditiveLabel& a, const AdditiveLabel& b, DecodeCounter* counter) {
    if (counter) ++counter->probes;
    if (const HubEntry* hit = find_in_ball(a.ball, b.name)) return hit->dist;
    uint32_t best = kUnreachable;
    for (const auto& w : a.ball) {
        if (counter) ++counter->probes;
        if (const auto d = b.layer.lookup(w.name)) best = std::min(best, w.dist + *d);
    }
    for (uint32_t s : a.s_u) {
        if (counter) counter->probes += 2;
        const auto da = a.s_all.lookup(s);
        const auto db = b.s_all.lookup(s);
        if (da && db) best = std::min(best, *da + *db);
    }
    return best;
}

}  // namespace detail

/// Value in [delta, delta + 2], or kUnreachable across components.
inline uint32_t decode_additive(const AdditiveLabel& a, const AdditiveLabel& b, DecodeCounter* counter = nullptr) {
    detail::check_same_build(a.build_id, a.n, b.build_id, b.n);
    if (a.component != b.component) return kUnreachable;
    if (a.name == b.name) return 0;
    return std::min(detail::decode_additive_oriented(a, b, counter), detail::decode_additive_oriented(b, a, counter));
}

inline uint32_t query(const AdditiveLabeling& l, node_t u, node_t v, DecodeCounter* counter = nullptr) {
    return decode_additive(l.label_of(u), l.label_of(v), counter);
}

/// Everything the labels are derived from, exposed for inspection and tests.
struct AdditiveStructure {
    AdditiveParams params;
    std::vector<node_t> vprime;
    std::vector<char> in_vprime;
    DominatingSet dominating;
    std::vector<char> in_sprime;
    Naming naming;
};

inline AdditiveStructure additive_structure(const Graph& g, uint32_t tau) {
    AdditiveStructure st;
    st.params = additive_params(g.node_count(), tau);
    st.vprime = high_degree_set(g, st.params.tau);
    st.in_vprime.assign(g.node_count(), 0);
    for (node_t v : st.vprime) st.in_vprime[v] = 1;
    st.dominating = greedy_dominating_set(g, st.vprime);
    st.in_sprime.assign(g.node_count(), 0);
    for (node_t s : st.dominating.members) st.in_sprime[s] = 1;
    st.naming = build_naming(g);
    if (double(st.dominating.members.size()) > dominating_set_bound(g.node_count(), st.params.tau))
        throw std::logic_error("greedy dominating set of " + std::to_string(st.dominating.members.size()) +
                               " nodes exceeds its size bound");
    return st;
}

inline AdditiveLabeling build_additive(const Graph& g, uint32_t tau, unsigned threads = default_threads()) {
    const node_t n = g.node_count();
    const AdditiveStructure st = additive_structure(g, tau);
    const AdditiveParams& p = st.params;

    AdditiveLabeling out;
    out.fwd = detail::identity_map(n);
    out.info.scheme = Scheme::additive;
    out.info.graph_hash = g.hash();
    out.info.n_original = n;
    out.info.n_labeled = n;
    out.info.param_requested = p.tau_requested;
    out.info.param_effective = p.tau;
    out.info.r_prime = p.r_prime;
    out.info.delta = g.max_degree();
    out.info.build_id = make_build_id(out.info);
    out.vprime_size = static_cast<uint32_t>(st.vprime.size());
    out.sprime_size = static_cast<uint32_t>(st.dominating.members.size());
    if (p.tau != p.tau_requested)
        out.warnings.push_back("tau " + std::to_string(p.tau_requested) + " clamped to " + std::to_string(p.tau));

    // names of S' per component, ascending
    std::vector<std::vector<uint32_t>> sprime_names(g.component_count());
    for (node_t s : st.dominating.members) sprime_names[g.component(s)].push_back(st.naming.name[s]);
    for (auto& v : sprime_names) std::sort(v.begin(), v.end());

    uint64_t ball_bound = 1, su_bound = 1;
    for (uint32_t i = 0; i < p.r_prime; ++i) ball_bound *= p.tau;
    su_bound = ball_bound * p.tau + 1;
    ball_bound += 1;

    struct Scratch {
        SsspWorkspace ws;
        std::vector<DistHop> dist;
        std::vector<node_t> ball_nodes;
        std::vector<HubEntry> entries;
        std::vector<std::string> violations;
    };
    threads = std::max(1u, threads);
    std::vector<Scratch> scratch(threads);
    out.labels.resize(n);

    parallel_for(n, threads, [&](size_t ui, unsigned worker) {
        const node_t u = static_cast<node_t>(ui);
        Scratch& s = scratch[worker];
        sssp_01(g, u, s.ws, s.dist);
        AdditiveLabel& lab = out.labels[u];
        lab.build_id = out.info.build_id;
        lab.n = n;
        lab.name = st.naming.name[u];
        lab.component = g.component(u);
        lab.r_prime = p.r_prime;
        const uint32_t first = st.naming.comp_first[lab.component];
        const uint32_t last = st.naming.comp_last[lab.component];

        restricted_ball_nodes(g, u, p.r_prime, st.in_vprime, s.ws, s.ball_nodes);
        lab.ball.clear();
        for (node_t v : s.ball_nodes) lab.ball.push_back({st.naming.name[v], s.dist[v].delta});
        std::sort(lab.ball.begin(), lab.ball.end(), [](const HubEntry& a, const HubEntry& b) { return a.name < b.name; });

        lab.offset = choose_offset(s.dist, p.r_prime);
        s.entries.clear();
        for (uint32_t nm = first; nm <= last; ++nm) {
            const DistHop& dh = s.dist[st.naming.inverse[nm]];
            if (dh.hops % p.r_prime == lab.offset) s.entries.push_back({nm, dh.delta});
        }
        lab.layer = EncodedHubSet::encode(s.entries, n);

        s.entries.clear();
        for (uint32_t nm : sprime_names[lab.component]) s.entries.push_back({nm, s.dist[st.naming.inverse[nm]].delta});
        lab.s_all = EncodedHubSet::encode(s.entries, n);

        lab.s_u.clear();
        for (node_t x : boundary_hub_subset(g, s.ball_nodes, st.in_vprime, st.dominating.dom, u))
            lab.s_u.push_back(st.naming.name[x]);
        std::sort(lab.s_u.begin(), lab.s_u.end());

        if (lab.ball.size() > ball_bound)
            s.violations.push_back("node " + std::to_string(u) + ": |ball'| = " + std::to_string(lab.ball.size()) +
                                   " > " + std::to_string(ball_bound));
        if (lab.s_u.size() > su_bound)
            s.violations.push_back("node " + std::to_string(u) + ": |S'_u| = " + std::to_string(lab.s_u.size()) +
                                   " > " + std::to_string(su_bound));
    });
    for (auto& s : scratch)
        out.violations.insert(out.violations.end(), s.violations.begin(), s.violations.end());
    std::sort(out.violations.begin(), out.violations.end());
    return out;
}

struct AdditiveStats {
    uint64_t max_ball = 0;
    uint64_t max_s_u = 0;
    uint64_t max_hub = 0;
    double avg_hub = 0;
    uint64_t max_label_bits = 0;
    double avg_label_bits = 0;
};

inline AdditiveStats additive_stats(const AdditiveLabeling& l) {
    AdditiveStats s;
    double hubs = 0, bits = 0;
    for (const auto& lab : l.labels) {
        s.max_ball = std::max<uint64_t>(s.max_ball, lab.ball.size());
        s.max_s_u = std::max<uint64_t>(s.max_s_u, lab.s_u.size());
        s.max_hub = std::max(s.max_hub, lab.hub_count());
        const uint64_t b = lab.bit_size();
        s.max_label_bits = std::max(s.max_label_bits, b);
        hubs += double(lab.hub_count());
        bits += double(b);
    }
    if (!l.labels.empty()) {
        s.avg_hub = hubs / double(l.labels.size());
        s.avg_label_bits = bits / double(l.labels.size());
    }
    return s;
}

// ---------------------------------------------------------------------------
// Correction tables

enum class CorrectionMode : uint8_t { exact = 0, one_additive = 1 };

/// Forward window of a node: the floor(n/2) names following it cyclically.
/// Positions are over 0-based names (name - 1).
inline uint32_t correction_window(uint32_t n) { return n / 2; }

/// Which side of an unordered pair of names stores its correction, and where.
struct CorrectionSlot {
    uint32_t store_name;  // 1-based
    uint32_t index;       // position inside the storing node's window
};

inline CorrectionSlot correction_slot(uint32_t name_a, uint32_t name_b, uint32_t n) {
    const uint32_t a = name_a - 1, b = name_b - 1;
    const uint32_t d = (b + n - a) % n;  // b = a + d (mod n)
    const uint32_t e = n - d;            // a = b + e (mod n)
    if (d < e || (d == e && a < b)) return {name_a, d - 1};
    return {name_b, e - 1};
}

/// Packed per-node correction values. Trits go 20 to a 32-bit word as
/// sum t_i 3^i; a final group of r < 20 trits takes bit_width(3^r - 1) bits.
/// Bits are stored one per entry.
class CorrectionTable {
  public:
    static constexpr uint32_t kTritsPerWord = 20;

    CorrectionTable() = default;

    static CorrectionTable encode(std::span<const uint8_t> values, CorrectionMode mode) {
        CorrectionTable t;
        t.mode_ = mode;
        t.count_ = static_cast<uint32_t>(values.size());
        BitWriter w;
        if (mode == CorrectionMode::one_additive) {
            for (uint8_t v : values) {
                if (v > 1) throw std::invalid_argument("correction bit above 1");
                w.write_bit(v);
            }
        } else {
            for (size_t g = 0; g < values.size(); g += kTritsPerWord) {
                const size_t r = std::min<size_t>(kTritsPerWord, values.size() - g);
                uint64_t packed = 0, scale = 1;
                for (size_t i = 0; i < r; ++i) {
                    if (values[g + i] > 2) throw std::invalid_argument("correction trit above 2");
                    packed += values[g + i] * scale;
                    scale *= 3;
                }
                w.write(packed, group_width(r));
            }
        }
        t.bits_ = w.take();
        return t;
    }

    [[nodiscard]] uint32_t size() const { return count_; }
    [[nodiscard]] CorrectionMode mode() const { return mode_; }
    [[nodiscard]] uint64_t bit_size() const { return bits_.size; }
    [[nodiscard]] const BitBlob& blob() const { return bits_; }

    [[nodiscard]] uint8_t get(uint32_t i) const {
        if (i >= count_) throw std::out_of_range("correction index outside the window");
        if (mode_ == CorrectionMode::one_additive) return bits_.bit(i);
        const uint32_t g = i / kTritsPerWord;
        const uint32_t r = std::min(kTritsPerWord, count_ - g * kTritsPerWord);
        uint64_t packed = bits::get(bits_.words.data(), uint64_t(g) * 32, group_width(r));
        for (uint32_t k = 0; k < i % kTritsPerWord; ++k) packed /= 3;
        return static_cast<uint8_t>(packed % 3);
    }

    static uint64_t bits_for(uint32_t count, CorrectionMode mode) {
        if (mode == CorrectionMode::one_additive) return count;
        const uint32_t r = count % kTritsPerWord;
        return uint64_t(count / kTritsPerWord) * 32 + (r == 0 ? 0 : group_width(r));
    }

    static CorrectionTable from_blob(BitBlob blob, uint32_t count, CorrectionMode mode) {
        if (blob.size != bits_for(count, mode)) throw DecodeError("correction table has the wrong length");
        CorrectionTable t;
        t.mode_ = mode;
        t.count_ = count;
        t.bits_ = std::move(blob);
        if (mode == CorrectionMode::exact)
            for (uint32_t g = 0; g * kTritsPerWord < count; ++g) {
                const uint32_t r = std::min(kTritsPerWord, count - g * kTritsPerWord);
                uint64_t limit = 1;
                for (uint32_t k = 0; k < r; ++k) limit *= 3;
                if (bits::get(t.bits_.words.data(), uint64_t(g) * 32, group_width(r)) >= limit)
                    throw DecodeError("packed trit group out of range");
            }
        return t;
    }

    bool operator==(const CorrectionTable&) const = default;

  private:
    static unsigned group_width(size_t r) {
        if (r == kTritsPerWord) return 32;
        uint64_t p = 1;
        for (size_t i = 0; i < r; ++i) p *= 3;
        return static_cast<unsigned>(std::bit_width(p - 1));
    }

    CorrectionMode mode_ = CorrectionMode::exact;
    uint32_t count_ = 0;
    BitBlob bits_;
};

/// Correction tables of one additive build, indexed by name - 1.
struct CorrectionSet {
    CorrectionMode mode = CorrectionMode::exact;
    uint32_t build_id = 0;
    uint32_t n = 0;
    std::vector<CorrectionTable> tables;

    [[nodiscard]] uint64_t max_bits() const {
        uint64_t m = 0;
        for (const auto& t : tables) m = std::max(m, t.bit_size());
        return m;
    }
};

/// Tables for `l` built on `g`. Throws std::logic_error if an additive value
/// is off by more than 2.
inline CorrectionSet build_correction(const Graph& g, const AdditiveLabeling& l, CorrectionMode mode,
                                      unsigned threads = default_threads()) {
    const node_t n = g.node_count();
    if (l.info.n_labeled != n || l.info.graph_hash != g.hash())
        throw MismatchError("labels were not built on this graph");
    const Naming naming = build_naming(g);
    CorrectionSet out;
    out.mode = mode;
    out.build_id = l.info.build_id;
    out.n = n;
    out.tables.resize(n);
    const uint32_t window = correction_window(n);

    struct Scratch {
        SsspWorkspace ws;
        std::vector<DistHop> dist;
        std::vector<uint8_t> values;
    };
    threads = std::max(1u, threads);
    std::vector<Scratch> scratch(threads);
    parallel_for(n, threads, [&](size_t ai, unsigned worker) {
        Scratch& s = scratch[worker];
        const uint32_t a = static_cast<uint32_t>(ai);  // 0-based name
        const node_t u = naming.inverse[a + 1];
        sssp_01(g, u, s.ws, s.dist);
        s.values.assign(window, 0);
        for (uint32_t i = 0; i < window; ++i) {
            const uint32_t b = (a + i + 1) % n;
            if (correction_slot(a + 1, b + 1, n).store_name != a + 1) continue;
            const node_t v = naming.inverse[b + 1];
            const uint32_t approx = decode_additive(l.labels[u], l.labels[v]);
            const uint32_t truth = s.dist[v].delta;
            if (approx == kUnreachable || truth == kUnreachable) {
                if (approx != truth) throw std::logic_error("additive decoder disagrees on reachability");
                continue;
            }
            if (approx < truth || approx - truth > 2)
                throw std::logic_error("additive error outside {0,1,2} for nodes " + std::to_string(u) + ", " +
                                       std::to_string(v));
            const uint32_t diff = approx - truth;
            s.values[i] = static_cast<uint8_t>(mode == CorrectionMode::exact ? diff : diff == 2 ? 1 : 0);
        }
        out.tables[a] = CorrectionTable::encode(s.values, mode);
    });
    return out;
}

namespace detail {

inline uint8_t correction_value(const AdditiveLabel& a, const AdditiveLabel& b, const CorrectionSet& c) {
    if (c.build_id != a.build_id || c.n != a.n) throw MismatchError("correction tables come from a different build");
    const CorrectionSlot slot = correction_slot(a.name, b.name, a.n);
    return c.tables.at(slot.store_name - 1).get(slot.index);
}

}  // namespace detail

inline uint32_t decode_exact_via_correction(const AdditiveLabel& a, const AdditiveLabel& b, const CorrectionSet& c) {
    if (c.mode != CorrectionMode::exact) throw std::invalid_argument("tables do not hold exact corrections");
    const uint32_t approx = decode_additive(a, b);
    if (approx == kUnreachable || a.name == b.name) return approx;
    return approx - detail::correction_value(a, b, c);
}

/// Value in [delta, delta + 1].
inline uint32_t decode_1additive(const AdditiveLabel& a, const AdditiveLabel& b, const CorrectionSet& c) {
    if (c.mode != CorrectionMode::one_additive) throw std::invalid_argument("tables do not hold 1-additive corrections");
    const uint32_t approx = decode_additive(a, b);
    if (approx == kUnreachable || a.name == b.name) return approx;
    return approx - 2 * detail::correction_value(a, b, c);
}

}  // namespace hublab
