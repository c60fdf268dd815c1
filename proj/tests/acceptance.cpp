// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hublab/additive.hpp"
#include "hublab/exact.hpp"
#include "hublab/generators.hpp"
#include "hublab/label_io.hpp"
#include "hublab/naming.hpp"
#include "hublab/split.hpp"
#include "hublab/sweep.hpp"
#include "hub_set_gen.hpp"
#include "oracles.hpp"

using namespace hublab;
using ref::BruteApsp;

namespace {

// pinned tolerances
constexpr double kC1Seconds = 60.0;
constexpr double kC2Seconds = 60.0;
constexpr double kTritBitsPerEntry = 1.62;
constexpr uint64_t kOneAdditiveSlack = 32;
constexpr uint64_t kVariationFactor = 2;
constexpr uint32_t kCodecInstances = 10000;
constexpr uint32_t kCodecMaxN = 10000;
constexpr uint32_t kCodecExhaustiveN = 512;
constexpr double kCodecFactor = 24.0;
constexpr uint64_t kSplitNodeFactor = 3;
constexpr uint64_t kSplitWarnFactor = 2;
constexpr double kFullFraction = 0.7;
constexpr double kMaxQueryNs = 50000.0;
constexpr double kC9Seconds = 600.0;
constexpr uint32_t kC9Queries = 100000;
constexpr uint32_t kC9Sources = 100;
constexpr uint32_t kC9Targets = 1000;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Named {
    std::string name;
    Graph g;
};

std::vector<Named> criterion1_graphs() {
    std::vector<Named> out;
    out.push_back({"P100", gen::path(100)});
    out.push_back({"C100", gen::cycle(100)});
    out.push_back({"grid10x10", gen::grid(10, 10)});
    out.push_back({"regular500d3", gen::random_regular(500, 3, 1)});
    out.push_back({"er200m600", gen::erdos_renyi(200, 600, 2)});
    out.push_back({"star50", gen::star(50)});
    return out;
}

std::vector<uint32_t> criterion1_ts(const Graph& g) {
    return {std::max<uint32_t>(2, g.max_degree()), 16, 256, g.node_count()};
}

std::vector<Named> criterion2_graphs() {
    std::vector<Named> out;
    for (uint64_t seed : {1, 2, 3}) out.push_back({"er300m1500s" + std::to_string(seed), gen::erdos_renyi(300, 1500, seed)});
    out.push_back({"starofstars300", gen::star_of_stars(13, 22)});
    return out;
}

/// The graph the exact labels live on: the split graph when splitting changed anything.
Graph labeled_graph(const Graph& g, const ExactLabeling& l) {
    if (l.info.n_labeled == g.node_count()) return g;
    return split_graph(g).graph;
}

std::string fail_at(const std::string& where, node_t u, node_t v, uint32_t expected, uint32_t got) {
    std::ostringstream s;
    s << where << " pair " << u << ' ' << v << " expected " << expected << " got " << got;
    return s.str();
}

Outcome c1_exact_correctness() {
    const auto t0 = std::chrono::steady_clock::now();
    uint64_t pairs = 0, builds = 0;
    for (const auto& [name, g] : criterion1_graphs()) {
        const BruteApsp truth(g);
        for (uint32_t t : criterion1_ts(g)) {
            const ExactLabeling l = build_exact_avg(g, t);
            const LabelSet loaded = load_from_bytes(save_to_bytes(LabelSet(l)));
            ++builds;
            for (node_t u = 0; u < g.node_count(); ++u)
                for (node_t v = 0; v < g.node_count(); ++v) {
                    ++pairs;
                    const uint32_t got = query(l, u, v);
                    if (got != truth.delta(u, v))
                        return {false, fail_at(name + " T=" + std::to_string(t), u, v, truth.delta(u, v), got)};
                    if (loaded.query(u, v) != got)
                        return {false, fail_at(name + " reloaded T=" + std::to_string(t), u, v, got, loaded.query(u, v))};
                }
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << builds << " builds, " << pairs << " pairs, 0 mismatches, " << secs << " s (limit " << kC1Seconds << ")";
    return {secs < kC1Seconds, d.str()};
}

Outcome c2_additive_soundness() {
    const auto t0 = std::chrono::steady_clock::now();
    std::map<int64_t, uint64_t> hist;
    uint64_t pairs = 0;
    for (const auto& [name, g] : criterion2_graphs()) {
        const BruteApsp truth(g);
        for (uint32_t tau : {2u, 3u, 4u}) {
            const AdditiveLabeling l = build_additive(g, tau);
            if (l.info.param_effective != tau)
                return {false, name + ": tau " + std::to_string(tau) + " was clamped to " +
                                   std::to_string(l.info.param_effective)};
            for (node_t u = 0; u < g.node_count(); ++u)
                for (node_t v = 0; v < g.node_count(); ++v) {
                    ++pairs;
                    const uint32_t want = truth.delta(u, v), got = query(l, u, v);
                    if ((want == kUnreachable) != (got == kUnreachable))
                        return {false, fail_at(name + " tau=" + std::to_string(tau), u, v, want, got)};
                    if (want == kUnreachable) continue;
                    const int64_t err = int64_t(got) - int64_t(want);
                    if (err < 0 || err > 2) return {false, fail_at(name + " tau=" + std::to_string(tau), u, v, want, got)};
                    ++hist[err];
                }
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << pairs << " pairs, 0 violations, error histogram";
    for (const auto& [e, c] : hist) d << " [" << e << "]=" << c;
    d << ", " << secs << " s (limit " << kC2Seconds << ")";
    return {secs < kC2Seconds, d.str()};
}

Outcome c3_corrections() {
    uint64_t worst_exact = 0, worst_one = 0, pairs = 0, window = 0;
    std::map<int64_t, uint64_t> one_hist;
    for (const auto& [name, g] : criterion2_graphs()) {
        const BruteApsp truth(g);
        const uint64_t w = g.node_count() / 2;
        window = w;
        for (uint32_t tau : {2u, 3u, 4u}) {
            const AdditiveLabeling l = build_additive(g, tau);
            const LabelSet exact_set(l, build_correction(g, l, CorrectionMode::exact));
            const LabelSet one_set(l, build_correction(g, l, CorrectionMode::one_additive));
            const std::string where = name + " tau=" + std::to_string(tau);
            for (node_t u = 0; u < g.node_count(); ++u)
                for (node_t v = 0; v < g.node_count(); ++v) {
                    ++pairs;
                    const uint32_t want = truth.delta(u, v);
                    const uint32_t got = exact_set.query(u, v);
                    if (got != want) return {false, fail_at(where + " corrected", u, v, want, got)};
                    const uint32_t one = one_set.query(u, v);
                    if ((want == kUnreachable) != (one == kUnreachable))
                        return {false, fail_at(where + " 1-additive", u, v, want, one)};
                    if (want == kUnreachable) continue;
                    const int64_t err = int64_t(one) - int64_t(want);
                    if (err != 0 && err != 1) return {false, fail_at(where + " 1-additive", u, v, want, one)};
                    ++one_hist[err];
                }
            const uint64_t be = exact_set.corrections->max_bits(), bo = one_set.corrections->max_bits();
            worst_exact = std::max(worst_exact, be);
            worst_one = std::max(worst_one, bo);
            if (double(be) > kTritBitsPerEntry * double(w))
                return {false, where + ": exact corrections use " + std::to_string(be) + " bits per node"};
            if (bo > w + kOneAdditiveSlack)
                return {false, where + ": 1-additive corrections use " + std::to_string(bo) + " bits per node"};
        }
    }
    std::ostringstream d;
    d << pairs << " pairs exact after correction, 1-additive errors";
    for (const auto& [e, c] : one_hist) d << " [" << e << "]=" << c;
    d << ", max payload " << worst_exact << " bits (exact, limit " << kTritBitsPerEntry * double(window)
      << ") and " << worst_one << " bits (1-additive, limit " << window + kOneAdditiveSlack << ")";
    return {true, d.str()};
}

Outcome c4_variation() {
    uint64_t checked = 0, worst_num = 0, worst_den = 1;
    for (const auto& [name, g0] : criterion1_graphs()) {
        const SplitResult sr = split_graph(g0);
        for (const Graph* g : {&g0, &sr.graph}) {
            const Naming nm = build_naming(*g);
            const uint64_t n = g->node_count();
            for (node_t u = 0; u < g->node_count(); ++u) {
                const uint64_t var = variation(*g, u, nm);
                ++checked;
                if (var * worst_den > worst_num * n) worst_num = var, worst_den = n;
                if (var > kVariationFactor * n)
                    return {false, name + ": node " + std::to_string(u) + " has variation " + std::to_string(var) +
                                       " above 2n = " + std::to_string(2 * n)};
            }
        }
    }
    std::ostringstream d;
    d << checked << " nodes on original and split graphs, max variation/n " << double(worst_num) / double(worst_den)
      << " (limit " << kVariationFactor << ")";
    return {true, d.str()};
}

Outcome c5_codec() {
    std::mt19937_64 rng(20240601);
    uint64_t exhaustive = 0, max_bits_seen = 0;
    double worst_ratio = 0;
    for (uint32_t i = 0; i < kCodecInstances; ++i) {
        const uint32_t n = i % 2 ? 1 + static_cast<uint32_t>(rng() % kCodecExhaustiveN)
                                 : 1 + static_cast<uint32_t>(rng() % kCodecMaxN);
        uint32_t k;
        switch (rng() % 4) {
            case 0: k = static_cast<uint32_t>(rng() % (n + 1)); break;
            case 1: k = static_cast<uint32_t>(rng() % std::min<uint32_t>(n + 1, 17)); break;
            case 2: k = n - static_cast<uint32_t>(rng() % std::min<uint32_t>(n + 1, 17)); break;
            default: k = static_cast<uint32_t>(rng() % (n / 8 + 1)); break;
        }
        const std::vector<HubEntry> entries = ref::random_hub_set(n, k, rng);
        const EncodedHubSet s = EncodedHubSet::encode(entries, n);
        BitWriter w;
        s.serialize(w);
        const BitBlob blob = w.take();
        BitReader r(blob);
        const EncodedHubSet back = EncodedHubSet::parse(r, n);
        if (r.remaining() != 0 || blob.size != s.bit_size())
            return {false, "instance " + std::to_string(i) + ": serialized length mismatch"};
        if (back.size() != k) return {false, "instance " + std::to_string(i) + ": size changed on roundtrip"};
        const std::vector<HubEntry> decoded = back.entries();
        for (size_t j = 0; j < k; ++j)
            if (decoded[j].name != entries[j].name || decoded[j].dist != entries[j].dist)
                return {false, "instance " + std::to_string(i) + ": entry " + std::to_string(j) + " changed"};
        max_bits_seen = std::max(max_bits_seen, s.bit_size());
        if (k == 0) {
            // 24 k log2(2 + n/k) is undefined at k = 0; the empty set is its 3-bit header
            if (s.bit_size() != 3) return {false, "empty set uses " + std::to_string(s.bit_size()) + " bits"};
        } else {
            const double bound = kCodecFactor * k * std::log2(2.0 + double(n) / k);
            worst_ratio = std::max(worst_ratio, double(s.bit_size()) / bound);
            if (double(s.bit_size()) > bound)
                return {false, "instance " + std::to_string(i) + " (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                                   "): " + std::to_string(s.bit_size()) + " bits above bound"};
        }
        if (n <= kCodecExhaustiveN) {
            ++exhaustive;
            for (uint32_t nm = 1; nm <= n; ++nm) {
                const auto it = std::lower_bound(entries.begin(), entries.end(), nm,
                                                 [](const HubEntry& e, uint32_t x) { return e.name < x; });
                const bool present = it != entries.end() && it->name == nm;
                const auto got = back.lookup(nm);
                if (present != got.has_value() || (present && *got != it->dist))
                    return {false, "instance " + std::to_string(i) + ": membership of name " + std::to_string(nm)};
            }
        }
    }
    std::ostringstream d;
    d << kCodecInstances << " roundtrips, " << exhaustive << " exhaustive membership sweeps, max size/bound "
      << worst_ratio << " (limit 1), empty sets 3 bits";
    return {true, d.str()};
}

Outcome c6_split() {
    std::ostringstream d;
    std::vector<Named> graphs;
    graphs.push_back({"er200m2000", gen::erdos_renyi(200, 2000, 1)});
    graphs.push_back({"star100", gen::star(100)});
    for (const auto& [name, g] : graphs) {
        const SplitResult sr = split_graph(g);
        const uint64_t n = g.node_count(), m = g.edge_count();
        const uint32_t cap = static_cast<uint32_t>((m + n - 1) / n + 2);
        if (sr.graph.max_degree() > cap)
            return {false, name + ": split degree " + std::to_string(sr.graph.max_degree()) + " above " + std::to_string(cap)};
        if (sr.graph.node_count() > kSplitNodeFactor * n)
            return {false, name + ": split graph has " + std::to_string(sr.graph.node_count()) + " nodes"};
        const bool warned = !sr.warnings.empty();
        if (warned != (sr.graph.node_count() > kSplitWarnFactor * n))
            return {false, name + ": node-count warning does not match the 2n threshold"};
        const BruteApsp a(g), b(sr.graph);
        for (node_t u = 0; u < n; ++u)
            for (node_t v = 0; v < n; ++v)
                if (a.delta(u, v) != b.delta(sr.fwd[u], sr.fwd[v]))
                    return {false, fail_at(name, u, v, a.delta(u, v), b.delta(sr.fwd[u], sr.fwd[v]))};
        d << name << ": " << n << " -> " << sr.graph.node_count() << " nodes, max degree " << sr.graph.max_degree()
          << " (cap " << cap << "); ";
    }
    d << "distances between representatives equal the original";
    return {true, d.str()};
}

Outcome c7_hub_bound() {
    uint64_t builds = 0;
    double worst = 0;
    for (const auto& [name, g] : criterion1_graphs()) {
        for (uint32_t t : criterion1_ts(g)) {
            const ExactLabeling l = build_exact_avg(g, t);
            ++builds;
            const uint64_t n = l.info.n_labeled, r = l.info.r_prime;
            uint64_t bound = n;
            if (r > 0) {
                uint64_t power = 1;
                for (uint64_t i = 0; i < r; ++i) power *= l.info.delta;
                bound = power + 1 + (n + r - 1) / r;
            }
            uint64_t max_hub = 0;
            for (const auto& lab : l.labels) max_hub = std::max<uint64_t>(max_hub, lab.hub_count());
            worst = std::max(worst, double(max_hub) / double(bound));
            if (max_hub > bound)
                return {false, name + " T=" + std::to_string(t) + ": max hub " + std::to_string(max_hub) + " above " +
                                   std::to_string(bound)};
        }
    }
    std::ostringstream d;
    d << builds << " builds, max |S(u)| / bound " << worst << " (limit 1)";
    return {true, d.str()};
}

Outcome c8_witnesses() {
    uint64_t exact_pairs = 0, additive_direct = 0, additive_dom = 0;
    for (const auto& [name, g0] : criterion1_graphs()) {
        for (uint32_t t : criterion1_ts(g0)) {
            const ExactLabeling l = build_exact_avg(g0, t);
            const uint32_t r = l.info.r_prime;
            if (r == 0) continue;
            const Graph g = labeled_graph(g0, l);
            const Naming nm = build_naming(g);
            const BruteApsp a(g);
            for (node_t u = 0; u < g.node_count(); ++u)
                for (node_t v = 0; v < g.node_count(); ++v) {
                    if (a.delta(u, v) == kUnreachable || a.hops(u, v) <= r) continue;
                    ++exact_pairs;
                    const ExactLabel &lu = l.labels[u], &lv = l.labels[v];
                    bool found = false;
                    for (const auto& e : lu.ball) {
                        const node_t w = nm.node_of(e.name);
                        if (a.hops(u, w) > r || e.dist != a.delta(u, w)) continue;
                        const auto dv = lv.layer.lookup(e.name);
                        if (!dv || *dv != a.delta(w, v)) continue;
                        if (a.delta(u, w) + a.delta(w, v) == a.delta(u, v)) {
                            found = true;
                            break;
                        }
                    }
                    if (!found) return {false, name + " T=" + std::to_string(t) + ": no ball/layer witness for " +
                                                   std::to_string(u) + ' ' + std::to_string(v)};
                }
        }
    }
    for (const auto& [name, g] : criterion2_graphs()) {
        const node_t n = g.node_count();
        const BruteApsp a(g);
        for (uint32_t tau : {2u, 3u, 4u}) {
            const AdditiveStructure st = additive_structure(g, tau);
            const AdditiveLabeling l = build_additive(g, tau);
            for (node_t u = 0; u < n; ++u) {
                const AdditiveLabel& lu = l.labels[u];
                std::vector<char> in_ball(n, 0);
                for (const auto& b : lu.ball) in_ball[st.naming.node_of(b.name)] = 1;
                for (node_t v = 0; v < n; ++v) {
                    if (u == v || a.delta(u, v) == kUnreachable) continue;
                    const AdditiveLabel& lv = l.labels[v];
                    std::vector<node_t> path{u};
                    while (path.back() != v) {
                        const node_t x = path.back();
                        for (const auto& arc : g.neighbors(x))
                            if (a.delta(arc.to, v) + arc.cost == a.delta(x, v) && a.hops(arc.to, v) + 1 == a.hops(x, v)) {
                                path.push_back(arc.to);
                                break;
                            }
                    }
                    bool covered = false;
                    for (node_t w : path)
                        if (in_ball[w] && (w == v || lv.layer.member(st.naming.name[w]))) covered = true;
                    if (covered) {
                        ++additive_direct;
                        continue;
                    }
                    const auto y = std::find_if(path.begin(), path.end(), [&](node_t w) { return !in_ball[w]; });
                    const bool ok = y != path.end() && st.in_vprime[*y] &&
                                    std::binary_search(lu.s_u.begin(), lu.s_u.end(),
                                                       st.naming.name[st.dominating.dom[*y]]);
                    if (!ok)
                        return {false, name + " tau=" + std::to_string(tau) + ": no witness for " + std::to_string(u) +
                                           ' ' + std::to_string(v)};
                    ++additive_dom;
                }
            }
        }
    }
    std::ostringstream d;
    d << exact_pairs << " exact pairs beyond r' with a ball/layer witness; additive pairs: " << additive_direct
      << " covered exactly, " << additive_dom << " through a dominator";
    return {true, d.str()};
}

Outcome c9_tradeoff() {
    const auto t0 = std::chrono::steady_clock::now();
    const Graph g = gen::random_regular(20000, 3, 1);
    SweepOptions o;
    o.queries = kC9Queries;
    o.seed = 1;
    o.verifier = [&](const DecodeFn& decode, VerifyMode mode) {
        VerifyReport rep;
        rep.mode = mode;
        std::mt19937_64 rng(7);
        for (uint32_t i = 0; i < kC9Sources; ++i) {
            const node_t s = static_cast<node_t>(rng() % g.node_count());
            const auto truth = ref::dijkstra_composite(g, s);
            for (uint32_t j = 0; j < kC9Targets; ++j) {
                const node_t t = static_cast<node_t>(rng() % g.node_count());
                rep.record(s, t, truth[t].delta, decode(s, t));
            }
        }
        return rep;
    };
    std::ostringstream csv, d;
    csv << kSweepCsvHeader << '\n';
    std::vector<SweepRow> rows;
    for (uint32_t t : {4u, 16u, 64u, 256u, 1024u}) {
        rows.push_back(sweep_row(g, "exact", t, o));
        write_csv_row(csv, rows.back());
    }
    const SweepRow full = sweep_row(g, "full", 0, o);
    write_csv_row(csv, full);
    std::fputs(csv.str().c_str(), stdout);

    bool pass = true;
    for (const auto& r : rows) {
        if (r.verification != "ok") {
            pass = false;
            d << "T=" << r.param << " verification " << r.verification << "; ";
        }
        const double cap = 8.0 * std::ceil(double(r.n) / r.r_prime) * std::log2(r.r_prime + 2.0);
        if (r.r_prime == 0 || double(r.max_layer_bits) > cap) {
            pass = false;
            d << "T=" << r.param << " layer bits " << r.max_layer_bits << " above " << cap << "; ";
        }
    }
    if (full.verification != "ok") pass = false, d << "full labels verification " << full.verification << "; ";
    const SweepRow &lo = rows.front(), &hi = rows.back();
    if (!(hi.max_label_bits < lo.max_label_bits)) pass = false, d << "max bits at T=1024 not below T=4; ";
    if (!(double(hi.max_label_bits) < kFullFraction * double(full.max_label_bits)))
        pass = false, d << "max bits at T=1024 not below " << kFullFraction << " of full labels; ";
    for (size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].ns_per_query > rows[i - 1].ns_per_query))
            pass = false, d << "query time does not grow from T=" << rows[i - 1].param << " to T=" << rows[i].param << "; ";
    if (!(hi.ns_per_query < kMaxQueryNs)) pass = false, d << "median query at T=1024 is " << hi.ns_per_query << " ns; ";
    const double secs = seconds_since(t0);
    if (secs >= kC9Seconds) pass = false, d << "took " << secs << " s; ";
    d << "max bits T=4 " << lo.max_label_bits << ", T=1024 " << hi.max_label_bits << ", full " << full.max_label_bits
      << " (ratio " << double(hi.max_label_bits) / double(full.max_label_bits) << ", limit " << kFullFraction
      << "); median ns";
    for (const auto& r : rows) d << ' ' << r.ns_per_query;
    d << " (limit " << kMaxQueryNs << " at T=1024); " << secs << " s (limit " << kC9Seconds << ")";
    return {pass, d.str()};
}

Outcome c10_determinism() {
    uint64_t configs = 0, bytes = 0;
    for (const auto& [name, g] : criterion1_graphs()) {
        for (uint32_t t : criterion1_ts(g)) {
            const auto a = save_to_bytes(LabelSet(build_exact_avg(g, t, 1)));
            const auto b = save_to_bytes(LabelSet(build_exact_avg(g, t, 2)));
            ++configs;
            bytes += a.size();
            if (a != b) return {false, name + " T=" + std::to_string(t) + ": containers differ"};
        }
    }
    std::ostringstream d;
    d << configs << " configurations built twice (1 and 2 threads), " << bytes << " bytes identical";
    return {true, d.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"exact-scheme correctness", c1_exact_correctness},
        {"2-additive soundness", c2_additive_soundness},
        {"correction conversions", c3_corrections},
        {"variation bound", c4_variation},
        {"hub-set codec", c5_codec},
        {"degree splitting", c6_split},
        {"hub-set size bound", c7_hub_bound},
        {"cover witnesses", c8_witnesses},
        {"measured tradeoff", c9_tradeoff},
        {"determinism", c10_determinism},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
