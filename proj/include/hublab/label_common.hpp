#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "hublab/bits.hpp"
#include "hublab/graph.hpp"
#include "hublab/hub_set.hpp"

namespace hublab {

enum class Scheme : uint8_t {
    exact = 0,
    full = 1,
    additive = 2,
    additive_exact = 3,  // 2-additive labels plus trit corrections
    additive_one = 4,    // 2-additive labels plus 1-additive bit corrections
};

inline const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::exact: return "exact";
        case Scheme::full: return "full";
        case Scheme::additive: return "additive";
        case Scheme::additive_exact: return "additive+exact";
        case Scheme::additive_one: return "additive+1";
    }
    return "unknown";
}

/// Parameters shared by every label of one build.
struct BuildInfo {
    Scheme scheme = Scheme::exact;
    uint64_t graph_hash = 0;
    uint32_t build_id = 0;
    uint32_t n_original = 0;
    uint32_t n_labeled = 0;
    uint32_t param_requested = 0;  // T or tau as asked for
    uint32_t param_effective = 0;  // after clamping
    uint32_t r_prime = 0;
    uint32_t delta = 0;            // degree bound the radius was derived from

    bool operator==(const BuildInfo&) const = default;
};

/// 32-bit FNV-1a over the fields that determine label contents. Correction
/// variants share the id of their underlying additive labels.
inline uint32_t make_build_id(const BuildInfo& info) {
    uint32_t h = 0x811c9dc5u;
    auto mix = [&](uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= static_cast<uint32_t>((x >> (8 * i)) & 0xff);
            h *= 0x01000193u;
        }
    };
    const Scheme base = info.scheme == Scheme::additive_exact || info.scheme == Scheme::additive_one
                            ? Scheme::additive
                            : info.scheme;
    mix(info.graph_hash);
    mix(static_cast<uint64_t>(base));
    mix(info.n_labeled);
    mix(info.param_effective);
    mix(info.r_prime);
    mix(info.delta);
    return h;
}

/// Labels from different builds, or for graphs of different sizes.
class MismatchError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Counts membership and lookup operations performed by a decoder.
struct DecodeCounter {
    uint64_t probes = 0;
};

namespace detail {

/// Explicit ball: gamma(count+1) gamma(dist_width+1), then fixed-width (name, dist) pairs.
inline void write_ball(BitWriter& out, std::span<const HubEntry> ball, uint32_t n) {
    uint32_t max_dist = 0;
    for (const auto& e : ball) max_dist = std::max(max_dist, e.dist);
    const unsigned dw = std::bit_width(max_dist);
    const unsigned nw = std::bit_width(n);
    out.write_gamma(ball.size() + 1);
    out.write_gamma(dw + 1);
    for (const auto& e : ball) {
        out.write(e.name, nw);
        out.write(e.dist, dw);
    }
}

inline uint64_t ball_bits(std::span<const HubEntry> ball, uint32_t n) {
    uint32_t max_dist = 0;
    for (const auto& e : ball) max_dist = std::max(max_dist, e.dist);
    const unsigned dw = std::bit_width(max_dist);
    return bits::gamma_length(ball.size() + 1) + bits::gamma_length(dw + 1) + ball.size() * (std::bit_width(n) + dw);
}

inline std::vector<HubEntry> read_ball(BitReader& in, uint32_t n) {
    const uint64_t count = in.read_gamma() - 1;
    if (count > n) throw DecodeError("ball larger than the graph");
    const unsigned dw = static_cast<unsigned>(in.read_gamma() - 1);
    if (dw > 32) throw DecodeError("ball distance width above 32 bits");
    const unsigned nw = std::bit_width(n);
    std::vector<HubEntry> ball(count);
    for (auto& e : ball) {
        e.name = static_cast<uint32_t>(in.read(nw));
        e.dist = static_cast<uint32_t>(in.read(dw));
    }
    for (size_t i = 1; i < ball.size(); ++i)
        if (ball[i].name <= ball[i - 1].name) throw DecodeError("ball names are not increasing");
    return ball;
}

inline const HubEntry* find_in_ball(std::span<const HubEntry> ball, uint32_t name) {
    const auto it = std::lower_bound(ball.begin(), ball.end(), name,
                                     [](const HubEntry& e, uint32_t x) { return e.name < x; });
    if (it == ball.end() || it->name != name) return nullptr;
    return &*it;
}

}  // namespace detail

}  // namespace hublab
