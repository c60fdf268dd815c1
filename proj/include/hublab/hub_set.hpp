#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hublab/bits.hpp"
#include "hublab/monotone_seq.hpp"

namespace hublab {

/// A hub (by preorder name) and the distance to it.
struct HubEntry {
    uint32_t name;
    uint32_t dist;

    bool operator==(const HubEntry&) const = default;
};

/// Upper bound on the encoded size of a hub set of k names over n nodes whose
/// distance sequence has total variation at most 2n. The empty set costs its
/// flag, count and width header of three bits.
inline double hub_set_size_bound(uint64_t k, uint64_t n) {
    if (k == 0) return 3.0;
    return 24.0 * static_cast<double>(k) * std::log2(2.0 + static_cast<double>(n) / static_cast<double>(k));
}

/// Hub set with distances, stored as sorted names plus the distance sequence
/// split into its rising (B+) and falling (B-) parts.
///
/// B+ receives 0^eta 1 for every step eta >= 0 of the distance sequence and a
/// lone 1 otherwise; B- mirrors it for negative steps. Both are kept as the
/// monotone sequences of their one-positions, so the distance of the i-th hub
/// is base + zeros-before-one(i) in B+ minus the same count in B-.
///
/// Sets of at most kExplicitMax hubs use a plain fixed-width pair list.
///
/// Layout: flag(1) gamma(k+1), then either
///   explicit:  gamma(dist_width+1), k x [name: bit_width(n), dist: dist_width]
///   succinct:  gamma(base+1), names MonotoneSeq(k, n),
///              gamma(U+ + 1), B+ MonotoneSeq(k-1, U+), gamma(U- + 1), B- MonotoneSeq(k-1, U-)
class EncodedHubSet {
  public:
    static constexpr size_t kExplicitMax = 8;

    EncodedHubSet() = default;

    /// `entries` must be sorted by strictly increasing name in [1, n].
    static EncodedHubSet encode(std::span<const HubEntry> entries, uint32_t n) {
        EncodedHubSet s;
        s.n_ = n;
        s.k_ = entries.size();
        uint64_t variation = 0;
        for (size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].name == 0 || entries[i].name > n)
                throw std::invalid_argument("hub name " + std::to_string(entries[i].name) + " outside [1, n]");
            if (i > 0) {
                if (entries[i].name == entries[i - 1].name) throw std::invalid_argument("duplicate hub name");
                if (entries[i].name < entries[i - 1].name) throw std::invalid_argument("hub names are not sorted");
                const int64_t step = int64_t(entries[i].dist) - int64_t(entries[i - 1].dist);
                variation += static_cast<uint64_t>(step < 0 ? -step : step);
            }
        }

        if (entries.size() <= kExplicitMax) {
            s.succinct_ = false;
            s.plain_.assign(entries.begin(), entries.end());
            uint32_t max_dist = 0;
            for (const auto& e : entries) max_dist = std::max(max_dist, e.dist);
            s.dist_width_ = std::bit_width(max_dist);
        } else {
            s.succinct_ = true;
            s.base_ = entries[0].dist;
            std::vector<uint64_t> names, plus, minus;
            names.reserve(entries.size());
            plus.reserve(entries.size() - 1);
            minus.reserve(entries.size() - 1);
            uint64_t rise = 0, fall = 0;
            for (size_t i = 0; i < entries.size(); ++i) {
                names.push_back(entries[i].name);
                if (i == 0) continue;
                const int64_t step = int64_t(entries[i].dist) - int64_t(entries[i - 1].dist);
                if (step >= 0)
                    rise += static_cast<uint64_t>(step);
                else
                    fall += static_cast<uint64_t>(-step);
                plus.push_back(rise + (i - 1));
                minus.push_back(fall + (i - 1));
            }
            s.names_ = MonotoneSeq(names, n);
            s.plus_ = MonotoneSeq(plus, plus.back());
            s.minus_ = MonotoneSeq(minus, minus.back());
        }

        if (variation <= 2 * uint64_t(n) && s.k_ > 0 && double(s.bit_size()) > hub_set_size_bound(s.k_, n))
            throw std::logic_error("encoded hub set of " + std::to_string(s.k_) + " entries uses " +
                                   std::to_string(s.bit_size()) + " bits, above its size bound");
        return s;
    }

    [[nodiscard]] size_t size() const { return k_; }
    [[nodiscard]] bool empty() const { return k_ == 0; }
    [[nodiscard]] uint32_t universe() const { return n_; }
    [[nodiscard]] bool succinct() const { return succinct_; }

    /// Index of `name` in the set.
    [[nodiscard]] std::optional<size_t> member(uint32_t name) const {
        if (!succinct_) {
            for (size_t i = 0; i < plain_.size(); ++i)
                if (plain_[i].name == name) return i;
            return std::nullopt;
        }
        const auto idx = names_.find(name);
        if (!idx) return std::nullopt;
        return static_cast<size_t>(*idx);
    }

    [[nodiscard]] uint32_t name(size_t i) const {
        return succinct_ ? static_cast<uint32_t>(names_.access(i)) : plain_[i].name;
    }

    [[nodiscard]] uint32_t dist(size_t i) const {
        if (!succinct_) return plain_[i].dist;
        if (i == 0) return base_;
        const uint64_t rise = plus_.access(i - 1) - (i - 1);
        const uint64_t fall = minus_.access(i - 1) - (i - 1);
        return static_cast<uint32_t>(base_ + rise - fall);
    }

    /// Distance stored for `name`, if present.
    [[nodiscard]] std::optional<uint32_t> lookup(uint32_t name) const {
        const auto i = member(name);
        if (!i) return std::nullopt;
        return dist(*i);
    }

    /// Calls fn(name, dist) in name order.
    template <class Fn>
    void for_each(Fn&& fn) const {
        if (!succinct_) {
            for (const auto& e : plain_) fn(e.name, e.dist);
            return;
        }
        std::vector<uint64_t> plus, minus;
        plus.reserve(k_);
        minus.reserve(k_);
        plus_.for_each([&](uint64_t v) { plus.push_back(v); });
        minus_.for_each([&](uint64_t v) { minus.push_back(v); });
        size_t i = 0;
        names_.for_each([&](uint64_t nm) {
            uint32_t d = base_;
            if (i > 0) d = static_cast<uint32_t>(base_ + (plus[i - 1] - (i - 1)) - (minus[i - 1] - (i - 1)));
            fn(static_cast<uint32_t>(nm), d);
            ++i;
        });
    }

    [[nodiscard]] std::vector<HubEntry> entries() const {
        std::vector<HubEntry> out;
        out.reserve(k_);
        for_each([&](uint32_t nm, uint32_t d) { out.push_back({nm, d}); });
        return out;
    }

    [[nodiscard]] uint64_t bit_size() const {
        const uint64_t head = 1 + bits::gamma_length(k_ + 1);
        if (!succinct_)
            return head + bits::gamma_length(dist_width_ + 1) + k_ * (std::bit_width(n_) + dist_width_);
        return head + bits::gamma_length(uint64_t(base_) + 1) + names_.bit_size() +
               bits::gamma_length(plus_.universe() + 1) + plus_.bit_size() +
               bits::gamma_length(minus_.universe() + 1) + minus_.bit_size();
    }

    void serialize(BitWriter& out) const {
        out.write_bit(succinct_);
        out.write_gamma(k_ + 1);
        if (!succinct_) {
            const unsigned name_width = std::bit_width(n_);
            out.write_gamma(dist_width_ + 1);
            for (const auto& e : plain_) {
                out.write(e.name, name_width);
                out.write(e.dist, dist_width_);
            }
            return;
        }
        out.write_gamma(uint64_t(base_) + 1);
        names_.serialize(out);
        out.write_gamma(plus_.universe() + 1);
        plus_.serialize(out);
        out.write_gamma(minus_.universe() + 1);
        minus_.serialize(out);
    }

    static EncodedHubSet parse(BitReader& in, uint32_t n) {
        EncodedHubSet s;
        s.n_ = n;
        s.succinct_ = in.read_bit();
        const uint64_t k = in.read_gamma() - 1;
        if (k > n) throw DecodeError("hub set larger than its universe");
        s.k_ = k;
        if (!s.succinct_) {
            if (k > kExplicitMax) throw DecodeError("explicit hub set above the explicit size limit");
            const unsigned name_width = std::bit_width(n);
            s.dist_width_ = static_cast<unsigned>(in.read_gamma() - 1);
            if (s.dist_width_ > 32) throw DecodeError("hub distance width above 32 bits");
            s.plain_.resize(k);
            for (auto& e : s.plain_) {
                e.name = static_cast<uint32_t>(in.read(name_width));
                e.dist = static_cast<uint32_t>(in.read(s.dist_width_));
            }
            return s;
        }
        if (k <= kExplicitMax) throw DecodeError("succinct hub set below the explicit size limit");
        s.base_ = static_cast<uint32_t>(in.read_gamma() - 1);
        s.names_ = MonotoneSeq::parse(in, k, n);
        const uint64_t plus_universe = in.read_gamma() - 1;
        s.plus_ = MonotoneSeq::parse(in, k - 1, plus_universe);
        const uint64_t minus_universe = in.read_gamma() - 1;
        s.minus_ = MonotoneSeq::parse(in, k - 1, minus_universe);
        return s;
    }

    /// One-positions of B+ and B- (empty for explicit sets).
    [[nodiscard]] std::vector<uint64_t> rising_ones() const { return collect(plus_); }
    [[nodiscard]] std::vector<uint64_t> falling_ones() const { return collect(minus_); }

    bool operator==(const EncodedHubSet& other) const = default;

  private:
    static std::vector<uint64_t> collect(const MonotoneSeq& seq) {
        std::vector<uint64_t> out;
        seq.for_each([&](uint64_t v) { out.push_back(v); });
        return out;
    }

    bool succinct_ = false;
    uint64_t k_ = 0;
    uint32_t n_ = 0;
    unsigned dist_width_ = 0;
    std::vector<HubEntry> plain_;
    uint32_t base_ = 0;
    MonotoneSeq names_;
    MonotoneSeq plus_;
    MonotoneSeq minus_;
};

}  // namespace hublab
