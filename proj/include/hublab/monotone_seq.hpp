#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hublab/bits.hpp"

namespace hublab {

/// Non-decreasing integer sequence in [0, U] stored with the high/low split
/// (Elias-Fano). The low `l` bits of every value are packed verbatim; the high
/// parts are written in unary as one bit per value plus a zero per bucket.
/// Sampled select directories every kSampleRate ones and zeros give access in
/// O(1) word scans and rank as a bucket jump plus a short in-bucket scan.
///
/// Serialized layout (count and universe are supplied by the enclosing record):
///   low bits   k * l
///   high bits  k + buckets
///   select1    floor((k - 1) / 128) positions, sample_width bits each
///   select0    floor((buckets - 1) / 128) positions, sample_width bits each
/// An empty sequence occupies zero bits.
class MonotoneSeq {
  public:
    static constexpr uint64_t kSampleRate = 128;

    MonotoneSeq() = default;

    MonotoneSeq(std::span<const uint64_t> values, uint64_t universe) : k_(values.size()), universe_(universe) {
        for (size_t i = 0; i < values.size(); ++i) {
            if (values[i] > universe) throw std::invalid_argument("monotone sequence value exceeds universe");
            if (i > 0 && values[i] < values[i - 1]) throw std::invalid_argument("monotone sequence input is unsorted");
        }
        derive_layout();
        if (k_ == 0) return;

        words_.assign(high_off_ + words_for(high_size_), 0);
        const uint64_t mask = bits::low_mask(low_width_);
        for (uint64_t i = 0; i < k_; ++i) {
            bits::put(words_.data(), i * low_width_, low_width_, values[i] & mask);
            const uint64_t pos = (values[i] >> low_width_) + i;
            words_[high_off_ + (pos >> 6)] |= uint64_t(1) << (pos & 63);
        }
        build_samples();
    }

    [[nodiscard]] uint64_t size() const { return k_; }
    [[nodiscard]] bool empty() const { return k_ == 0; }
    [[nodiscard]] uint64_t universe() const { return universe_; }

    [[nodiscard]] uint64_t bit_size() const {
        if (k_ == 0) return 0;
        return k_ * low_width_ + high_size_ + (ones_count() + zeros_count()) * sample_width_;
    }

    [[nodiscard]] uint64_t access(uint64_t i) const {
        const uint64_t p = select1(i);
        return ((p - i) << low_width_) | low(i);
    }

    /// Number of stored values strictly smaller than x.
    [[nodiscard]] uint64_t rank(uint64_t x) const { return scan(x).index; }

    /// Index of the first stored value equal to x.
    [[nodiscard]] std::optional<uint64_t> find(uint64_t x) const {
        const auto s = scan(x);
        if (!s.found) return std::nullopt;
        return s.index;
    }

    /// Calls fn(value) for every element in order, O(k + buckets).
    template <class Fn>
    void for_each(Fn&& fn) const {
        uint64_t idx = 0;
        for (uint64_t wi = 0; wi < words_for(high_size_) && idx < k_; ++wi) {
            uint64_t w = high(wi);
            while (w != 0) {
                const uint64_t p = wi * 64 + std::countr_zero(w);
                fn(((p - idx) << low_width_) | low(idx));
                ++idx;
                w &= w - 1;
            }
        }
    }

    void serialize(BitWriter& out) const {
        if (k_ == 0) return;
        write_words(out, words_.data(), k_ * low_width_);
        write_words(out, words_.data() + high_off_, high_size_);
        for (uint64_t j = 0; j < ones_count() + zeros_count(); ++j) out.write(words_[ones_off_ + j], sample_width_);
    }

    static MonotoneSeq parse(BitReader& in, uint64_t count, uint64_t universe) {
        MonotoneSeq seq;
        seq.k_ = count;
        seq.universe_ = universe;
        seq.derive_layout();
        if (count == 0) return seq;
        const auto low = in.read_blob(count * seq.low_width_).words;
        const auto high = in.read_blob(seq.high_size_).words;
        uint64_t ones = 0;
        for (uint64_t w : high) ones += std::popcount(w);
        if (ones != count) throw DecodeError("monotone sequence high bits do not match its count");
        seq.words_.assign(seq.high_off_, 0);
        std::copy(low.begin(), low.end(), seq.words_.begin());
        seq.words_.insert(seq.words_.end(), high.begin(), high.end());
        std::vector<uint64_t> stored(seq.ones_count() + seq.zeros_count());
        for (auto& s : stored) s = in.read(seq.sample_width_);
        seq.build_samples();
        if (!std::equal(stored.begin(), stored.end(), seq.words_.begin() + seq.ones_off_))
            throw DecodeError("monotone sequence select directory is inconsistent");
        return seq;
    }

    bool operator==(const MonotoneSeq& other) const = default;

  private:
    struct ScanResult {
        uint64_t index;
        bool found;
    };

    static uint64_t words_for(uint64_t nbits) { return (nbits + 63) >> 6; }

    static void write_words(BitWriter& out, const uint64_t* words, uint64_t nbits) {
        for (uint64_t pos = 0; pos < nbits; pos += 64) {
            const unsigned chunk = static_cast<unsigned>(std::min<uint64_t>(64, nbits - pos));
            out.write(words[pos >> 6], chunk);
        }
    }

    [[nodiscard]] uint64_t ones_count() const { return k_ == 0 ? 0 : (k_ - 1) / kSampleRate; }
    [[nodiscard]] uint64_t zeros_count() const { return k_ == 0 ? 0 : (buckets_ - 1) / kSampleRate; }
    [[nodiscard]] uint64_t high(uint64_t wi) const { return words_[high_off_ + wi]; }

    void derive_layout() {
        low_width_ = 0;
        if (k_ > 0 && universe_ / k_ >= 1) low_width_ = std::bit_width(universe_ / k_) - 1;
        buckets_ = (universe_ >> low_width_) + 1;
        high_size_ = k_ + buckets_;
        sample_width_ = std::bit_width(high_size_);
        high_off_ = words_for(k_ * low_width_);
        ones_off_ = high_off_ + words_for(high_size_);
        zeros_off_ = ones_off_ + ones_count();
    }

    /// Appends the select directories after the high bits.
    void build_samples() {
        words_.resize(ones_off_);
        std::vector<uint64_t> zeros_samples;
        uint64_t ones = 0, zeros = 0;
        for (uint64_t p = 0; p < high_size_; ++p) {
            if (high_bit(p)) {
                if (ones > 0 && ones % kSampleRate == 0) words_.push_back(p);
                ++ones;
            } else {
                if (zeros > 0 && zeros % kSampleRate == 0) zeros_samples.push_back(p);
                ++zeros;
            }
        }
        words_.insert(words_.end(), zeros_samples.begin(), zeros_samples.end());
    }

    [[nodiscard]] uint64_t low(uint64_t i) const { return bits::get(words_.data(), i * low_width_, low_width_); }

    [[nodiscard]] bool high_bit(uint64_t p) const { return (high(p >> 6) >> (p & 63)) & 1; }

    /// Position of the r-th set (or clear) bit of the high part at or after `from`.
    template <bool Ones>
    [[nodiscard]] uint64_t select_from(uint64_t from, uint64_t r) const {
        uint64_t idx = from >> 6;
        uint64_t w = (Ones ? high(idx) : ~high(idx)) & (~uint64_t(0) << (from & 63));
        while (true) {
            const uint64_t c = std::popcount(w);
            if (r < c) return idx * 64 + bits::select_in_word(w, static_cast<unsigned>(r));
            r -= c;
            ++idx;
            w = Ones ? high(idx) : ~high(idx);
        }
    }

    [[nodiscard]] uint64_t select1(uint64_t i) const {
        const uint64_t j = i / kSampleRate;
        const uint64_t from = j == 0 ? 0 : words_[ones_off_ + j - 1];
        return select_from<true>(from, i - j * kSampleRate);
    }

    [[nodiscard]] uint64_t select0(uint64_t i) const {
        const uint64_t j = i / kSampleRate;
        const uint64_t from = j == 0 ? 0 : words_[zeros_off_ + j - 1];
        return select_from<false>(from, i - j * kSampleRate);
    }

    [[nodiscard]] ScanResult scan(uint64_t x) const {
        if (k_ == 0) return {0, false};
        const uint64_t bucket = x >> low_width_;
        if (bucket >= buckets_) return {k_, false};
        uint64_t p = bucket == 0 ? 0 : select0(bucket - 1) + 1;
        uint64_t idx = p - bucket;
        const uint64_t target = x & bits::low_mask(low_width_);
        while (p < high_size_ && high_bit(p)) {
            const uint64_t lo = low(idx);
            if (lo >= target) return {idx, lo == target};
            ++p;
            ++idx;
        }
        return {idx, false};
    }

    uint64_t k_ = 0;
    uint64_t universe_ = 0;
    unsigned low_width_ = 0;
    uint64_t buckets_ = 1;
    uint64_t high_size_ = 0;
    unsigned sample_width_ = 0;
    uint64_t high_off_ = 0;   // word offsets into words_
    uint64_t ones_off_ = 0;
    uint64_t zeros_off_ = 0;
    std::vector<uint64_t> words_;  // low bits, high bits, select1 samples, select0 samples
};

}  // namespace hublab
