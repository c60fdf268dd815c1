#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hublab {

/// Raised when a bit stream ends early or carries an impossible value.
class DecodeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Growable bit buffer. Bit i lives in words[i / 64] at position i % 64 (LSB-first).
struct BitBlob {
    std::vector<uint64_t> words;
    uint64_t size = 0;

    [[nodiscard]] bool bit(uint64_t pos) const { return (words[pos >> 6] >> (pos & 63)) & 1; }

    bool operator==(const BitBlob& other) const = default;
};

namespace bits {

inline constexpr uint64_t low_mask(unsigned width) {
    return width >= 64 ? ~uint64_t(0) : (uint64_t(1) << width) - 1;
}

/// Reads `width` (<= 64) bits starting at `pos`; the range must lie inside the buffer.
inline uint64_t get(const uint64_t* words, uint64_t pos, unsigned width) {
    if (width == 0) return 0;
    const uint64_t idx = pos >> 6;
    const unsigned shift = pos & 63;
    uint64_t value = words[idx] >> shift;
    if (shift + width > 64) value |= words[idx + 1] << (64 - shift);
    return value & low_mask(width);
}

inline void put(uint64_t* words, uint64_t pos, unsigned width, uint64_t value) {
    if (width == 0) return;
    value &= low_mask(width);
    const uint64_t idx = pos >> 6;
    const unsigned shift = pos & 63;
    words[idx] |= value << shift;
    if (shift + width > 64) words[idx + 1] |= value >> (64 - shift);
}

/// Position of the r-th (0-based) set bit of `word`. Requires popcount(word) > r.
inline unsigned select_in_word(uint64_t word, unsigned r) {
    for (unsigned i = 0; i < r; ++i) word &= word - 1;
    return static_cast<unsigned>(std::countr_zero(word));
}

/// Number of bits of the Elias gamma code of x >= 1.
inline constexpr unsigned gamma_length(uint64_t x) { return 2 * (std::bit_width(x) - 1) + 1; }

}  // namespace bits

class BitWriter {
  public:
    BitWriter() = default;

    void write(uint64_t value, unsigned width) {
        reserve(width);
        bits::put(blob_.words.data(), blob_.size, width, value);
        blob_.size += width;
    }

    void write_bit(bool b) { write(b ? 1 : 0, 1); }

    void write_zeros(uint64_t count) {
        reserve(count);
        blob_.size += count;
    }

    /// Elias gamma: floor(log2 x) zeros, then x in binary, most significant bit first.
    void write_gamma(uint64_t x) {
        if (x == 0) throw std::invalid_argument("gamma code needs a positive integer");
        const unsigned len = std::bit_width(x);
        write_zeros(len - 1);
        uint64_t reversed = 0;
        for (unsigned i = 0; i < len; ++i) reversed |= ((x >> i) & 1) << (len - 1 - i);
        write(reversed, len);
    }

    void append(const BitBlob& other) {
        uint64_t pos = 0;
        while (pos < other.size) {
            const unsigned chunk = static_cast<unsigned>(std::min<uint64_t>(64, other.size - pos));
            write(bits::get(other.words.data(), pos, chunk), chunk);
            pos += chunk;
        }
    }

    [[nodiscard]] uint64_t size() const { return blob_.size; }
    [[nodiscard]] const BitBlob& blob() const { return blob_; }
    BitBlob take() {
        blob_.words.resize((blob_.size + 63) >> 6);
        return std::move(blob_);
    }

  private:
    void reserve(uint64_t extra) {
        const uint64_t need = ((blob_.size + extra + 63) >> 6) + 1;
        if (blob_.words.size() < need) blob_.words.resize(std::max(need, blob_.words.size() * 2), 0);
    }

    BitBlob blob_;
};

class BitReader {
  public:
    explicit BitReader(const BitBlob& blob, uint64_t pos = 0) : blob_(&blob), pos_(pos) {}

    uint64_t read(unsigned width) {
        require(width);
        const uint64_t v = width == 0 ? 0 : get_padded(pos_, width);
        pos_ += width;
        return v;
    }

    bool read_bit() { return read(1) != 0; }

    uint64_t read_gamma() {
        unsigned zeros = 0;
        while (true) {
            require(1);
            if (blob_->bit(pos_)) break;
            ++pos_;
            if (++zeros > 63) throw DecodeError("gamma code longer than 64 bits");
        }
        const uint64_t reversed = read(zeros + 1);
        uint64_t x = 0;
        for (unsigned i = 0; i <= zeros; ++i) x |= ((reversed >> i) & 1) << (zeros - i);
        return x;
    }

    /// Copies the next `count` bits into a fresh blob.
    BitBlob read_blob(uint64_t count) {
        require(count);
        BitWriter w;
        uint64_t left = count;
        while (left > 0) {
            const unsigned chunk = static_cast<unsigned>(std::min<uint64_t>(64, left));
            w.write(get_padded(pos_, chunk), chunk);
            pos_ += chunk;
            left -= chunk;
        }
        return w.take();
    }

    [[nodiscard]] uint64_t position() const { return pos_; }
    [[nodiscard]] uint64_t remaining() const { return blob_->size - pos_; }

  private:
    void require(uint64_t width) const {
        if (width > blob_->size || pos_ > blob_->size - width)
            throw DecodeError("read past end of bit stream at bit " + std::to_string(pos_));
    }

    uint64_t get_padded(uint64_t pos, unsigned width) const {
        const uint64_t idx = pos >> 6;
        const unsigned shift = pos & 63;
        uint64_t value = blob_->words[idx] >> shift;
        if (shift + width > 64) value |= blob_->words[idx + 1] << (64 - shift);
        return value & bits::low_mask(width);
    }

    const BitBlob* blob_;
    uint64_t pos_;
};

inline BitBlob gamma_encode(std::span<const uint64_t> values) {
    BitWriter w;
    for (uint64_t v : values) w.write_gamma(v);
    return w.take();
}

inline std::vector<uint64_t> gamma_decode(const BitBlob& blob, size_t count) {
    BitReader r(blob);
    std::vector<uint64_t> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) out.push_back(r.read_gamma());
    return out;
}

/// 0 -> 1, -1 -> 2, 1 -> 3, -2 -> 4, ...
inline constexpr uint64_t zigzag(int64_t x) {
    return (static_cast<uint64_t>(x) << 1 ^ static_cast<uint64_t>(x >> 63)) + 1;
}

inline constexpr int64_t unzigzag(uint64_t z) {
    const uint64_t u = z - 1;
    return static_cast<int64_t>(u >> 1) ^ -static_cast<int64_t>(u & 1);
}

/// Renders the blob as a string of '0'/'1' in stream order.
inline std::string to_bit_string(const BitBlob& blob) {
    std::string s;
    s.reserve(blob.size);
    for (uint64_t i = 0; i < blob.size; ++i) s.push_back(blob.bit(i) ? '1' : '0');
    return s;
}

}  // namespace hublab
