#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hublab/additive.hpp"
#include "hublab/bits.hpp"
#include "hublab/exact.hpp"
#include "hublab/label_common.hpp"

namespace hublab {

/// Reflected CRC-32 (polynomial 0xEDB88320), as used by zlib and PNG.
inline uint32_t crc32(const uint8_t* data, size_t len, uint32_t crc = 0) {
    static const std::array<uint32_t, 256> table = [] {
        std::array<uint32_t, 256> t{};
        for (uint32_t i = 0; i < 256; ++i) {
            uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    crc = ~crc;
    for (size_t i = 0; i < len; ++i) crc = table[(crc ^ data[i]) & 0xff] ^ (crc >> 8);
    return ~crc;
}

class LabelIoError : public std::runtime_error {
  public:
    enum class Code { io, bad_magic, version, truncated, checksum, malformed };

    LabelIoError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] Code code() const { return code_; }

  private:
    Code code_;
};

inline constexpr char kLabelMagic[8] = {'H', 'U', 'B', 'L', 'A', 'B', 'E', 'L'};
inline constexpr uint32_t kLabelFormatVersion = 1;
inline constexpr size_t kLabelHeaderBytes = 64;

/// A labeling of any scheme, as stored on disk.
struct LabelSet {
    BuildInfo info;
    std::vector<node_t> fwd;
    std::vector<ExactLabel> exact;         // schemes exact and full
    std::vector<AdditiveLabel> additive;   // the additive schemes
    std::optional<CorrectionSet> corrections;

    LabelSet() = default;

    explicit LabelSet(const ExactLabeling& l) : info(l.info), fwd(l.fwd), exact(l.labels) {}

    explicit LabelSet(const AdditiveLabeling& l) : info(l.info), fwd(l.fwd), additive(l.labels) {}

    LabelSet(const AdditiveLabeling& l, CorrectionSet c) : LabelSet(l) {
        info.scheme = c.mode == CorrectionMode::exact ? Scheme::additive_exact : Scheme::additive_one;
        corrections = std::move(c);
    }

    [[nodiscard]] bool is_exact_family() const { return info.scheme == Scheme::exact || info.scheme == Scheme::full; }
    [[nodiscard]] size_t size() const { return is_exact_family() ? exact.size() : additive.size(); }

    /// Decoded distance between original nodes u and v under the stored scheme.
    [[nodiscard]] uint32_t query(node_t u, node_t v, DecodeCounter* counter = nullptr) const {
        const node_t a = fwd.at(u), b = fwd.at(v);
        switch (info.scheme) {
            case Scheme::exact:
            case Scheme::full: return decode_exact(exact.at(a), exact.at(b), counter);
            case Scheme::additive: return decode_additive(additive.at(a), additive.at(b), counter);
            case Scheme::additive_exact: return decode_exact_via_correction(additive.at(a), additive.at(b), *corrections);
            case Scheme::additive_one: return decode_1additive(additive.at(a), additive.at(b), *corrections);
        }
        throw std::logic_error("unknown scheme");
    }

    [[nodiscard]] BitBlob label_blob(node_t labeled) const {
        return is_exact_family() ? exact.at(labeled).serialize() : additive.at(labeled).serialize();
    }

    /// Exact bit length of every label (without container overhead).
    [[nodiscard]] std::vector<uint64_t> label_bits() const {
        std::vector<uint64_t> out;
        out.reserve(size());
        if (is_exact_family())
            for (const auto& l : exact) out.push_back(l.bit_size());
        else
            for (const auto& l : additive) out.push_back(l.bit_size());
        return out;
    }
};

/// Throws MismatchError if the labels were not built for `g`.
inline void check_graph(const LabelSet& s, const Graph& g) {
    if (s.info.graph_hash != g.hash() || s.info.n_original != g.node_count())
        throw MismatchError("labels were built for a different graph");
}

namespace detail {

class ByteWriter {
  public:
    void u8(uint8_t x) { bytes.push_back(x); }
    void u32(uint32_t x) {
        for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<uint8_t>(x >> (8 * i)));
    }
    void u64(uint64_t x) {
        for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<uint8_t>(x >> (8 * i)));
    }
    std::vector<uint8_t> bytes;
};

class ByteReader {
  public:
    ByteReader(const uint8_t* data, size_t size) : data_(data), size_(size) {}
    uint8_t u8() { return static_cast<uint8_t>(take(1)); }
    uint32_t u32() { return static_cast<uint32_t>(take(4)); }
    uint64_t u64() { return take(8); }
    [[nodiscard]] size_t remaining() const { return size_ - pos_; }

  private:
    uint64_t take(size_t n) {
        if (size_ - pos_ < n) throw LabelIoError(LabelIoError::Code::malformed, "payload ends inside a field");
        uint64_t x = 0;
        for (size_t i = 0; i < n; ++i) x |= uint64_t(data_[pos_ + i]) << (8 * i);
        pos_ += n;
        return x;
    }
    const uint8_t* data_;
    size_t size_;
    size_t pos_ = 0;
};

inline bool has_corrections(Scheme s) { return s == Scheme::additive_exact || s == Scheme::additive_one; }

}  // namespace detail

/// Serializes to the container format described in docs/label_format.md.
inline std::vector<uint8_t> save_to_bytes(const LabelSet& s) {
    const size_t count = s.size();
    if (count != s.info.n_labeled) throw std::invalid_argument("label count differs from n_labeled");
    if (s.fwd.size() != s.info.n_original) throw std::invalid_argument("forward map size differs from n_original");
    const bool corr = detail::has_corrections(s.info.scheme);
    if (corr && (!s.corrections || s.corrections->tables.size() != count))
        throw std::invalid_argument("correction tables missing or incomplete");

    BitWriter stream;
    std::vector<std::pair<uint64_t, uint64_t>> label_dir, corr_dir;
    for (node_t i = 0; i < count; ++i) {
        const BitBlob b = s.label_blob(i);
        label_dir.emplace_back(stream.size(), b.size);
        stream.append(b);
    }
    if (corr)
        for (const auto& t : s.corrections->tables) {
            corr_dir.emplace_back(stream.size(), t.bit_size());
            stream.append(t.blob());
        }
    const BitBlob all = stream.take();

    detail::ByteWriter payload;
    for (node_t f : s.fwd) payload.u32(f);
    for (const auto& [off, len] : label_dir) {
        payload.u64(off);
        payload.u64(len);
    }
    for (const auto& [off, len] : corr_dir) {
        payload.u64(off);
        payload.u64(len);
    }
    payload.u64(all.words.size());
    for (uint64_t w : all.words) payload.u64(w);

    detail::ByteWriter out;
    for (char c : kLabelMagic) out.u8(static_cast<uint8_t>(c));
    out.u32(kLabelFormatVersion);
    out.u8(static_cast<uint8_t>(s.info.scheme));
    out.u8(0);
    out.u8(0);
    out.u8(0);
    out.u64(s.info.graph_hash);
    out.u64(payload.bytes.size());
    out.u32(s.info.build_id);
    out.u32(s.info.n_original);
    out.u32(s.info.n_labeled);
    out.u32(s.info.param_requested);
    out.u32(s.info.param_effective);
    out.u32(s.info.r_prime);
    out.u32(s.info.delta);
    out.u32(crc32(payload.bytes.data(), payload.bytes.size()));
    out.bytes.insert(out.bytes.end(), payload.bytes.begin(), payload.bytes.end());
    return out.bytes;
}

inline LabelSet load_from_bytes(const std::vector<uint8_t>& bytes) {
    using Code = LabelIoError::Code;
    if (bytes.size() < sizeof(kLabelMagic)) throw LabelIoError(Code::truncated, "file shorter than its magic");
    if (std::memcmp(bytes.data(), kLabelMagic, sizeof(kLabelMagic)) != 0)
        throw LabelIoError(Code::bad_magic, "not a label container (bad magic)");
    if (bytes.size() < kLabelHeaderBytes) throw LabelIoError(Code::truncated, "file shorter than its header");

    detail::ByteReader h(bytes.data() + 8, kLabelHeaderBytes - 8);
    const uint32_t version = h.u32();
    if (version != kLabelFormatVersion)
        throw LabelIoError(Code::version, "unsupported container version " + std::to_string(version));
    LabelSet s;
    const uint8_t scheme = h.u8();
    if (scheme > static_cast<uint8_t>(Scheme::additive_one))
        throw LabelIoError(Code::malformed, "unknown scheme tag " + std::to_string(scheme));
    s.info.scheme = static_cast<Scheme>(scheme);
    h.u8();
    h.u8();
    h.u8();
    s.info.graph_hash = h.u64();
    const uint64_t payload_bytes = h.u64();
    s.info.build_id = h.u32();
    s.info.n_original = h.u32();
    s.info.n_labeled = h.u32();
    s.info.param_requested = h.u32();
    s.info.param_effective = h.u32();
    s.info.r_prime = h.u32();
    s.info.delta = h.u32();
    const uint32_t crc = h.u32();

    const size_t have = bytes.size() - kLabelHeaderBytes;
    if (have < payload_bytes)
        throw LabelIoError(Code::truncated, "payload truncated: expected " + std::to_string(payload_bytes) +
                                                " bytes, found " + std::to_string(have));
    if (have > payload_bytes) throw LabelIoError(Code::malformed, "trailing bytes after the payload");
    const uint8_t* payload = bytes.data() + kLabelHeaderBytes;
    if (crc32(payload, payload_bytes) != crc) throw LabelIoError(Code::checksum, "payload checksum mismatch");
    if (make_build_id(s.info) != s.info.build_id) throw LabelIoError(Code::malformed, "build id does not match header");

    try {
        detail::ByteReader p(payload, payload_bytes);
        const uint32_t n = s.info.n_labeled;
        s.fwd.resize(s.info.n_original);
        for (auto& f : s.fwd) {
            f = p.u32();
            if (f >= n) throw LabelIoError(Code::malformed, "forward map points outside the labels");
        }
        std::vector<std::pair<uint64_t, uint64_t>> label_dir(n), corr_dir;
        for (auto& [off, len] : label_dir) off = p.u64(), len = p.u64();
        const bool corr = detail::has_corrections(s.info.scheme);
        if (corr) {
            corr_dir.resize(n);
            for (auto& [off, len] : corr_dir) off = p.u64(), len = p.u64();
        }
        const uint64_t words = p.u64();
        if (words != p.remaining() / 8 || p.remaining() % 8 != 0)
            throw LabelIoError(Code::malformed, "word count does not match the payload");
        BitBlob all;
        all.words.resize(words);
        for (auto& w : all.words) w = p.u64();
        all.size = words * 64;

        auto slice = [&](uint64_t off, uint64_t len) {
            if (off > all.size || len > all.size - off) throw LabelIoError(Code::malformed, "blob outside the stream");
            BitReader r(all, off);
            return r.read_blob(len);
        };
        if (s.is_exact_family()) {
            s.exact.reserve(n);
            for (const auto& [off, len] : label_dir) s.exact.push_back(ExactLabel::parse(slice(off, len)));
            for (const auto& l : s.exact)
                if (l.build_id != s.info.build_id || l.n != n) throw LabelIoError(Code::malformed, "label from another build");
        } else {
            s.additive.reserve(n);
            for (const auto& [off, len] : label_dir) s.additive.push_back(AdditiveLabel::parse(slice(off, len)));
            for (const auto& l : s.additive)
                if (l.build_id != s.info.build_id || l.n != n) throw LabelIoError(Code::malformed, "label from another build");
        }
        if (corr) {
            CorrectionSet c;
            c.mode = s.info.scheme == Scheme::additive_exact ? CorrectionMode::exact : CorrectionMode::one_additive;
            c.build_id = s.info.build_id;
            c.n = n;
            for (const auto& [off, len] : corr_dir)
                c.tables.push_back(CorrectionTable::from_blob(slice(off, len), correction_window(n), c.mode));
            s.corrections = std::move(c);
        }
    } catch (const DecodeError& e) {
        throw LabelIoError(Code::malformed, std::string("label data: ") + e.what());
    }
    return s;
}

inline void save(const LabelSet& s, const std::string& path) {
    const auto bytes = save_to_bytes(s);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw LabelIoError(LabelIoError::Code::io, "cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw LabelIoError(LabelIoError::Code::io, "write to " + path + " failed");
}

inline LabelSet load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LabelIoError(LabelIoError::Code::io, "cannot open " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_from_bytes(bytes);
}

struct LabelSetStats {
    uint64_t labels = 0;
    uint64_t total_label_bits = 0;
    uint64_t max_label_bits = 0;
    double avg_label_bits = 0;
    uint64_t max_hub = 0;
    double avg_hub = 0;
    uint64_t correction_bits_max = 0;
};

inline LabelSetStats stats(const LabelSet& s) {
    LabelSetStats st;
    st.labels = s.size();
    double hubs = 0;
    for (uint64_t b : s.label_bits()) {
        st.total_label_bits += b;
        st.max_label_bits = std::max(st.max_label_bits, b);
    }
    if (s.is_exact_family())
        for (const auto& l : s.exact) {
            st.max_hub = std::max(st.max_hub, l.hub_count());
            hubs += double(l.hub_count());
        }
    else
        for (const auto& l : s.additive) {
            st.max_hub = std::max(st.max_hub, l.hub_count());
            hubs += double(l.hub_count());
        }
    if (st.labels > 0) {
        st.avg_label_bits = double(st.total_label_bits) / double(st.labels);
        st.avg_hub = hubs / double(st.labels);
    }
    if (s.corrections) st.correction_bits_max = s.corrections->max_bits();
    return st;
}

}  // namespace hublab
