#include "pla/codec.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>

namespace pla {
namespace {

constexpr char kMagic[4] = {'P', 'L', 'A', '1'};
constexpr std::streamoff kCountOffset = 14;  // magic + algo + connected + epsilon

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int k = 0; k < 8; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(p[k]) << (8 * k);
    return v;
}

double get_f64(const std::uint8_t* p) { return std::bit_cast<double>(get_u64(p)); }

std::uint64_t index_bits(long long i) {
    if (i < 0) throw std::invalid_argument("codec: negative segment index");
    return static_cast<std::uint64_t>(i);
}

Algo stream_algo(const PlaStream& pla) {
    if (pla.connected) return Algo::plaza;
    return pla.error_kind == ErrorKind::seg_err ? Algo::segmentbound : Algo::pointbound;
}

void write_bytes(std::ostream& out, const std::vector<std::uint8_t>& bytes) {
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void header_bytes(std::vector<std::uint8_t>& out, Algo algo, bool connected, double epsilon,
                  std::uint64_t count, std::uint64_t start_index) {
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(static_cast<std::uint8_t>(algo));
    out.push_back(connected ? 1 : 0);
    put_f64(out, epsilon);
    put_u64(out, count);
    put_u64(out, start_index);
}

SegmentFileHeader parse_header(const std::uint8_t* p, std::size_t size) {
    if (size < 4 || !std::equal(kMagic, kMagic + 4, p))
        throw DecodeError(DecodeError::Code::bad_magic, "decode: bad magic");
    if (size < 30) throw DecodeError(DecodeError::Code::truncated, "decode: truncated header");
    std::uint8_t algo = p[4], connected = p[5];
    if (algo < 1 || algo > 3)
        throw DecodeError(DecodeError::Code::bad_algo, "decode: unknown algo byte");
    if (connected > 1 || (connected == 1) != (algo == 3))
        throw DecodeError(DecodeError::Code::algo_connected_mismatch,
                          "decode: connected flag does not match algo");
    SegmentFileHeader h;
    h.algo = static_cast<Algo>(algo);
    h.connected = connected == 1;
    h.epsilon = get_f64(p + 6);
    h.count = get_u64(p + 14);
    h.start_index = get_u64(p + 22);
    return h;
}

}  // namespace

std::vector<std::uint8_t> encode(const PlaStream& pla) {
    Algo algo = stream_algo(pla);
    std::vector<std::uint8_t> out;
    std::uint64_t start =
        pla.segments.empty() ? 0 : index_bits(pla.segments.front().i);
    header_bytes(out, algo, pla.connected, pla.epsilon, pla.segments.size(), start);
    bool first = true;
    for (const auto& s : pla.segments) {
        if (!pla.connected || first) {
            put_u64(out, index_bits(s.i));
            put_f64(out, s.y_i);
        }
        put_u64(out, index_bits(s.j));
        put_f64(out, s.y_j);
        first = false;
    }
    return out;
}

PlaStream decode(const std::vector<std::uint8_t>& bytes) {
    SegmentFileHeader h = parse_header(bytes.data(), bytes.size());
    std::size_t expect = 30;
    if (h.connected)
        expect += h.count == 0 ? 0 : 32 + (h.count - 1) * 16;
    else
        expect += h.count * 32;
    if (bytes.size() != expect)
        throw DecodeError(DecodeError::Code::truncated, "decode: payload size mismatch");

    PlaStream pla;
    pla.connected = h.connected;
    pla.epsilon = h.epsilon;
    pla.error_kind = h.algo == Algo::segmentbound ? ErrorKind::seg_err : ErrorKind::max_err;
    pla.segments.reserve(h.count);
    const std::uint8_t* p = bytes.data() + 30;
    for (std::uint64_t k = 0; k < h.count; ++k) {
        Segment s;
        if (!h.connected || k == 0) {
            s.i = static_cast<long long>(get_u64(p));
            s.y_i = get_f64(p + 8);
            p += 16;
        } else {
            s.i = pla.segments.back().j;
            s.y_i = pla.segments.back().y_j;
        }
        s.j = static_cast<long long>(get_u64(p));
        s.y_j = get_f64(p + 8);
        p += 16;
        pla.segments.push_back(s);
    }
    return pla;
}

SegmentWriter::SegmentWriter(std::ostream& out, Algo algo, double epsilon,
                             std::uint64_t start_index)
    : out_(out), connected_(algo == Algo::plaza) {
    std::vector<std::uint8_t> h;
    header_bytes(h, algo, connected_, epsilon, 0, start_index);
    write_bytes(out_, h);
}

void SegmentWriter::add(const Segment& s) {
    std::vector<std::uint8_t> rec;
    if (!connected_ || first_) {
        put_u64(rec, index_bits(s.i));
        put_f64(rec, s.y_i);
    }
    put_u64(rec, index_bits(s.j));
    put_f64(rec, s.y_j);
    write_bytes(out_, rec);
    first_ = false;
    ++count_;
}

void SegmentWriter::finalize() {
    if (finalized_) return;
    std::vector<std::uint8_t> c;
    put_u64(c, count_);
    out_.seekp(kCountOffset);
    write_bytes(out_, c);
    out_.seekp(0, std::ios_base::end);
    out_.flush();
    finalized_ = true;
}

SegmentReader::SegmentReader(std::istream& in) : in_(in) {
    std::uint8_t buf[30];
    in_.read(reinterpret_cast<char*>(buf), 30);
    header_ = parse_header(buf, static_cast<std::size_t>(in_.gcount()));
}

std::optional<Segment> SegmentReader::next() {
    if (read_ == header_.count) return std::nullopt;
    bool shortrec = header_.connected && read_ > 0;
    std::uint8_t buf[32];
    std::streamsize want = shortrec ? 16 : 32;
    in_.read(reinterpret_cast<char*>(buf), want);
    if (in_.gcount() != want)
        throw DecodeError(DecodeError::Code::truncated, "decode: truncated segment record");
    Segment s;
    const std::uint8_t* p = buf;
    if (shortrec) {
        s.i = prev_.j;
        s.y_i = prev_.y_j;
    } else {
        s.i = static_cast<long long>(get_u64(p));
        s.y_i = get_f64(p + 8);
        p += 16;
    }
    s.j = static_cast<long long>(get_u64(p));
    s.y_j = get_f64(p + 8);
    prev_ = s;
    ++read_;
    return s;
}

}  // namespace pla
