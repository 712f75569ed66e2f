// Binary wire format for compressed streams.
//
// Header (30 bytes): magic "PLA1", algo u8 (1=PointBound, 2=SegmentBound,
// 3=PLAZA), connected u8 (1 iff algo=3), epsilon f64 LE, count u64 LE,
// start_index u64 LE. Payload: disconnected streams store (index u64, value
// f64) twice per segment; connected streams store both endpoints of the first
// segment and one (index, value) per subsequent segment. All little-endian.
// Indices are absolute stream positions, so a receiver can reconstruct any
// suffix without history.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pla/core.hpp"

namespace pla {

enum class Algo : std::uint8_t { pointbound = 1, segmentbound = 2, plaza = 3 };

struct SegmentFileHeader {
    Algo algo = Algo::pointbound;
    bool connected = false;
    double epsilon = 0.0;
    std::uint64_t count = 0;
    std::uint64_t start_index = 0;
};

class DecodeError : public std::runtime_error {
   public:
    enum class Code { bad_magic, truncated, algo_connected_mismatch, bad_algo };

    DecodeError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

   private:
    Code code_;
};

// Whole-value codec. encode derives the algo byte from the stream (connected
// -> plaza, seg_err -> segmentbound, else pointbound) and requires
// non-negative indices. decode throws DecodeError with the matching code.
std::vector<std::uint8_t> encode(const PlaStream& pla);
PlaStream decode(const std::vector<std::uint8_t>& bytes);

// Streaming writer: emits the header with count = 0, appends segments as they
// arrive, and patches the count on finalize (requires a seekable stream).
class SegmentWriter {
   public:
    SegmentWriter(std::ostream& out, Algo algo, double epsilon, std::uint64_t start_index);
    void add(const Segment& s);
    void finalize();
    std::uint64_t count() const { return count_; }

   private:
    std::ostream& out_;
    bool connected_;
    std::uint64_t count_ = 0;
    bool first_ = true;
    bool finalized_ = false;
};

// Streaming reader mirroring SegmentWriter. next() returns segments in order
// and nothing after the last one; malformed input throws DecodeError.
class SegmentReader {
   public:
    explicit SegmentReader(std::istream& in);
    const SegmentFileHeader& header() const { return header_; }
    std::optional<Segment> next();

   private:
    std::istream& in_;
    SegmentFileHeader header_;
    std::uint64_t read_ = 0;
    Segment prev_{};
};

}  // namespace pla
