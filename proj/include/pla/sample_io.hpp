// Streaming sample ingestion and output.
//
// CSV: one decimal or scientific value per line; blank lines are errors, not
// skips (a silently skipped line would shift every later index). PCM16:
// signed 16-bit little-endian, normalized to [-1, 1) by division by 32768;
// written back by rounding to the nearest representable sample.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace pla {

enum class SampleFormat { csv, pcm16 };

class SampleReader {
   public:
    SampleReader(std::istream& in, SampleFormat format);

    // Next sample, or nothing at end of input. Throws std::invalid_argument
    // on malformed content (blank line, trailing garbage, odd byte count).
    std::optional<double> next();

    // Samples buffered between calls; bounded by construction (at most one
    // line / one 2-byte frame).
    std::size_t peak_buffered() const { return 1; }

   private:
    std::istream& in_;
    SampleFormat format_;
    long long line_ = 0;
};

class SampleWriter {
   public:
    SampleWriter(std::ostream& out, SampleFormat format);
    void write(double value);

   private:
    std::ostream& out_;
    SampleFormat format_;
};

}  // namespace pla
