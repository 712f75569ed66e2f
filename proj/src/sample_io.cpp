#include "pla/sample_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace pla {

SampleReader::SampleReader(std::istream& in, SampleFormat format)
    : in_(in), format_(format) {}

std::optional<double> SampleReader::next() {
    if (format_ == SampleFormat::pcm16) {
        unsigned char b[2];
        in_.read(reinterpret_cast<char*>(b), 2);
        std::streamsize got = in_.gcount();
        if (got == 0) return std::nullopt;
        if (got != 2) throw std::invalid_argument("pcm16: odd byte count");
        int v = b[0] | (b[1] << 8);
        if (v >= 32768) v -= 65536;
        return static_cast<double>(v) / 32768.0;
    }
    std::string line;
    if (!std::getline(in_, line)) return std::nullopt;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty())  // a skipped line would silently shift every later index
        throw std::invalid_argument("csv: blank line at line " + std::to_string(line_));
    const char* s = line.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    while (end && *end == ' ') ++end;
    if (end == s || !end || *end != '\0')
        throw std::invalid_argument("csv: malformed value at line " + std::to_string(line_));
    if (!std::isfinite(v))
        throw std::invalid_argument("csv: non-finite value at line " + std::to_string(line_));
    return v;
}

SampleWriter::SampleWriter(std::ostream& out, SampleFormat format)
    : out_(out), format_(format) {}

void SampleWriter::write(double value) {
    if (format_ == SampleFormat::pcm16) {
        long v = std::lrint(value * 32768.0);
        if (v < -32768) v = -32768;
        if (v > 32767) v = 32767;
        unsigned u = static_cast<unsigned>(v & 0xffff);
        char b[2] = {static_cast<char>(u & 0xff), static_cast<char>((u >> 8) & 0xff)};
        out_.write(b, 2);
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g\n", value);
    out_ << buf;
}

}  // namespace pla
