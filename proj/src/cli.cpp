#include "pla/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pla/codec.hpp"
#include "pla/core.hpp"
#include "pla/oracle.hpp"
#include "pla/plaza.hpp"
#include "pla/pointbound.hpp"
#include "pla/sample_io.hpp"
#include "pla/segmentbound.hpp"

namespace pla {
namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SampleFormat parse_format(const std::string& f) {
    return f == "pcm16" ? SampleFormat::pcm16 : SampleFormat::csv;
}

struct StreamingQuality {
    long long n = 0;
    long long segment_count = 0;
    long long endpoint_count = 0;
    double distortion = 0.0;
    double max_abs_error = 0.0;
    double max_segment_sse = 0.0;
};

// Lockstep walk of the original samples and the segment records: the same
// numbers core::quality produces, without ever materializing either side.
StreamingQuality streaming_quality(SampleReader& samples, SegmentReader& segs) {
    StreamingQuality q;
    const bool connected = segs.header().connected;
    auto fetch = [&]() {
        auto s = segs.next();
        if (s) {
            ++q.segment_count;
            if (connected)
                q.endpoint_count += (q.segment_count == 1 ? 1 : 0) + (s->degenerate() ? 0 : 1);
            else
                q.endpoint_count += s->degenerate() ? 1 : 2;
        }
        return s;
    };
    std::optional<Segment> cur = fetch();
    double cur_sse = 0.0;
    double sumsq = 0.0;
    long long k = static_cast<long long>(segs.header().start_index);
    while (auto v = samples.next()) {
        ++q.n;
        while (cur && cur->j < k) {
            // leaving a segment: its SSE is final (a shared endpoint was
            // charged to it, not to its successor)
            q.max_segment_sse = std::max(q.max_segment_sse, cur_sse);
            cur_sse = 0.0;
            cur = fetch();
        }
        if (!cur || cur->i > k)
            throw std::runtime_error("segment file does not cover sample " + std::to_string(k));
        double d = *v - cur->value_at(k);
        sumsq += d * d;
        cur_sse += d * d;
        q.max_abs_error = std::max(q.max_abs_error, std::abs(d));
        ++k;
    }
    if (cur) {
        if (cur->j >= k)
            throw std::runtime_error("segment file covers indices past the original");
        q.max_segment_sse = std::max(q.max_segment_sse, cur_sse);
        if (fetch()) throw std::runtime_error("segment file covers indices past the original");
    }
    if (q.n > 0) q.distortion = sumsq / static_cast<double>(q.n);
    return q;
}

void print_quality(std::ostream& out, const StreamingQuality& q, double seconds) {
    double ratio =
        q.n > 0 ? static_cast<double>(q.endpoint_count) / static_cast<double>(q.n) : 0.0;
    out << "n\t" << q.n << "\n";
    out << "segments\t" << q.segment_count << "\n";
    out << "endpoints\t" << q.endpoint_count << "\n";
    out << "sample_reduction_ratio\t" << fmt(ratio) << "\n";
    out << "distortion\t" << fmt(q.distortion) << "\n";
    out << "max_abs_error\t" << fmt(q.max_abs_error) << "\n";
    out << "max_segment_sse\t" << fmt(q.max_segment_sse) << "\n";
    char sec[32];
    std::snprintf(sec, sizeof sec, "%.6f", seconds);
    out << "seconds\t" << sec << "\n";
}

int do_compress(const std::string& algo, double eps, const std::string& format,
                const std::string& input, const std::string& output, std::ostream& out) {
    Algo a = algo == "pointbound" ? Algo::pointbound
             : algo == "segmentbound" ? Algo::segmentbound
                                      : Algo::plaza;
    if (a != Algo::segmentbound && !(eps > 0.0)) {
        std::cerr << "error: epsilon must be > 0 for " << algo << "\n";
        return 1;
    }
    if (!(eps >= 0.0)) {
        std::cerr << "error: epsilon must be >= 0\n";
        return 1;
    }
    auto t0 = std::chrono::steady_clock::now();
    {
        std::ifstream in(input, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot open " << input << "\n";
            return 1;
        }
        std::ofstream segout(output, std::ios::binary | std::ios::trunc);
        if (!segout) {
            std::cerr << "error: cannot open " << output << " for writing\n";
            return 1;
        }
        SampleReader reader(in, parse_format(format));
        SegmentWriter writer(segout, a, eps, 0);
        auto drive = [&](auto machine) {
            while (auto v = reader.next())
                if (auto s = machine.push(*v)) writer.add(*s);
            if (auto s = machine.flush()) writer.add(*s);
        };
        if (a == Algo::pointbound)
            drive(PointBound(eps, 0));
        else if (a == Algo::segmentbound)
            drive(SegmentBound(eps, 0));
        else
            drive(Plaza(eps, 0));
        writer.finalize();
        if (!segout) {
            std::cerr << "error: failed writing " << output << "\n";
            return 1;
        }
    }
    // second pass for the report; keeps the compress pass itself single-stream
    std::ifstream in(input, std::ios::binary);
    std::ifstream segin(output, std::ios::binary);
    SampleReader reader(in, parse_format(format));
    SegmentReader segs(segin);
    StreamingQuality q = streaming_quality(reader, segs);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    print_quality(out, q, seconds);
    return 0;
}

int do_decompress(const std::string& input, const std::string& output,
                  const std::string& format) {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << input << "\n";
        return 1;
    }
    SegmentReader segs(in);
    std::ofstream o(output, std::ios::binary | std::ios::trunc);
    if (!o) {
        std::cerr << "error: cannot open " << output << " for writing\n";
        return 1;
    }
    SampleWriter w(o, parse_format(format));
    bool any = false;
    long long done = 0;
    while (auto s = segs.next()) {
        long long from = any ? std::max(s->i, done + 1) : s->i;
        for (long long k = from; k <= s->j; ++k) w.write(s->value_at(k));
        done = s->j;
        any = true;
    }
    if (!o) {
        std::cerr << "error: failed writing " << output << "\n";
        return 1;
    }
    return 0;
}

int do_stats(const std::string& original, const std::string& segfile,
             const std::string& format, std::ostream& out) {
    auto t0 = std::chrono::steady_clock::now();
    std::ifstream in(original, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << original << "\n";
        return 1;
    }
    std::ifstream segin(segfile, std::ios::binary);
    if (!segin) {
        std::cerr << "error: cannot open " << segfile << "\n";
        return 1;
    }
    SampleReader reader(in, parse_format(format));
    SegmentReader segs(segin);
    StreamingQuality q = streaming_quality(reader, segs);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    print_quality(out, q, seconds);
    return 0;
}

int do_oracle(const std::string& input, double eps, const std::string& kind,
              const std::string& format, std::ostream& out) {
    long long cap = kind == "plaza" ? 24 : 256;
    std::ifstream in(input, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << input << "\n";
        return 1;
    }
    SampleReader reader(in, parse_format(format));
    TimeSeries x;
    x.start_index = 0;
    while (auto v = reader.next()) {
        x.samples.push_back(*v);
        if (x.size() > cap) {
            std::cerr << "error: oracle cap is " << cap << " samples for kind " << kind << "\n";
            return 1;
        }
    }
    if (x.size() == 0) {
        std::cerr << "error: empty input\n";
        return 1;
    }
    int count;
    if (kind == "maxerr")
        count = oracle::dp_min_segments(x, eps, ErrorKind::max_err);
    else if (kind == "segerr")
        count = oracle::dp_min_segments(x, eps, ErrorKind::seg_err);
    else
        count = oracle::plaza_benchmark(x, eps);
    out << count << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"error-bounded piecewise linear stream compression"};
    app.require_subcommand(1);

    std::string algo, format = "csv", input, output, original, segfile, kind;
    double epsilon = 0.0;

    auto* c = app.add_subcommand("compress", "compress a sample stream into a segment file");
    c->add_option("--algo", algo, "pointbound, segmentbound, or plaza")
        ->required()
        ->check(CLI::IsMember({"pointbound", "segmentbound", "plaza"}));
    c->add_option("--epsilon", epsilon, "error bound")->required();
    c->add_option("--format", format, "sample format (csv or pcm16)")
        ->check(CLI::IsMember({"csv", "pcm16"}));
    c->add_option("--input", input, "sample file")->required();
    c->add_option("--output", output, "segment file to write")->required();

    auto* d = app.add_subcommand("decompress", "reconstruct samples from a segment file");
    d->add_option("--input", input, "segment file")->required();
    d->add_option("--output", output, "sample file to write")->required();
    d->add_option("--format", format, "sample format (csv or pcm16)")
        ->check(CLI::IsMember({"csv", "pcm16"}));

    auto* s = app.add_subcommand("stats", "recompute quality of a segment file against the original");
    s->add_option("--original", original, "original sample file")->required();
    s->add_option("--segfile", segfile, "segment file")->required();
    s->add_option("--format", format, "original sample format (csv or pcm16)")
        ->check(CLI::IsMember({"csv", "pcm16"}));

    auto* o = app.add_subcommand("oracle", "brute-force minimum segment count (desk scale)");
    o->add_option("--input", input, "sample file")->required();
    o->add_option("--epsilon", epsilon, "error bound")->required();
    o->add_option("--kind", kind, "maxerr, segerr, or plaza")
        ->required()
        ->check(CLI::IsMember({"maxerr", "segerr", "plaza"}));
    o->add_option("--format", format, "sample format (csv or pcm16)")
        ->check(CLI::IsMember({"csv", "pcm16"}));

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("pla");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, std::cerr);
    }

    try {
        if (c->parsed()) return do_compress(algo, epsilon, format, input, output, out);
        if (d->parsed()) return do_decompress(input, output, format);
        if (s->parsed()) return do_stats(original, segfile, format, out);
        if (o->parsed()) return do_oracle(input, epsilon, kind, format, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace pla
