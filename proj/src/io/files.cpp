#include "polyvis/io/files.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "polyvis/format.hpp"

namespace polyvis::io {

namespace {

// Whitespace-separated tokens of the next non-empty line, comments stripped.
class LineReader {
public:
    explicit LineReader(std::istream &in) : in_(in) {}

    bool Next(std::vector<std::string> &tokens) {
        std::string line;
        while (std::getline(in_, line)) {
            ++number_;
            if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
            tokens.clear();
            std::istringstream ss(line);
            for (std::string t; ss >> t;) tokens.push_back(t);
            if (!tokens.empty()) return true;
        }
        return false;
    }
    [[nodiscard]] int line() const { return number_; }

private:
    std::istream &in_;
    int number_ = 0;
};

double ParseNumber(const std::string &s, int line) {
    double v = 0.0;
    const char *end = s.data() + s.size();
    auto r = std::from_chars(s.data(), end, v);
    if (r.ec == std::errc::result_out_of_range) throw FormatError(line, "number out of range: " + s);
    if (r.ec != std::errc() || r.ptr != end) throw FormatError(line, "not a number: " + s);
    if (!std::isfinite(v)) throw FormatError(line, "non-finite number: " + s);
    return v;
}

long long ParseInteger(const std::string &s, int line) {
    long long v = 0;
    const char *end = s.data() + s.size();
    auto r = std::from_chars(s.data(), end, v);
    if (r.ec != std::errc() || r.ptr != end) throw FormatError(line, "not an integer: " + s);
    return v;
}

void ExpectHeader(LineReader &lr, const char *tag) {
    std::vector<std::string> tok;
    if (!lr.Next(tok)) throw FormatError(0, std::string("empty file, expected '") + tag + " v1'");
    if (tok.size() != 2 || tok[0] != tag) throw FormatError(lr.line(), std::string("expected '") + tag + " v1'");
    if (tok[1] != "v1") throw FormatError(lr.line(), "unsupported version " + tok[1]);
}

std::ifstream OpenIn(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

std::ofstream OpenOut(const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

void Close(std::ofstream &out, const std::string &path) {
    out.close();
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace

std::vector<Ring> ParseMap(std::istream &in) {
    LineReader lr(in);
    ExpectHeader(lr, "MAP");
    std::vector<Ring> rings;
    std::vector<std::string> tok;
    while (lr.Next(tok)) {
        if (tok[0] != "RING" || tok.size() != 2) throw FormatError(lr.line(), "expected 'RING <count>'");
        const int header = lr.line();
        long long n = ParseInteger(tok[1], header);
        if (n < 0) throw FormatError(header, "negative vertex count");
        Ring ring;
        for (long long i = 0; i < n; ++i) {
            if (!lr.Next(tok))
                throw FormatError(header, "ring declares " + std::to_string(n) + " vertices but the file ends after " +
                                              std::to_string(i));
            if (tok[0] == "RING")
                throw FormatError(lr.line(), "ring declared at line " + std::to_string(header) + " has " +
                                                 std::to_string(i) + " of " + std::to_string(n) + " vertices");
            if (tok.size() != 2) throw FormatError(lr.line(), "expected '<x> <y>'");
            ring.push_back({ParseNumber(tok[0], lr.line()), ParseNumber(tok[1], lr.line())});
        }
        rings.push_back(std::move(ring));
    }
    return rings;
}

std::vector<Ring> ReadMapFile(const std::string &path) {
    auto in = OpenIn(path);
    return ParseMap(in);
}

Environment LoadMap(const std::string &path, NormalizeReport *report) {
    return ValidateAndNormalize(ReadMapFile(path), report);
}

void WriteMap(std::ostream &out, const Environment &env) {
    out << "MAP v1\n";
    for (std::size_t r = 0; r < env.ring_count(); ++r) {
        const Ring &ring = env.ring(r);
        out << "RING " << ring.size() << '\n';
        for (Point p : ring) out << FormatDouble(p.x) << ' ' << FormatDouble(p.y) << '\n';
    }
}

void SaveMap(const Environment &env, const std::string &path) {
    auto out = OpenOut(path);
    WriteMap(out, env);
    Close(out, path);
}

harness::QueryPointSet ParsePoints(std::istream &in) {
    LineReader lr(in);
    ExpectHeader(lr, "POINTS");
    harness::QueryPointSet set;
    std::vector<std::string> tok;
    while (lr.Next(tok)) {
        if (tok[0] == "KIND" && tok.size() == 2) {
            auto k = harness::ParseSetKind(tok[1]);
            if (!k) throw FormatError(lr.line(), "unknown set kind " + tok[1]);
            set.kind = *k;
        } else if (tok[0] == "SEED" && tok.size() == 2) {
            set.seed = static_cast<std::uint64_t>(ParseInteger(tok[1], lr.line()));
        } else if (tok.size() == 2 || tok.size() == 4) {
            harness::QueryPoint q;
            q.p = {ParseNumber(tok[0], lr.line()), ParseNumber(tok[1], lr.line())};
            if (tok.size() == 4) {
                q.source = static_cast<std::int32_t>(ParseInteger(tok[2], lr.line()));
                q.sigma = ParseNumber(tok[3], lr.line());
            }
            set.points.push_back(q);
        } else {
            throw FormatError(lr.line(), "expected '<x> <y>' or '<x> <y> <source> <sigma>'");
        }
    }
    return set;
}

harness::QueryPointSet LoadPoints(const std::string &path) {
    auto in = OpenIn(path);
    return ParsePoints(in);
}

void WritePoints(std::ostream &out, const harness::QueryPointSet &set) {
    out << "POINTS v1\nKIND " << harness::ToString(set.kind) << "\nSEED " << set.seed << '\n';
    for (const harness::QueryPoint &q : set.points)
        out << FormatDouble(q.p.x) << ' ' << FormatDouble(q.p.y) << ' ' << q.source << ' ' << FormatDouble(q.sigma)
            << '\n';
}

void SavePoints(const harness::QueryPointSet &set, const std::string &path) {
    auto out = OpenOut(path);
    WritePoints(out, set);
    Close(out, path);
}

} // namespace polyvis::io
