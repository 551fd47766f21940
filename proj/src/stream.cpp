#include "sks/stream.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sks {

DenseMatrix StreamData::to_dense() const {
    if (!turnstile) return rows;
    DenseMatrix a(n, d);
    for (const auto& u : updates) a[u.i][u.j] += u.delta;
    return a;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

long long parse_int(const std::string& tok, int line, const char* what) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(tok.c_str(), &end, 10);
    if (errno != 0 || end == tok.c_str() || *end != '\0')
        throw StreamParseError(line, std::string(what) + " must be an integer, got '" + tok + "'");
    return v;
}

double parse_real(const std::string& tok, int line, const char* what) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (errno != 0 || end == tok.c_str() || *end != '\0')
        throw StreamParseError(line, std::string(what) + " must be a number, got '" + tok + "'");
    return v;
}

}  // namespace

StreamData parse_stream(std::istream& in) {
    StreamData s;
    std::string line;
    int lineno = 0;

    // header
    for (;;) {
        if (!std::getline(in, line)) throw StreamParseError(lineno + 1, "missing header");
        ++lineno;
        if (!split_ws(line).empty()) break;
    }
    auto head = split_ws(line);
    if (head.size() != 3)
        throw StreamParseError(lineno, "header must be '<mode> n d'");
    if (head[0] == "turnstile")
        s.turnstile = true;
    else if (head[0] == "rows")
        s.turnstile = false;
    else
        throw StreamParseError(lineno, "mode must be 'turnstile' or 'rows', got '" + head[0] + "'");
    long long n = parse_int(head[1], lineno, "n");
    long long d = parse_int(head[2], lineno, "d");
    if (n <= 0 || d <= 0 || n > (1 << 24) || d > (1 << 24))
        throw StreamParseError(lineno, "n and d must be in [1, 2^24]");
    s.n = (int)n;
    s.d = (int)d;

    if (s.turnstile) {
        while (std::getline(in, line)) {
            ++lineno;
            auto toks = split_ws(line);
            if (toks.empty()) continue;
            if (toks.size() != 3)
                throw StreamParseError(lineno, "update must be 'i j delta'");
            long long i = parse_int(toks[0], lineno, "i");
            long long j = parse_int(toks[1], lineno, "j");
            long long delta = parse_int(toks[2], lineno, "delta");
            if (i < 0 || i >= s.n) throw StreamParseError(lineno, "row index out of range");
            if (j < 0 || j >= s.d) throw StreamParseError(lineno, "column index out of range");
            s.updates.push_back({(int)i, (int)j, (double)delta});
        }
    } else {
        s.rows = DenseMatrix(s.n, s.d);
        int got = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto toks = split_ws(line);
            if (toks.empty()) continue;
            if (got >= s.n) throw StreamParseError(lineno, "more data rows than n");
            if ((int)toks.size() != s.d)
                throw StreamParseError(lineno, "expected " + std::to_string(s.d) + " values, got " +
                                                   std::to_string(toks.size()));
            for (int j = 0; j < s.d; ++j)
                s.rows[got][j] = parse_real(toks[j], lineno, "entry");
            ++got;
        }
        if (got != s.n)
            throw StreamParseError(lineno + 1, "expected " + std::to_string(s.n) + " rows, got " +
                                                  std::to_string(got));
    }
    return s;
}

StreamData parse_stream_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open stream file: " + path);
    return parse_stream(f);
}

void write_stream_file(const std::string& path, const StreamData& s) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    f.precision(17);
    if (s.turnstile) {
        f << "turnstile " << s.n << ' ' << s.d << '\n';
        for (const auto& u : s.updates)
            f << u.i << ' ' << u.j << ' ' << (long long)u.delta << '\n';
    } else {
        f << "rows " << s.n << ' ' << s.d << '\n';
        for (int i = 0; i < s.n; ++i) {
            for (int j = 0; j < s.d; ++j) f << (j ? " " : "") << s.rows[i][j];
            f << '\n';
        }
    }
}

}  // namespace sks
