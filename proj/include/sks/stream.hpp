// Stream file handling. Two input layouts share a one-line header
// "<mode> n d" where mode is "turnstile" or "rows":
//   turnstile: one update per line, "i j delta", 0-based indices,
//              integer deltas
//   rows:      n lines of d decimal values, row i on line i
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sks/linalg.hpp"

namespace sks {

struct TurnstileUpdate {
    int i = 0;
    int j = 0;
    double delta = 0.0;
};

struct StreamData {
    bool turnstile = true;
    int n = 0;
    int d = 0;
    std::vector<TurnstileUpdate> updates;  // turnstile mode
    DenseMatrix rows;                      // rows mode

    DenseMatrix to_dense() const;
};

struct StreamParseError : std::runtime_error {
    int line;
    StreamParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

StreamData parse_stream(std::istream& in);
StreamData parse_stream_file(const std::string& path);
void write_stream_file(const std::string& path, const StreamData& s);

// every entry of every update/row applied through the callback
template <class F>
void replay(const StreamData& s, F&& update) {
    if (s.turnstile) {
        for (const auto& u : s.updates) update(u.i, u.j, u.delta);
    } else {
        for (int i = 0; i < s.n; ++i)
            for (int j = 0; j < s.d; ++j)
                if (s.rows[i][j] != 0.0) update(i, j, s.rows[i][j]);
    }
}

}  // namespace sks
