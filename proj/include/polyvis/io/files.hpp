#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyvis/environment.hpp"
#include "polyvis/harness/query_sets.hpp"

namespace polyvis::io {

/// Parse failure; `line` is 1-based, 0 when the error is not tied to a line.
class FormatError : public std::runtime_error {
public:
    FormatError(int line, const std::string &what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

/// Raw rings of a `MAP v1` file, in file order.
std::vector<Ring> ParseMap(std::istream &in);
std::vector<Ring> ReadMapFile(const std::string &path);

/// Reads and validates. Throws FormatError, EnvironmentError, or std::runtime_error when
/// the file cannot be opened.
Environment LoadMap(const std::string &path, NormalizeReport *report = nullptr);

void WriteMap(std::ostream &out, const Environment &env);
void SaveMap(const Environment &env, const std::string &path);

/// `POINTS v1` files. The header may carry `KIND <set>` and `SEED <n>` lines; each point
/// line is `x y` or `x y source sigma`.
harness::QueryPointSet ParsePoints(std::istream &in);
harness::QueryPointSet LoadPoints(const std::string &path);

void WritePoints(std::ostream &out, const harness::QueryPointSet &set);
void SavePoints(const harness::QueryPointSet &set, const std::string &path);

} // namespace polyvis::io
