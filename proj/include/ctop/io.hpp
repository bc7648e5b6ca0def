#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "ctop/graph.hpp"

namespace ctop {

// Malformed instance text. The message names the problem and the line it was
// found on; line() exposes the number separately.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

// Instance text format (UTF-8):
//   - lines starting with '#' are comments and may appear anywhere
//   - first non-comment line:  p ctop <n> <m>
//   - exactly m edge lines:    e <u> <v>      (0-indexed; either order)
// Edges are stored normalized with u < v. Diagnostics distinguish malformed
// lines, a bad or missing header, out-of-range vertices, self-loops,
// duplicate edges, and an edge count that does not match the header.
Graph parse_instance(const std::string& text);

// Canonical form: the header followed by the edges sorted ascending, no
// comments. parse(serialize(g)) == g, and serialize(parse(t)) canonicalizes t.
std::string serialize_instance(const Graph& g);

Graph read_instance_file(const std::filesystem::path& path);

// Writes comment (if non-empty; '#' added per line) followed by the canonical
// serialization. The write is atomic: a sibling temp file is renamed over the
// target.
void write_instance_file(const std::filesystem::path& path, const Graph& g,
                         const std::string& comment = "");

}  // namespace ctop
