#include "ctop/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ctop {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

bool is_blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (c != ' ' && c != '\t') return false;
    }
    return true;  // blank
}

// Parses exactly `count` integer fields after a one-char tag; rejects trailing
// junk. Returns false when the shape is wrong.
bool split_fields(const std::string& line, std::string& tag, std::vector<long long>& fields,
                  std::size_t count) {
    std::istringstream in(line);
    if (!(in >> tag)) return false;
    fields.clear();
    for (std::size_t i = 0; i < count; ++i) {
        long long x;
        if (!(in >> x)) return false;
        fields.push_back(x);
    }
    std::string rest;
    if (in >> rest) return false;
    return true;
}

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

Graph parse_instance(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_header = false;
    long long n = 0, m = 0, seen_edges = 0;
    Graph graph(0);

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_cr(raw);
        if (is_blank_or_comment(line)) continue;

        std::string tag;
        std::vector<long long> fields;
        if (!have_header) {
            std::istringstream head(line);
            std::string p, fmt;
            long long hn, hm;
            std::string rest;
            if (!(head >> p >> fmt >> hn >> hm) || p != "p" || fmt != "ctop" || (head >> rest))
                throw ParseError(lineno, "expected header 'p ctop <n> <m>', got '" + line + "'");
            if (hn < 1) throw ParseError(lineno, "vertex count must be at least 1");
            if (hm < 0) throw ParseError(lineno, "edge count must be non-negative");
            if (hm > hn * (hn - 1) / 2)
                throw ParseError(lineno, "edge count " + std::to_string(hm) +
                                             " exceeds the maximum for " + std::to_string(hn) +
                                             " vertices");
            n = hn;
            m = hm;
            graph = Graph(static_cast<int>(n));
            have_header = true;
            continue;
        }

        if (!split_fields(line, tag, fields, 2) || tag != "e")
            throw ParseError(lineno, "malformed line '" + line + "' (expected 'e <u> <v>')");
        long long u = fields[0], v = fields[1];
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(lineno, "vertex out of range on edge " + std::to_string(u) + " " +
                                         std::to_string(v) + " (n=" + std::to_string(n) + ")");
        if (u == v) throw ParseError(lineno, "self-loop at vertex " + std::to_string(u));
        if (graph.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v)))
            throw ParseError(lineno, "duplicate edge {" + std::to_string(std::min(u, v)) + "," +
                                         std::to_string(std::max(u, v)) + "}");
        ++seen_edges;
        if (seen_edges > m)
            throw ParseError(lineno, "more edge lines than the header's " + std::to_string(m));
        graph.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }

    if (!have_header) throw ParseError(lineno, "missing 'p ctop <n> <m>' header");
    if (seen_edges < m)
        throw ParseError(lineno, "header declares " + std::to_string(m) + " edges but only " +
                                     std::to_string(seen_edges) + " present");
    return graph;
}

std::string serialize_instance(const Graph& g) {
    std::ostringstream out;
    out << "p ctop " << g.vertex_count() << " " << g.edge_count() << "\n";
    for (const auto& [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
    return out.str();
}

Graph read_instance_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open instance file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

void write_instance_file(const std::filesystem::path& path, const Graph& g,
                         const std::string& comment) {
    std::ostringstream body;
    if (!comment.empty()) {
        std::istringstream lines(comment);
        std::string line;
        while (std::getline(lines, line)) body << "# " << line << "\n";
    }
    body << serialize_instance(g);

    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open file for writing: " + tmp.string());
        out << body.str();
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace ctop
