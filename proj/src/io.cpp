#include "gne/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "gne/errors.hpp"

namespace gne {

namespace {

uint64_t parse_u64(const std::string& s, long line) {
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("expected an unsigned integer, got '" + s + "'", line);
    return v;
}

std::string next_line(std::istream& in, long& line) {
    std::string s;
    if (!std::getline(in, s)) throw ParseError("unexpected end of file", line + 1);
    ++line;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

uint64_t parse_kv(const std::string& field, const std::string& key, long line) {
    if (field.size() < key.size() + 2 || field.compare(0, key.size() + 1, key + "=") != 0)
        throw ParseError("expected '" + key + "=<int>'", line);
    return parse_u64(field.substr(key.size() + 1), line);
}

}  // namespace

void write_graph(std::ostream& out, const GraphWithNames& g) {
    out << "GNV1\n";
    out << "N=" << g.num_vertices() << " A=" << g.a << " L=" << g.len << "\n";
    for (size_t v = 0; v < g.names.size(); ++v) {
        if (g.ordered) out << v << ':';
        out << g.names[v] << "\n";
    }
    out << "E=" << g.num_edges() << "\n";
    for (auto [u, v] : g.edges) out << u << ' ' << v << "\n";
}

void write_graph(const std::string& path, const GraphWithNames& g) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_graph(out, g);
    if (!out) throw IoError("write to '" + path + "' failed");
}

GraphWithNames read_graph(std::istream& in) {
    long line = 0;
    if (next_line(in, line) != "GNV1") throw ParseError("missing GNV1 magic", line);
    std::istringstream header(next_line(in, line));
    std::string f_n, f_a, f_l, extra;
    if (!(header >> f_n >> f_a >> f_l) || header >> extra)
        throw ParseError("header must be 'N=<int> A=<int> L=<int>'", line);
    GraphWithNames g;
    uint64_t n = parse_kv(f_n, "N", line);
    g.a = (uint32_t)parse_kv(f_a, "A", line);
    g.len = (uint32_t)parse_kv(f_l, "L", line);
    if (g.a < 2 || g.a > kMaxAlphabet) throw ParseError("alphabet size out of range", line);

    g.names.reserve(n);
    std::unordered_set<std::string> seen;
    seen.reserve(2 * n);
    for (uint64_t v = 0; v < n; ++v) {
        std::string s = next_line(in, line);
        if (!seen.insert(s).second) throw ParseError("duplicate vertex name", line);
        size_t colon = s.find(':');
        if (colon != std::string::npos) {
            if (v == 0)
                g.ordered = true;
            else if (!g.ordered)
                throw ParseError("mixed ordered and plain names", line);
            if (parse_u64(s.substr(0, colon), line) != v)
                throw ParseError("ordered name index must equal the line position", line);
            s = s.substr(colon + 1);
        } else if (g.ordered) {
            throw ParseError("mixed ordered and plain names", line);
        }
        if (s.size() != g.len) throw ParseError("name length differs from header L", line);
        for (char c : s)
            if (letter_index(c, g.a) < 0)
                throw ParseError("letter outside the declared alphabet", line);
        g.names.push_back(std::move(s));
    }
    std::string ef = next_line(in, line);
    uint64_t e = parse_kv(ef, "E", line);
    g.edges.reserve(e);
    std::unordered_set<uint64_t> edge_seen;
    edge_seen.reserve(2 * e);
    for (uint64_t i = 0; i < e; ++i) {
        std::istringstream es(next_line(in, line));
        uint64_t u, v;
        std::string rest;
        if (!(es >> u >> v) || es >> rest) throw ParseError("edge line must be 'u v'", line);
        if (u >= v) throw ParseError("edge must satisfy u < v", line);
        if (v >= n) throw ParseError("edge endpoint out of range", line);
        if (!edge_seen.insert(u * n + v).second) throw ParseError("duplicate edge", line);
        g.edges.emplace_back((uint32_t)u, (uint32_t)v);
    }
    canonicalize_edges(g);
    return g;
}

GraphWithNames read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return read_graph(in);
}

void write_dag(const std::string& path, const Dag& dag) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "N=" << dag.n << "\n";
    for (auto [later, earlier] : dag.edges) out << later << ' ' << earlier << "\n";
    if (!out) throw IoError("write to '" + path + "' failed");
}

Dag read_dag(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    long line = 0;
    Dag dag;
    dag.n = parse_kv(next_line(in, line), "N", line);
    std::string s;
    while (std::getline(in, s)) {
        ++line;
        if (!s.empty() && s.back() == '\r') s.pop_back();
        if (s.empty()) continue;
        std::istringstream es(s);
        uint64_t later, earlier;
        std::string rest;
        if (!(es >> later >> earlier) || es >> rest)
            throw ParseError("edge line must be 'later earlier'", line);
        if (later >= dag.n || earlier >= later)
            throw ParseError("dag edge must go from a later to an earlier vertex", line);
        dag.edges.emplace_back((uint32_t)later, (uint32_t)earlier);
    }
    return dag;
}

}  // namespace gne
