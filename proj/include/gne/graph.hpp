#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gne {

// Letters are drawn from this table; alphabet size A uses the first A
// symbols, so A is capped at 62.
inline constexpr char kLetters[] =
    "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
inline constexpr uint32_t kMaxAlphabet = 62;

int letter_index(char c, uint32_t a);  // -1 if not a valid letter under A

// N vertices with names (strings of length L over the first A letters)
// and an undirected edge list with u < v.  `ordered` marks graphs whose
// vertex order is part of the object (hybrid ordered model); their raw
// letter strings may repeat and they serialize as "<index>:<letters>".
struct GraphWithNames {
    uint32_t a = 2;
    uint32_t len = 0;
    bool ordered = false;
    std::vector<std::string> names;
    std::vector<std::pair<uint32_t, uint32_t>> edges;

    uint64_t num_vertices() const { return names.size(); }
    uint64_t num_edges() const { return edges.size(); }
};

// Sorts and checks the edge list, checks name shape and (for unordered
// graphs) distinctness.  Throws ValidationError.
void validate(const GraphWithNames& g);
void canonicalize_edges(GraphWithNames& g);

bool operator==(const GraphWithNames& x, const GraphWithNames& y);

// Name length for the random-named models: max(ceil(beta log_A N),
// ceil(log_A N)), guarding the ceil against float noise at integers.
uint32_t name_length(uint64_t n, double beta, uint32_t a);

// Zero-padded base-2 name of vertex index v (0-based): encodes (v+1) mod 2^L.
std::string binary_name(uint64_t v, uint32_t len);

uint64_t hamming_distance(const std::string& x, const std::string& y);

}  // namespace gne
