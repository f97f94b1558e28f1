#pragma once

#include <iosfwd>
#include <string>

#include "gne/graph.hpp"
#include "gne/hybrid.hpp"

namespace gne {

// GNV1 text format:
//   line 1: GNV1
//   line 2: N=<int> A=<int> L=<int>
//   N name lines (ordered graphs serialize names as "<index>:<letters>",
//   with the 0-based index equal to the line position)
//   line: E=<int>
//   E lines "u v" with 0-based indices, u < v
void write_graph(std::ostream& out, const GraphWithNames& g);
void write_graph(const std::string& path, const GraphWithNames& g);
GraphWithNames read_graph(std::istream& in);
GraphWithNames read_graph(const std::string& path);

// DAG file: line 1 "N=<int>", then one "later earlier" edge per line.
void write_dag(const std::string& path, const Dag& dag);
Dag read_dag(const std::string& path);

}  // namespace gne
