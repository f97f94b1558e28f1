#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "gne/graph.hpp"

namespace gne {

// Models the codec can condition on.  Only distributions with tractable
// sequential probabilities are codable; the unordered hybrid model is not.
struct CodecErBinary {
    uint64_t n;
    double alpha;
};
struct CodecErNamed {
    uint64_t n;
    double alpha;
    double beta;
    uint32_t a;
};
struct CodecHybridOrdered {
    uint64_t n;
    double alpha;
    double beta;
    uint32_t a;
};
using CodecModel = std::variant<CodecErBinary, CodecErNamed, CodecHybridOrdered>;

void validate(const CodecModel& model);
const char* codec_tag(const CodecModel& model);

// Arithmetic-codes the realization under the model's exact sequential
// probabilities.  Stream: magic GNC1, tag byte, parameter block, payload,
// 32-bit checksum.
std::vector<uint8_t> encode(const CodecModel& model, const GraphWithNames& g);

GraphWithNames decode(const CodecModel& model, const std::vector<uint8_t>& stream);

// -log2 P(realization) from the same sequential probabilities, in bits.
double ideal_codelength(const CodecModel& model, const GraphWithNames& g);

// Split of a stream for the overhead accounting in tests: header = magic,
// tag, parameters, length fields and checksum; payload = coded bits.
struct StreamLayout {
    size_t header_bytes;
    size_t payload_bytes;
};
StreamLayout stream_layout(const CodecModel& model, const std::vector<uint8_t>& stream);

uint32_t crc32(const uint8_t* data, size_t size);

}  // namespace gne
