#pragma once

#include <stdexcept>
#include <string>

namespace gne {

// Exit-code mapping used by the CLI: validation 2, I/O 3, capacity 4.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file; carries the 1-based line number when known.
struct ParseError : IoError {
    ParseError(const std::string& msg, long line_no)
        : IoError(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    long line;
};

struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Corrupted or mismatched compressed stream; position is a byte offset.
struct DecodeError : IoError {
    DecodeError(const std::string& msg, size_t pos)
        : IoError(msg + " (byte " + std::to_string(pos) + ")"), position(pos) {}
    size_t position;
};

}  // namespace gne
