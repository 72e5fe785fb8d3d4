#pragma once

// Shared container layout for forest and GBT model files:
//
//   loadcast-model 1
//   key = value          (config echo, base score, ...)
//   ...
//   tree nodes=... / stage ... lines follow

#include <ostream>
#include <span>
#include <string_view>

#include "loadcast/error.hpp"
#include "loadcast/kv.hpp"

namespace loadcast::detail {

inline constexpr std::string_view kModelMagic = "loadcast-model 1";

inline void write_model_header(std::ostream& out, const KeyValueDoc& doc) {
    out << kModelMagic << '\n';
    doc.write(out);
}

/// Parses the header; leaves `pos` at the first member line.
inline KeyValueDoc read_model_header(std::span<const std::string_view> lines, std::size_t& pos) {
    if (lines.empty() || lines[0] != kModelMagic) throw DataError("model: bad magic line");
    pos = 1;
    std::string text;
    while (pos < lines.size() && lines[pos].find(" = ") != std::string_view::npos) {
        text.append(lines[pos]);
        text.push_back('\n');
        ++pos;
    }
    return KeyValueDoc::parse(text);
}

}  // namespace loadcast::detail
