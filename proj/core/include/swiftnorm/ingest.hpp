#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "swiftnorm/error.hpp"

namespace swiftnorm {

/// One raw tag value plus where it came from.
struct EntityRecord {
  std::string raw_text;
  std::string source_id;
  std::optional<std::string> tag;
  std::size_t line_index = 0;

  bool operator==(const EntityRecord&) const = default;
};

enum class InputFormat { plain, mt };

InputFormat parse_input_format(std::string_view name);
std::string_view to_string(InputFormat format);

/// One record per non-blank line; line_index is the position in `lines`.
std::vector<EntityRecord> parse_plain(const std::vector<std::string>& lines,
                                      std::string_view source_id = {});

struct MtParseResult {
  std::vector<EntityRecord> records;
  std::vector<MalformedField> malformed;
};

/// Minimal splitter for the text block of an MT message. A field starts at a
/// line matching `:NN[A]:`; its value runs until the next field, a `-}`
/// terminator or the end of input. Values of wanted tags become records, with
/// continuation lines joined by a single space.
MtParseResult parse_mt_block4(std::string_view text, const std::set<std::string>& wanted_tags,
                              std::string_view source_id = {});

/// Reads a file in the given format. Throws InputError when unreadable.
/// Malformed MT fields are appended to `malformed` when provided.
std::vector<EntityRecord> read_records(const std::filesystem::path& path, InputFormat format,
                                       const std::set<std::string>& wanted_tags,
                                       std::vector<MalformedField>* malformed = nullptr);

/// Splits text into lines, dropping a trailing '\r' from each.
std::vector<std::string> split_lines(std::string_view text);

}  // namespace swiftnorm
