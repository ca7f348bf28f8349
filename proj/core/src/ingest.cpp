#include "swiftnorm/ingest.hpp"

#include <fstream>
#include <sstream>

namespace swiftnorm {

namespace {

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(first, last - first + 1);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

// Length of the `:NN[A]:` prefix, or 0 when the line does not start with one.
std::size_t tag_prefix_length(std::string_view line) {
  if (line.size() < 4 || line[0] != ':' || !is_digit(line[1]) || !is_digit(line[2])) return 0;
  if (line[3] == ':') return 4;
  if (line.size() >= 5 && is_upper(line[3]) && line[4] == ':') return 5;
  return 0;
}

}  // namespace

InputFormat parse_input_format(std::string_view name) {
  if (name == "plain") return InputFormat::plain;
  if (name == "mt") return InputFormat::mt;
  throw ConfigInvalid("unknown input format '" + std::string(name) + "' (expected plain|mt)");
}

std::string_view to_string(InputFormat format) {
  return format == InputFormat::plain ? "plain" : "mt";
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (end == std::string_view::npos) {
      if (!line.empty()) lines.emplace_back(line);
      break;
    }
    lines.emplace_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<EntityRecord> parse_plain(const std::vector<std::string>& lines,
                                      std::string_view source_id) {
  std::vector<EntityRecord> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_blank(lines[i])) continue;
    out.push_back(EntityRecord{lines[i], std::string(source_id), std::nullopt, i});
  }
  return out;
}

MtParseResult parse_mt_block4(std::string_view text, const std::set<std::string>& wanted_tags,
                              std::string_view source_id) {
  MtParseResult result;
  const auto lines = split_lines(text);

  // State of the field being accumulated.
  bool collecting = false;
  std::string tag;
  std::string value;
  std::size_t field_line = 0;

  auto flush = [&] {
    if (collecting && !value.empty()) {
      result.records.push_back(EntityRecord{value, std::string(source_id), tag, field_line});
    }
    collecting = false;
    value.clear();
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (const auto open = line.find("{4:"); open != std::string_view::npos) {
      flush();
      line.remove_prefix(open + 3);
    }
    if (trim(line).starts_with("-}")) {
      flush();
      continue;
    }

    if (!line.empty() && line.front() == ':') {
      flush();
      const std::size_t prefix = tag_prefix_length(line);
      if (prefix == 0) {
        // The field cannot be identified; its continuation lines are dropped too.
        result.malformed.emplace_back(i + 1, std::string(line));
        continue;
      }
      tag.assign(line.substr(1, prefix - 2));
      collecting = wanted_tags.contains(tag);
      field_line = i;
      line.remove_prefix(prefix);
    } else if (!collecting) {
      continue;
    }

    if (!collecting) continue;
    const auto piece = trim(line);
    if (piece.empty()) continue;
    if (!value.empty()) value.push_back(' ');
    value.append(piece);
  }
  flush();
  return result;
}

std::vector<EntityRecord> read_records(const std::filesystem::path& path, InputFormat format,
                                       const std::set<std::string>& wanted_tags,
                                       std::vector<MalformedField>* malformed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read input file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const std::string source = path.string();

  if (format == InputFormat::plain) return parse_plain(split_lines(text), source);

  auto parsed = parse_mt_block4(text, wanted_tags, source);
  if (malformed) {
    malformed->insert(malformed->end(), parsed.malformed.begin(), parsed.malformed.end());
  }
  return std::move(parsed.records);
}

}  // namespace swiftnorm
