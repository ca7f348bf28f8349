#include "swiftnorm/preprocess.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <unordered_map>

namespace swiftnorm {

std::string clean(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (const char ch : raw) {
    const auto c = static_cast<unsigned char>(ch);
    if (c >= '0' && c <= '9') continue;
    char letter = 0;
    if (c >= 'A' && c <= 'Z') letter = static_cast<char>(c);
    else if (c >= 'a' && c <= 'z') letter = static_cast<char>(c - 'a' + 'A');

    if (letter == 0) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(letter);
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view cleaned) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < cleaned.size()) {
    const auto start = cleaned.find_first_not_of(' ', pos);
    if (start == std::string_view::npos) break;
    auto end = cleaned.find(' ', start);
    if (end == std::string_view::npos) end = cleaned.size();
    tokens.emplace_back(cleaned.substr(start, end - start));
    pos = end;
  }
  return tokens;
}

std::string canonicalize(std::vector<std::string> tokens) {
  if (tokens.empty()) throw EmptyEntity();
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

namespace {

// Builds the canonical table for a set of unique lines whose member ids are
// already filled in.
Corpus group_lines(std::vector<UniqueLine> lines) {
  std::map<std::string, std::vector<std::size_t>> by_form;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    by_form[canonicalize(tokenize(lines[i].text))].push_back(i);
  }

  Corpus corpus;
  corpus.forms.reserve(by_form.size());
  for (auto& [sorted_text, members] : by_form) {
    const auto smallest = *std::min_element(
        members.begin(), members.end(),
        [&](std::size_t a, std::size_t b) { return lines[a].text < lines[b].text; });
    const std::size_t form_index = corpus.forms.size();
    for (const auto m : members) lines[m].canonical_index = form_index;
    corpus.forms.push_back(CanonicalForm{sorted_text, tokenize(lines[smallest].text), members});
  }
  corpus.lines = std::move(lines);
  return corpus;
}

}  // namespace

Corpus build_corpus(const std::vector<EntityRecord>& records) {
  std::vector<UniqueLine> lines;
  std::unordered_map<std::string, std::size_t> line_of;
  std::vector<std::size_t> dropped;

  for (std::size_t r = 0; r < records.size(); ++r) {
    std::string text = clean(records[r].raw_text);
    if (text.empty()) {
      dropped.push_back(r);
      continue;
    }
    auto [it, inserted] = line_of.try_emplace(text, lines.size());
    if (inserted) lines.push_back(UniqueLine{std::move(text), {}, 0});
    lines[it->second].member_record_ids.push_back(r);
  }
  if (lines.empty()) throw EmptyCorpus();

  Corpus corpus = group_lines(std::move(lines));
  corpus.dropped_records = std::move(dropped);
  return corpus;
}

Corpus build_corpus_from_lines(const std::vector<std::string>& cleaned_lines) {
  std::vector<EntityRecord> records;
  records.reserve(cleaned_lines.size());
  for (std::size_t i = 0; i < cleaned_lines.size(); ++i) {
    records.push_back(EntityRecord{cleaned_lines[i], {}, std::nullopt, i});
  }
  return build_corpus(records);
}

Corpus subset_corpus(const Corpus& corpus, const std::vector<std::size_t>& form_indices) {
  Corpus out;
  out.forms.reserve(form_indices.size());
  for (const auto f : form_indices) {
    CanonicalForm form = corpus.forms.at(f);
    for (auto& line_index : form.member_line_indices) {
      UniqueLine line = corpus.lines[line_index];
      line.canonical_index = out.forms.size();
      line_index = out.lines.size();
      out.lines.push_back(std::move(line));
    }
    out.forms.push_back(std::move(form));
  }
  return out;
}

void write_provenance_csv(const Corpus& corpus, std::size_t n_records,
                          const std::filesystem::path& path) {
  std::vector<long long> line_of_record(n_records, -1);
  for (std::size_t l = 0; l < corpus.lines.size(); ++l) {
    for (const auto r : corpus.lines[l].member_record_ids) {
      if (r < n_records) line_of_record[r] = static_cast<long long>(l);
    }
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "record_id,unique_line_id,canonical_id\n";
  for (std::size_t r = 0; r < n_records; ++r) {
    if (line_of_record[r] < 0) continue;
    const auto l = static_cast<std::size_t>(line_of_record[r]);
    out << r << ',' << l << ',' << corpus.lines[l].canonical_index << '\n';
  }
}

}  // namespace swiftnorm
