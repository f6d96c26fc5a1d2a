#ifndef ASPECTFORGE_ASPECT_SEED_HPP
#define ASPECTFORGE_ASPECT_SEED_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "aspectforge/corpus.hpp"
#include "aspectforge/errors.hpp"
#include "aspectforge/jsonl.hpp"
#include "aspectforge/text.hpp"

namespace aspectforge {

/// An entity mention in a generic summary. The span always reproduces the
/// text: summary[start..end) == text.
struct EntityMention {
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const EntityMention&) const = default;
};

namespace detail {

struct SummaryWord {
  std::size_t raw_start, raw_end;    // whitespace-delimited span
  std::size_t core_start, core_end;  // punctuation/possessive-trimmed span
  bool sentence_initial = false;
  bool ends_clause = false;  // trailing punctuation or possessive: run stops
};

inline bool capitalized_core(std::string_view s, const SummaryWord& w) {
  if (w.core_end <= w.core_start) return false;
  return ascii_upper(static_cast<unsigned char>(s[w.core_start]));
}

inline bool all_caps_core(std::string_view s, const SummaryWord& w) {
  bool saw_alpha = false;
  for (std::size_t i = w.core_start; i < w.core_end; ++i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c >= 'a' && c <= 'z') return false;
    if (ascii_upper(c)) saw_alpha = true;
  }
  return saw_alpha;
}

inline std::vector<SummaryWord> summary_words(std::string_view s) {
  std::vector<SummaryWord> words;
  std::size_t i = 0;
  const std::size_t n = s.size();
  bool next_sentence_initial = true;
  while (i < n) {
    while (i < n && ascii_space(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= n) break;
    SummaryWord w;
    w.raw_start = i;
    while (i < n && !ascii_space(static_cast<unsigned char>(s[i]))) ++i;
    w.raw_end = i;
    w.sentence_initial = next_sentence_initial;

    std::string_view raw = s.substr(w.raw_start, w.raw_end - w.raw_start);
    std::size_t b = 0;
    while (b < raw.size()) {
      std::size_t len = 0;
      if (!strippable_codepoint(decode_utf8(raw, b, len))) break;
      b += len;
    }
    std::size_t e = b, scan = b;
    while (scan < raw.size()) {
      std::size_t len = 0;
      std::uint32_t cp = decode_utf8(raw, scan, len);
      scan += len;
      if (!strippable_codepoint(cp)) e = scan;
    }
    bool trimmed_tail = e < raw.size();
    // possessive: drop a trailing 's preceded by an apostrophe
    std::string_view core = raw.substr(b, e > b ? e - b : 0);
    if (core.size() >= 2 && core.substr(core.size() - 2) == "'s") {
      e -= 2;
      trimmed_tail = true;
    } else if (core.size() >= 4 &&
               core.substr(core.size() - 4) == "\xE2\x80\x99s") {
      e -= 4;
      trimmed_tail = true;
    }
    w.core_start = w.raw_start + b;
    w.core_end = w.raw_start + (e > b ? e : b);
    w.ends_clause = trimmed_tail;

    next_sentence_initial = false;
    std::string_view tail = raw.substr(e < raw.size() ? e : raw.size());
    for (std::size_t t = 0; t < tail.size(); ++t) {
      char c = tail[t];
      if (c == '.' || c == '!' || c == '?') {
        next_sentence_initial = true;
        break;
      }
    }
    words.push_back(w);
  }
  return words;
}

}  // namespace detail

/// Heuristic stand-in for an NER model: maximal runs of capitalized words,
/// skipping sentence-initial stopwords and all-caps function words. Mentions
/// are deduplicated by normalized text, first occurrence wins.
inline std::vector<EntityMention> extract_entities(std::string_view summary) {
  auto words = detail::summary_words(summary);
  std::vector<EntityMention> mentions;
  std::unordered_set<std::string> seen;

  auto is_candidate = [&](const detail::SummaryWord& w) {
    if (!detail::capitalized_core(summary, w)) return false;
    std::string lower = to_lower(
        summary.substr(w.core_start, w.core_end - w.core_start));
    if (w.sentence_initial && is_stopword(lower)) return false;
    if (detail::all_caps_core(summary, w) && is_stopword(lower)) return false;
    return true;
  };

  std::size_t i = 0;
  while (i < words.size()) {
    if (!is_candidate(words[i])) {
      ++i;
      continue;
    }
    std::size_t first = i;
    std::size_t last = i;
    while (last + 1 < words.size() && !words[last].ends_clause &&
           is_candidate(words[last + 1]))
      ++last;
    std::size_t start = words[first].core_start;
    std::size_t end = words[last].core_end;
    std::string text(summary.substr(start, end - start));
    if (seen.insert(normalize_term(text)).second)
      mentions.push_back({std::move(text), start, end});
    i = last + 1;
  }
  return mentions;
}

/// Validates external mentions against the record's summary and unions them
/// with the built-in recognizer's output. External mentions win span
/// conflicts; duplicates collapse on normalized text.
inline std::vector<EntityMention> merge_annotations(
    const DocumentRecord& record, const std::vector<EntityMention>& external) {
  std::vector<EntityMention> merged;
  std::unordered_set<std::string> seen;
  for (const auto& m : external) {
    if (m.text.empty() || m.start >= m.end || m.end > record.summary.size() ||
        record.summary.compare(m.start, m.end - m.start, m.text) != 0)
      throw DataError("record \"" + record.id +
                      "\": external mention \"" + m.text + "\" at (" +
                      std::to_string(m.start) + "," + std::to_string(m.end) +
                      ") does not match the summary");
    if (seen.insert(normalize_term(m.text)).second) merged.push_back(m);
  }
  const std::size_t external_count = merged.size();
  for (auto& m : extract_entities(record.summary)) {
    if (!seen.insert(normalize_term(m.text)).second) continue;
    bool overlaps = false;
    for (std::size_t i = 0; i < external_count; ++i) {
      if (m.start < merged[i].end && merged[i].start < m.end) {
        overlaps = true;
        break;
      }
    }
    if (!overlaps) merged.push_back(std::move(m));
  }
  std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.end < b.end;
  });
  return merged;
}

/// Sidecar JSONL schema:
/// {"id": str, "entities": [{"text": str, "start": int, "end": int}]}
inline std::unordered_map<std::string, std::vector<EntityMention>>
load_annotations(const std::string& path) {
  JsonlReader reader(path);
  std::unordered_map<std::string, std::vector<EntityMention>> out;
  json j;
  std::size_t line_no = 0;
  while (reader.next(j, line_no)) {
    std::string id = require_string(j, "id", path, line_no);
    auto& list = out[id];
    if (auto it = j.find("entities"); it != j.end() && it->is_array()) {
      for (const auto& e : *it) {
        EntityMention m;
        m.text = require_string(e, "text", path, line_no);
        m.start = e.value("start", std::size_t{0});
        m.end = e.value("end", std::size_t{0});
        list.push_back(std::move(m));
      }
    }
  }
  return out;
}

}  // namespace aspectforge

#endif  // ASPECTFORGE_ASPECT_SEED_HPP
