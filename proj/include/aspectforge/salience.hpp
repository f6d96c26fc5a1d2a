#ifndef ASPECTFORGE_SALIENCE_HPP
#define ASPECTFORGE_SALIENCE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <memory>
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

/// Corpus document-frequency statistics. score = tf(w,d) * ln(N / df(w)),
/// raw term counts, df defaulting to 1 for unseen words, stopwords excluded.
class TfIdfModel {
 public:
  std::uint64_t doc_count() const { return doc_count_; }

  std::uint64_t doc_freq(std::string_view word) const {
    auto it = doc_freq_.find(std::string(word));
    return it == doc_freq_.end() ? 0 : it->second;
  }

  std::size_t vocab_size() const { return doc_freq_.size(); }

  /// Ranks the document's distinct non-stopword tokens by TF-IDF, ties by
  /// first occurrence then lexicographic. The tie order is total.
  std::vector<std::pair<std::string, double>> score_document(
      std::string_view document) const {
    struct Entry {
      std::uint64_t tf = 0;
      std::size_t first_pos = 0;
    };
    std::unordered_map<std::string, Entry> counts;
    std::vector<std::string> tokens = tokenize(document);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (is_stopword(tokens[i])) continue;
      auto [it, inserted] = counts.try_emplace(tokens[i]);
      if (inserted) it->second.first_pos = i;
      ++it->second.tf;
    }
    struct Scored {
      std::string word;
      double score;
      std::size_t first_pos;
    };
    std::vector<Scored> scored;
    scored.reserve(counts.size());
    for (auto& [word, entry] : counts) {
      std::uint64_t df = std::max<std::uint64_t>(doc_freq(word), 1);
      double idf = std::log(static_cast<double>(doc_count_) /
                            static_cast<double>(df));
      scored.push_back(
          {word, static_cast<double>(entry.tf) * idf, entry.first_pos});
    }
    std::sort(scored.begin(), scored.end(),
              [](const Scored& a, const Scored& b) {
                if (a.score != b.score) return a.score > b.score;
                if (a.first_pos != b.first_pos)
                  return a.first_pos < b.first_pos;
                return a.word < b.word;
              });
    std::vector<std::pair<std::string, double>> out;
    out.reserve(scored.size());
    for (auto& s : scored) out.emplace_back(std::move(s.word), s.score);
    return out;
  }

  friend class TfIdfBuilder;

 private:
  std::uint64_t doc_count_ = 0;
  std::unordered_map<std::string, std::uint64_t> doc_freq_;
};

// Streaming fit: one add() per record, order-insensitive result.
class TfIdfBuilder {
 public:
  void add(const DocumentRecord& record) { add_text(record.document); }

  void add_text(std::string_view document) {
    ++model_.doc_count_;
    std::unordered_set<std::string> seen;
    for (auto& tok : tokenize(document)) {
      if (is_stopword(tok)) continue;
      if (seen.insert(tok).second) ++model_.doc_freq_[tok];
    }
  }

  TfIdfModel finish() {
    if (model_.doc_count_ == 0)
      throw DataError("cannot fit TF-IDF on an empty corpus");
    return std::move(model_);
  }

 private:
  TfIdfModel model_;
};

inline TfIdfModel fit_tfidf(const std::vector<DocumentRecord>& corpus) {
  TfIdfBuilder builder;
  for (const auto& rec : corpus) builder.add(rec);
  return builder.finish();
}

/// Plain-text extract of one Wikipedia page plus its normalized token set.
struct WikiExtract {
  std::string title;
  std::string text;
  std::unordered_set<std::string> token_set;

  static WikiExtract make(std::string title, std::string text) {
    WikiExtract e;
    e.title = std::move(title);
    e.text = std::move(text);
    for (auto& tok : tokenize(e.text)) e.token_set.insert(std::move(tok));
    return e;
  }
};

/// Source of page extracts keyed by aspect. Absent pages return null;
/// live-mode transport failures throw WikiFetchError instead.
class WikiSource {
 public:
  virtual ~WikiSource() = default;
  virtual std::shared_ptr<const WikiExtract> lookup(
      const std::string& aspect) = 0;
};

// Offline store over JSONL lines {"title": str, "text": str}. Titles match
// case-insensitively. Immutable after load; safe for concurrent readers.
class OfflineWikiStore : public WikiSource {
 public:
  OfflineWikiStore() = default;

  static OfflineWikiStore load(const std::string& path) {
    OfflineWikiStore store;
    JsonlReader reader(path);
    json j;
    std::size_t line_no = 0;
    while (reader.next(j, line_no)) {
      std::string title = require_string(j, "title", path, line_no);
      std::string text = require_string(j, "text", path, line_no);
      store.put(std::move(title), std::move(text));
    }
    return store;
  }

  void put(std::string title, std::string text) {
    auto extract = std::make_shared<const WikiExtract>(
        WikiExtract::make(std::move(title), std::move(text)));
    by_title_[to_lower(extract->title)] = extract;
  }

  std::size_t size() const { return by_title_.size(); }

  std::shared_ptr<const WikiExtract> lookup(
      const std::string& aspect) override {
    auto it = by_title_.find(to_lower(collapse_whitespace(aspect)));
    return it == by_title_.end() ? nullptr : it->second;
  }

 private:
  std::unordered_map<std::string, std::shared_ptr<const WikiExtract>>
      by_title_;
};

/// Selects the top-ranked document words that occur in the aspect's page
/// extract, until `limit` are collected. No extract means no related words.
inline std::vector<std::string> related_words(
    const std::vector<std::pair<std::string, double>>& ranking,
    const WikiExtract* extract, std::size_t limit = 10) {
  std::vector<std::string> words;
  if (!extract || limit == 0) return words;
  for (const auto& [word, score] : ranking) {
    if (!extract->token_set.count(word)) continue;
    words.push_back(word);
    if (words.size() >= limit) break;
  }
  return words;
}

}  // namespace aspectforge

#endif  // ASPECTFORGE_SALIENCE_HPP
