#ifndef ASPECTFORGE_WEAK_SUPERVISION_HPP
#define ASPECTFORGE_WEAK_SUPERVISION_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "aspectforge/aspect_seed.hpp"
#include "aspectforge/concept_graph.hpp"
#include "aspectforge/corpus.hpp"
#include "aspectforge/text.hpp"

namespace aspectforge {

enum class AspectOrigin { kSeed, kNeighbor };

inline const char* to_string(AspectOrigin origin) {
  return origin == AspectOrigin::kSeed ? "seed" : "neighbor";
}

/// A candidate aspect: either a seed entity from the generic summary or one
/// of its ConceptNet neighbors. Carries its own neighbor terms, which the
/// relevance test uses alongside the term itself.
struct Aspect {
  std::string term;
  AspectOrigin origin = AspectOrigin::kSeed;
  std::string source_seed;
  std::vector<std::string> neighbor_terms;
  double weight = 0.0;  // edge weight for neighbor-origin aspects

  bool operator==(const Aspect&) const = default;
};

/// One weakly supervised training example. `related_words` and `model_input`
/// are filled by the salience and serialization stages.
struct WeakExample {
  std::string doc_id;
  Aspect aspect;
  std::string summary;
  std::vector<std::string> related_words;
  std::string model_input;
};

struct WeakSupConfig {
  std::size_t neighbor_k = 10;
  std::size_t max_aspects_per_doc = 16;
};

namespace detail {

inline std::vector<std::string> neighbor_term_list(
    const ConceptIndex& index, std::string_view term, std::size_t k) {
  std::vector<std::string> terms;
  for (auto& [nbr, weight] : index.neighbors(term, k))
    terms.push_back(nbr);
  return terms;
}

}  // namespace detail

/// Expands seed mentions into the aspect set: the normalized unique seeds
/// plus up to k ConceptNet neighbors per seed. Seeds come first, then
/// neighbor aspects by weight descending (term ascending on ties); a term
/// already present as a seed is never re-minted as a neighbor aspect.
inline std::vector<Aspect> expand_aspects(
    const std::vector<EntityMention>& seeds, const ConceptIndex& index,
    std::size_t k) {
  std::vector<Aspect> aspects;
  std::unordered_set<std::string> seed_terms;
  for (const auto& mention : seeds) {
    std::string term = normalize_term(mention.text);
    if (term.empty() || !seed_terms.insert(term).second) continue;
    Aspect aspect;
    aspect.term = term;
    aspect.origin = AspectOrigin::kSeed;
    aspect.source_seed = term;
    aspect.neighbor_terms = detail::neighbor_term_list(index, term, k);
    aspects.push_back(std::move(aspect));
  }

  struct Candidate {
    std::string term;
    double weight;
    std::size_t seed_idx;
  };
  std::vector<Candidate> candidates;
  for (std::size_t s = 0; s < aspects.size(); ++s) {
    for (auto& [nbr, weight] : index.neighbors(aspects[s].term, k))
      candidates.push_back({nbr, weight, s});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.weight != b.weight) return a.weight > b.weight;
                     if (a.term != b.term) return a.term < b.term;
                     return a.seed_idx < b.seed_idx;
                   });
  std::unordered_set<std::string> added(seed_terms);
  for (auto& c : candidates) {
    if (!added.insert(c.term).second) continue;
    Aspect aspect;
    aspect.term = c.term;
    aspect.origin = AspectOrigin::kNeighbor;
    aspect.source_seed = aspects[c.seed_idx].term;
    aspect.weight = c.weight;
    aspect.neighbor_terms = detail::neighbor_term_list(index, c.term, k);
    aspects.push_back(std::move(aspect));
  }
  return aspects;
}

/// True iff `tokens` mention `term`: single-word terms match any token up to
/// a trailing 's'; multiword terms match as a contiguous token run with the
/// same folding on the final word.
inline bool tokens_mention_term(const std::vector<std::string>& tokens,
                                std::string_view term) {
  std::vector<std::string> words = tokenize(term);
  if (words.empty()) return false;
  if (words.size() == 1) {
    for (const auto& tok : tokens)
      if (fold_equal(tok, words[0])) return true;
    return false;
  }
  if (tokens.size() < words.size()) return false;
  for (std::size_t i = 0; i + words.size() <= tokens.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j + 1 < words.size(); ++j) {
      if (tokens[i + j] != words[j]) {
        match = false;
        break;
      }
    }
    if (match && fold_equal(tokens[i + words.size() - 1], words.back()))
      return true;
  }
  return false;
}

/// The relevance test: a sentence is relevant to an aspect if it mentions
/// the aspect term or any of the aspect's own neighbor terms.
inline bool mentions(const Sentence& sentence,
                     const std::vector<std::string>& terms) {
  std::vector<std::string> tokens = tokenize(sentence.text);
  for (const auto& term : terms)
    if (tokens_mention_term(tokens, term)) return true;
  return false;
}

inline std::vector<std::string> aspect_match_terms(const Aspect& aspect) {
  std::vector<std::string> terms;
  terms.reserve(1 + aspect.neighbor_terms.size());
  terms.push_back(aspect.term);
  for (const auto& t : aspect.neighbor_terms) terms.push_back(t);
  return terms;
}

/// Concatenates (single space) exactly the generic-summary sentences
/// relevant to the aspect, in order. Empty string when none match.
inline std::string synthesize_summary(const std::vector<Sentence>& generic,
                                      const Aspect& aspect) {
  const std::vector<std::string> terms = aspect_match_terms(aspect);
  std::string out;
  for (const auto& sentence : generic) {
    if (!mentions(sentence, terms)) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(sentence.text);
  }
  return out;
}

/// Checks the WeakExample summary invariant: the synthesized text is the
/// single-space concatenation of a subsequence of the generic-summary
/// sentences, in original order, without duplication.
inline bool is_sentence_subsequence(const std::vector<Sentence>& generic,
                                    std::string_view synthesized) {
  std::size_t pos = 0;
  for (const auto& s : generic) {
    if (pos >= synthesized.size()) break;
    if (synthesized.compare(pos, s.text.size(), s.text) == 0) {
      pos += s.text.size();
      if (pos < synthesized.size() && synthesized[pos] == ' ') ++pos;
    }
  }
  return pos == synthesized.size();
}

/// Per-record construction statistics, aggregated into the run report.
struct RecordStats {
  std::uint64_t seed_aspects = 0;
  std::uint64_t neighbor_aspects = 0;
  std::uint64_t emitted = 0;
  std::uint64_t empty_summary_discarded = 0;
  std::uint64_t full_summary_kept = 0;
};

/// Builds the record's weak examples: extract seeds, expand via ConceptNet,
/// synthesize a summary per aspect, drop aspects with nothing relevant, cap
/// at max_aspects_per_doc in priority order (seeds, then neighbors by
/// weight). Aspects whose summary equals the whole generic summary are kept
/// and counted.
inline std::vector<WeakExample> build_weak_examples(
    const DocumentRecord& record, const ConceptIndex& index,
    const WeakSupConfig& config,
    const std::vector<EntityMention>& external = {},
    RecordStats* stats = nullptr) {
  RecordStats local;
  std::vector<EntityMention> seeds = merge_annotations(record, external);
  std::vector<Sentence> sentences = segment_sentences(record.summary);

  // tokenizing each sentence once is what keeps the stage fast
  std::vector<std::vector<std::string>> sentence_tokens;
  sentence_tokens.reserve(sentences.size());
  for (const auto& s : sentences) sentence_tokens.push_back(tokenize(s.text));

  std::vector<WeakExample> examples;
  for (const Aspect& aspect :
       expand_aspects(seeds, index, config.neighbor_k)) {
    if (aspect.origin == AspectOrigin::kSeed)
      ++local.seed_aspects;
    else
      ++local.neighbor_aspects;
    if (examples.size() >= config.max_aspects_per_doc) continue;

    const std::vector<std::string> terms = aspect_match_terms(aspect);
    std::string summary;
    std::size_t matched = 0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      bool hit = false;
      for (const auto& term : terms)
        if (tokens_mention_term(sentence_tokens[i], term)) {
          hit = true;
          break;
        }
      if (!hit) continue;
      ++matched;
      if (!summary.empty()) summary.push_back(' ');
      summary.append(sentences[i].text);
    }
    if (summary.empty()) {
      ++local.empty_summary_discarded;
      continue;
    }
    if (matched == sentences.size()) ++local.full_summary_kept;

    WeakExample example;
    example.doc_id = record.id;
    example.aspect = aspect;
    example.summary = std::move(summary);
    examples.push_back(std::move(example));
    ++local.emitted;
  }
  if (stats) *stats = local;
  return examples;
}

}  // namespace aspectforge

#endif  // ASPECTFORGE_WEAK_SUPERVISION_HPP
