#ifndef ASPECTFORGE_ROUGE_HPP
#define ASPECTFORGE_ROUGE_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "aspectforge/errors.hpp"
#include "aspectforge/text.hpp"
#include "aspectforge/weak_supervision.hpp"

namespace aspectforge {

/// Precision/recall/F1 triple for one ROUGE variant.
struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static RougeScore from_counts(double overlap, double cand_total,
                                double ref_total) {
    RougeScore s;
    if (cand_total <= 0 || ref_total <= 0) return s;
    s.precision = overlap / cand_total;
    s.recall = overlap / ref_total;
    if (s.precision + s.recall > 0)
      s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
    return s;
  }
};

/// Clipped n-gram overlap over the shared tokenize() normalization.
/// Either side with no n-grams yields an all-zero score.
inline RougeScore rouge_n_tokens(const std::vector<std::string>& candidate,
                                 const std::vector<std::string>& reference,
                                 int n) {
  if (n < 1) throw DataError("rouge_n requires n >= 1");
  const std::size_t un = static_cast<std::size_t>(n);
  auto gram_counts = [un](const std::vector<std::string>& tokens) {
    std::unordered_map<std::string, std::uint64_t> counts;
    if (tokens.size() >= un) {
      for (std::size_t i = 0; i + un <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (std::size_t j = 1; j < un; ++j) {
          key.push_back('\x1f');
          key.append(tokens[i + j]);
        }
        ++counts[key];
      }
    }
    return counts;
  };
  auto cand = gram_counts(candidate);
  auto ref = gram_counts(reference);
  std::uint64_t cand_total = 0, ref_total = 0, overlap = 0;
  for (auto& [g, c] : cand) cand_total += c;
  for (auto& [g, c] : ref) ref_total += c;
  for (auto& [g, c] : cand) {
    auto it = ref.find(g);
    if (it != ref.end()) overlap += std::min(c, it->second);
  }
  return RougeScore::from_counts(static_cast<double>(overlap),
                                 static_cast<double>(cand_total),
                                 static_cast<double>(ref_total));
}

inline RougeScore rouge_n(std::string_view candidate,
                          std::string_view reference, int n) {
  return rouge_n_tokens(tokenize(candidate), tokenize(reference), n);
}

/// Summary-level LCS over token sequences (single-sequence variant).
inline RougeScore rouge_l_tokens(const std::vector<std::string>& candidate,
                                 const std::vector<std::string>& reference) {
  if (candidate.empty() || reference.empty()) return {};
  // rolling-row LCS table
  std::vector<std::uint32_t> prev(reference.size() + 1, 0);
  std::vector<std::uint32_t> curr(reference.size() + 1, 0);
  for (std::size_t i = 1; i <= candidate.size(); ++i) {
    for (std::size_t j = 1; j <= reference.size(); ++j) {
      if (candidate[i - 1] == reference[j - 1])
        curr[j] = prev[j - 1] + 1;
      else
        curr[j] = std::max(prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  return RougeScore::from_counts(static_cast<double>(prev[reference.size()]),
                                 static_cast<double>(candidate.size()),
                                 static_cast<double>(reference.size()));
}

inline RougeScore rouge_l(std::string_view candidate,
                          std::string_view reference) {
  return rouge_l_tokens(tokenize(candidate), tokenize(reference));
}

/// First three sentences of the document, space-joined.
inline std::string lead3(std::string_view document) {
  std::string out;
  auto sentences = segment_sentences(document);
  for (std::size_t i = 0; i < sentences.size() && i < 3; ++i) {
    if (!out.empty()) out.push_back(' ');
    out.append(sentences[i].text);
  }
  return out;
}

/// Aspect-aware extractive baseline: the first three sentences relevant to
/// the aspect (same relevance test as supervision synthesis), falling back
/// to plain lead3 when nothing matches.
inline std::string aspect_lead3(std::string_view document,
                                const Aspect& aspect) {
  const std::vector<std::string> terms = aspect_match_terms(aspect);
  std::string out;
  std::size_t taken = 0;
  for (const auto& sentence : segment_sentences(document)) {
    if (!mentions(sentence, terms)) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(sentence.text);
    if (++taken == 3) break;
  }
  if (taken == 0) return lead3(document);
  return out;
}

struct RougeReport {
  RougeScore rouge1, rouge2, rougeL;
  std::size_t pairs = 0;
};

// Accumulates per-pair scores and reports their unweighted means. Summation
// follows add() order so a report is reproducible bit-for-bit.
class RougeEvaluator {
 public:
  void add(std::string_view candidate, std::string_view reference) {
    std::vector<std::string> cand = tokenize(candidate);
    std::vector<std::string> ref = tokenize(reference);
    add_score(sum1_, rouge_n_tokens(cand, ref, 1));
    add_score(sum2_, rouge_n_tokens(cand, ref, 2));
    add_score(sumL_, rouge_l_tokens(cand, ref));
    ++pairs_;
  }

  RougeReport report() const {
    if (pairs_ == 0) throw DataError("no candidate/reference pairs to score");
    RougeReport rep;
    rep.rouge1 = mean(sum1_);
    rep.rouge2 = mean(sum2_);
    rep.rougeL = mean(sumL_);
    rep.pairs = pairs_;
    return rep;
  }

  std::size_t pairs() const { return pairs_; }

 private:
  struct Sums {
    double p = 0, r = 0, f = 0;
  };
  static void add_score(Sums& sums, const RougeScore& s) {
    sums.p += s.precision;
    sums.r += s.recall;
    sums.f += s.f1;
  }
  RougeScore mean(const Sums& sums) const {
    RougeScore s;
    s.precision = sums.p / static_cast<double>(pairs_);
    s.recall = sums.r / static_cast<double>(pairs_);
    s.f1 = sums.f / static_cast<double>(pairs_);
    return s;
  }
  Sums sum1_, sum2_, sumL_;
  std::size_t pairs_ = 0;
};

inline RougeReport evaluate(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  RougeEvaluator evaluator;
  for (const auto& [cand, ref] : pairs) evaluator.add(cand, ref);
  return evaluator.report();
}

inline json rouge_report_json(const RougeReport& report) {
  auto score = [](const RougeScore& s) {
    json j;
    j["p"] = s.precision;
    j["r"] = s.recall;
    j["f"] = s.f1;
    return j;
  };
  json j;
  j["rouge1"] = score(report.rouge1);
  j["rouge2"] = score(report.rouge2);
  j["rougeL"] = score(report.rougeL);
  j["pairs"] = report.pairs;
  return j;
}

}  // namespace aspectforge

#endif  // ASPECTFORGE_ROUGE_HPP
