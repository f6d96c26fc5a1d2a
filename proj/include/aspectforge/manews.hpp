#ifndef ASPECTFORGE_MANEWS_HPP
#define ASPECTFORGE_MANEWS_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "aspectforge/corpus.hpp"
#include "aspectforge/errors.hpp"
#include "aspectforge/rng.hpp"
#include "aspectforge/text.hpp"

namespace aspectforge {

/// One synthetic aspect-summarization example: a document assembled from
/// paragraph-interleaved sources, paired with one component's category as
/// the aspect and that component's generic summary as the target.
struct SyntheticExample {
  std::string document;
  std::string aspect;
  std::string summary;
  std::vector<std::pair<std::string, int>> provenance;  // (doc id, para idx)
};

/// Interleaves the paragraphs of the target and distractor documents
/// round-robin (target first, exhausted sources skipped) and emits one
/// example per component document. All components must carry distinct
/// categories and at least one paragraph.
inline std::vector<SyntheticExample> assemble(
    const DocumentRecord& target,
    const std::vector<DocumentRecord>& distractors) {
  std::vector<const DocumentRecord*> components;
  components.push_back(&target);
  for (const auto& d : distractors) components.push_back(&d);

  for (const auto* rec : components)
    if (!rec->category)
      throw DataError("record \"" + rec->id + "\" has no category");
  for (std::size_t i = 0; i < components.size(); ++i)
    for (std::size_t j = i + 1; j < components.size(); ++j)
      if (*components[i]->category == *components[j]->category)
        throw DataError("records \"" + components[i]->id + "\" and \"" +
                        components[j]->id + "\" share category \"" +
                        *components[i]->category + "\"");

  std::vector<std::vector<std::string>> paragraphs;
  for (const auto* rec : components) {
    paragraphs.push_back(split_paragraphs(rec->document));
    if (paragraphs.back().empty())
      throw DataError("record \"" + rec->id + "\" has no paragraphs");
  }

  std::string document;
  std::vector<std::pair<std::string, int>> provenance;
  std::vector<std::size_t> cursor(components.size(), 0);
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (std::size_t c = 0; c < components.size(); ++c) {
      if (cursor[c] >= paragraphs[c].size()) continue;
      if (!document.empty()) document.append("\n\n");
      document.append(paragraphs[c][cursor[c]]);
      provenance.emplace_back(components[c]->id,
                              static_cast<int>(cursor[c]));
      ++cursor[c];
      progressed = true;
    }
  }

  std::vector<SyntheticExample> examples;
  for (const auto* rec : components) {
    SyntheticExample ex;
    ex.document = document;
    ex.aspect = *rec->category;
    ex.summary = rec->summary;
    ex.provenance = provenance;
    examples.push_back(std::move(ex));
  }
  return examples;
}

struct DatasetSizes {
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;
};

struct ManewsConfig {
  DatasetSizes sizes;
  std::uint64_t seed = 0;
  std::size_t docs_per_example = 2;  // one target + one distractor
};

struct ManewsDataset {
  std::vector<SyntheticExample> train, dev, test;
  // per split: aspect -> example count, for the balance report
  std::map<std::string, std::map<std::string, std::size_t>> histogram;
};

namespace detail {

// Draws examples for one split from its private document pool. Documents
// may be reused within a split when the pool is smaller than the request;
// they are never shared across splits.
inline std::vector<SyntheticExample> generate_split(
    const std::vector<const DocumentRecord*>& pool, std::size_t want,
    std::size_t docs_per_example, DetRng rng, const std::string& split_name) {
  std::vector<SyntheticExample> out;
  if (want == 0) return out;

  std::map<std::string, std::size_t> categories;
  for (const auto* rec : pool) ++categories[*rec->category];
  if (pool.size() < docs_per_example || categories.size() < 2)
    throw DataError("split \"" + split_name + "\" needs at least " +
                    std::to_string(docs_per_example) +
                    " categorized documents across 2+ categories; have " +
                    std::to_string(pool.size()) + " across " +
                    std::to_string(categories.size()));

  std::vector<const DocumentRecord*> deck;
  auto refill = [&] {
    deck = pool;
    rng.shuffle(deck);
  };
  refill();

  while (out.size() < want) {
    if (deck.size() < docs_per_example) refill();
    const DocumentRecord* target = deck.front();
    deck.erase(deck.begin());
    std::vector<DocumentRecord> distractors;
    std::vector<std::string> used{*target->category};
    for (std::size_t d = 0; d + 1 < docs_per_example; ++d) {
      std::size_t pick = deck.size();
      for (std::size_t i = 0; i < deck.size(); ++i) {
        if (std::find(used.begin(), used.end(), *deck[i]->category) ==
            used.end()) {
          pick = i;
          break;
        }
      }
      if (pick == deck.size()) {
        // leftovers lack a fresh category: reshuffle the full pool and scan
        refill();
        for (std::size_t i = 0; i < deck.size(); ++i) {
          if (std::find(used.begin(), used.end(), *deck[i]->category) ==
              used.end()) {
            pick = i;
            break;
          }
        }
        if (pick == deck.size())
          throw DataError("split \"" + split_name +
                          "\" cannot assemble documents spanning " +
                          std::to_string(docs_per_example) + " categories");
      }
      used.push_back(*deck[pick]->category);
      distractors.push_back(*deck[pick]);
      deck.erase(deck.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    for (auto& ex : assemble(*target, distractors)) {
      if (out.size() >= want) break;
      out.push_back(std::move(ex));
    }
  }
  return out;
}

}  // namespace detail

/// Builds train/dev/test collections of exactly the requested sizes.
/// Documents are stratified by category into three disjoint pools (test and
/// dev allocated first), so no source document leaks across splits.
/// Identical corpus + seed reproduce identical datasets.
inline ManewsDataset make_dataset(const std::vector<DocumentRecord>& corpus,
                                  const ManewsConfig& config) {
  if (config.docs_per_example < 2)
    throw ConfigError("docs_per_example must be >= 2");
  for (const auto& rec : corpus)
    if (!rec.category)
      throw DataError("record \"" + rec.id +
                      "\" has no category; the MA-News-style generator "
                      "requires categorized records");

  std::map<std::string, std::vector<const DocumentRecord*>> by_category;
  for (const auto& rec : corpus) by_category[*rec.category].push_back(&rec);
  for (auto& [cat, deck] : by_category) {
    DetRng rng(derive_seed(config.seed, "pool:" + cat));
    rng.shuffle(deck);
  }

  struct SplitPlan {
    const char* name;
    std::size_t want;
    std::vector<const DocumentRecord*> pool;
  };
  auto assemblies = [&](std::size_t n) {
    return (n + config.docs_per_example - 1) / config.docs_per_example;
  };
  std::vector<SplitPlan> plans{{"test", config.sizes.test, {}},
                               {"dev", config.sizes.dev, {}},
                               {"train", config.sizes.train, {}}};

  std::size_t total_available = corpus.size();
  std::size_t total_needed = 0;
  for (auto& plan : plans)
    if (plan.want > 0)
      total_needed += std::max<std::size_t>(config.docs_per_example, 2);
  if (total_available < total_needed)
    throw DataError("corpus too small: " + std::to_string(total_available) +
                    " categorized records, need at least " +
                    std::to_string(total_needed) +
                    " to keep split sources disjoint");

  // cycle categories while handing each split its document budget
  std::vector<std::string> category_names;
  for (auto& [cat, deck] : by_category) category_names.push_back(cat);
  for (auto& plan : plans) {
    if (plan.want == 0) continue;
    std::size_t budget =
        assemblies(plan.want) * config.docs_per_example;
    std::size_t idle_passes = 0;
    std::size_t c = 0;
    while (plan.pool.size() < budget && idle_passes < category_names.size()) {
      auto& deck = by_category[category_names[c]];
      if (deck.empty()) {
        ++idle_passes;
      } else {
        idle_passes = 0;
        plan.pool.push_back(deck.back());
        deck.pop_back();
      }
      c = (c + 1) % category_names.size();
    }
  }

  ManewsDataset dataset;
  for (auto& plan : plans) {
    DetRng rng(derive_seed(config.seed, std::string("split:") + plan.name));
    auto examples = detail::generate_split(plan.pool, plan.want,
                                           config.docs_per_example, rng,
                                           plan.name);
    auto& histogram = dataset.histogram[plan.name];
    for (const auto& ex : examples) ++histogram[ex.aspect];
    if (std::string(plan.name) == "test")
      dataset.test = std::move(examples);
    else if (std::string(plan.name) == "dev")
      dataset.dev = std::move(examples);
    else
      dataset.train = std::move(examples);
  }
  return dataset;
}

inline void write_synthetic_line(std::ostream& out,
                                 const SyntheticExample& ex) {
  json j;
  j["document"] = ex.document;
  j["aspect"] = ex.aspect;
  j["summary"] = ex.summary;
  json prov = json::array();
  for (const auto& [id, idx] : ex.provenance)
    prov.push_back(json::array({id, idx}));
  j["provenance"] = std::move(prov);
  write_jsonl_line(out, j);
}

}  // namespace aspectforge

#endif  // ASPECTFORGE_MANEWS_HPP
