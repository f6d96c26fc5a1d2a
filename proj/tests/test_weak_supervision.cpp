#include <doctest.h>

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aspectforge/weak_supervision.hpp"
#include "support/oracles.hpp"
#include "support/synth.hpp"

using namespace aspectforge;

namespace {

std::string fixture(const std::string& name) {
  return std::string(ASPECTFORGE_FIXTURE_DIR) + "/" + name;
}

ConceptIndex mini_index() {
  return ConceptIndex::build_from_file(fixture("mini_conceptnet.tsv"),
                                       IndexConfig{});
}

std::vector<EntityMention> seed_mentions(
    const std::vector<std::string>& texts) {
  std::vector<EntityMention> out;
  std::size_t pos = 0;
  for (const auto& t : texts) {
    out.push_back({t, pos, pos + t.size()});
    pos += t.size() + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("expand_aspects mints the paper's insect aspect from bees") {
  ConceptIndex index = mini_index();
  auto aspects = expand_aspects(seed_mentions({"bees"}), index, 10);
  REQUIRE(!aspects.empty());
  CHECK(aspects[0].term == "bees");
  CHECK(aspects[0].origin == AspectOrigin::kSeed);
  CHECK(aspects[0].source_seed == "bees");
  bool has_insect = false;
  for (const auto& a : aspects)
    if (a.term == "insect") {
      has_insect = true;
      CHECK(a.origin == AspectOrigin::kNeighbor);
      CHECK(a.source_seed == "bees");
      // the neighbor aspect carries its own neighbors for matching
      bool self_links_bee = false;
      for (const auto& t : a.neighbor_terms) self_links_bee |= (t == "bee");
      CHECK(self_links_bee);
    }
  CHECK(has_insect);
}

TEST_CASE("expand_aspects: empty seeds, overlap dedupe, seed wins") {
  ConceptIndex index = mini_index();
  CHECK(expand_aspects({}, index, 5).empty());

  // "vote" and "voter" share the neighbor "election": minted once
  auto aspects = expand_aspects(seed_mentions({"vote", "voter"}), index, 5);
  std::size_t election_count = 0;
  for (const auto& a : aspects)
    if (a.term == "election") ++election_count;
  CHECK(election_count == 1);

  // a term that is already a seed is not re-minted as a neighbor
  auto bees = expand_aspects(seed_mentions({"bee", "insect"}), index, 5);
  std::size_t insect_count = 0;
  for (const auto& a : bees)
    if (a.term == "insect") {
      ++insect_count;
      CHECK(a.origin == AspectOrigin::kSeed);
    }
  CHECK(insect_count == 1);
}

TEST_CASE("expand_aspects order: seeds first, then neighbors by weight") {
  ConceptIndex index = mini_index();
  auto aspects = expand_aspects(seed_mentions({"bees"}), index, 10);
  REQUIRE(aspects.size() >= 4);
  CHECK(aspects[0].term == "bees");
  CHECK(aspects[1].term == "insect");      // weight 2.0
  CHECK(aspects[2].term == "honey");       // weight 1.5
  CHECK(aspects[3].term == "pollinator");  // weight 1.0
}

TEST_CASE("mentions: plural fold, phrase match, miss") {
  Sentence s1{"Bees pollinate flowers", 0};
  CHECK(mentions(s1, {"bee"}));
  Sentence s2{"The sky is blue", 0};
  CHECK_FALSE(mentions(s2, {"insect"}));
  Sentence s3{"He visited New York today", 0};
  CHECK(mentions(s3, {"new york"}));
  // multiword: fold applies to the final word only
  Sentence s4{"He toured New Yorks finest parks", 0};
  CHECK(mentions(s4, {"new york"}));
  Sentence s5{"A newer york visit", 0};
  CHECK_FALSE(mentions(s5, {"new york"}));
}

TEST_CASE("synthesize_summary keeps exactly the relevant sentences") {
  Aspect insect;
  insect.term = "insect";
  insect.origin = AspectOrigin::kNeighbor;
  insect.source_seed = "bees";
  insect.neighbor_terms = {"bee", "bug"};

  std::vector<Sentence> generic = {{"Bees are vanishing.", 0},
                                   {"Officials met Monday.", 1}};
  CHECK(synthesize_summary(generic, insect) == "Bees are vanishing.");

  Aspect officials;
  officials.term = "officials";
  CHECK(synthesize_summary(generic, officials) == "Officials met Monday.");

  Aspect nothing;
  nothing.term = "zeppelin";
  CHECK(synthesize_summary(generic, nothing) == "");

  Aspect everything;
  everything.term = "the";  // matches neither; use neighbors instead
  everything.neighbor_terms = {"bees", "officials"};
  CHECK(synthesize_summary(generic, everything) ==
        "Bees are vanishing. Officials met Monday.");
}

TEST_CASE("build_weak_examples on the bundled fixture record") {
  ConceptIndex index = mini_index();
  DocumentRecord record;
  record.id = "bees-1";
  record.summary =
      "Bees are vanishing across the country. Officials met Monday to "
      "discuss the problem.";
  record.document = record.summary;

  WeakSupConfig config;
  RecordStats stats;
  auto examples = build_weak_examples(record, index, config, {}, &stats);
  REQUIRE(!examples.empty());

  std::set<std::string> aspect_terms;
  for (const auto& ex : examples) aspect_terms.insert(ex.aspect.term);
  CHECK(aspect_terms.count("bees"));
  CHECK(aspect_terms.count("insect"));

  auto generic = segment_sentences(record.summary);
  for (const auto& ex : examples) {
    CHECK(!ex.summary.empty());
    CHECK(is_sentence_subsequence(generic, ex.summary));
    if (ex.aspect.term == "insect")
      CHECK(ex.summary == "Bees are vanishing across the country.");
    if (ex.aspect.term == "monday")
      CHECK(ex.summary == "Officials met Monday to discuss the problem.");
  }
  CHECK(stats.emitted == examples.size());
}

TEST_CASE("build_weak_examples: no seeds means no examples") {
  ConceptIndex index = mini_index();
  DocumentRecord record;
  record.id = "plain";
  record.summary = "the cat sat. nothing happened.";
  record.document = record.summary;
  RecordStats stats;
  auto examples =
      build_weak_examples(record, index, WeakSupConfig{}, {}, &stats);
  CHECK(examples.empty());
  CHECK(stats.emitted == 0);
}

TEST_CASE("max_aspects_per_doc caps at the first seed aspect") {
  ConceptIndex index = mini_index();
  DocumentRecord record;
  record.id = "bees-1";
  record.summary = "Bees are vanishing. Officials met Monday.";
  record.document = record.summary;
  WeakSupConfig config;
  config.max_aspects_per_doc = 1;
  auto examples = build_weak_examples(record, index, config);
  REQUIRE(examples.size() == 1);
  CHECK(examples[0].aspect.term == "bees");
  CHECK(examples[0].aspect.origin == AspectOrigin::kSeed);
}

TEST_CASE("external annotations feed the seed set") {
  ConceptIndex index = mini_index();
  DocumentRecord record;
  record.id = "plain-1";
  record.summary = "the cat sat on the mat. nothing notable happened.";
  record.document = record.summary;
  std::vector<EntityMention> external{{"cat", 4, 7}};
  auto examples =
      build_weak_examples(record, index, WeakSupConfig{}, external);
  REQUIRE(!examples.empty());
  CHECK(examples[0].aspect.term == "cat");
  // lowercase "nothing" does not open a new sentence, so the summary is a
  // single segment and the whole of it mentions the aspect
  CHECK(examples[0].summary ==
        "the cat sat on the mat. nothing notable happened.");
}

TEST_CASE("extraction soundness against the independent oracle") {
  // 200 synthetic records; every emitted example re-checked sentence by
  // sentence with the oracle's own matcher, both directions.
  auto corpus = synth::make_corpus(200, 7);
  std::istringstream dump(synth::conceptnet_dump());
  ConceptIndex index = ConceptIndex::build(dump, IndexConfig{});
  WeakSupConfig config;

  std::size_t examples_total = 0;
  for (const auto& record : corpus) {
    auto generic = segment_sentences(record.summary);
    for (const auto& ex : build_weak_examples(record, index, config)) {
      ++examples_total;
      std::vector<std::string> terms{ex.aspect.term};
      for (auto& [t, w] : index.neighbors(ex.aspect.term, config.neighbor_k))
        terms.push_back(t);

      std::string expected;
      for (const auto& s : generic) {
        if (!oracles::oracle_mentions(s.text, terms)) continue;
        if (!expected.empty()) expected.push_back(' ');
        expected += s.text;
      }
      CHECK(ex.summary == expected);
      CHECK(is_sentence_subsequence(generic, ex.summary));
    }
  }
  CHECK(examples_total > 100);  // the fixture really exercises the path
}

TEST_CASE("seed completeness: every seed with a relevant sentence emits") {
  auto corpus = synth::make_corpus(50, 11);
  std::istringstream dump(synth::conceptnet_dump());
  ConceptIndex index = ConceptIndex::build(dump, IndexConfig{});
  WeakSupConfig config;
  config.max_aspects_per_doc = 1000;  // no cap interference

  for (const auto& record : corpus) {
    auto generic = segment_sentences(record.summary);
    auto examples = build_weak_examples(record, index, config);
    std::set<std::string> emitted;
    for (const auto& ex : examples) emitted.insert(ex.aspect.term);
    for (const auto& mention : extract_entities(record.summary)) {
      std::string term = normalize_term(mention.text);
      std::vector<std::string> terms{term};
      for (auto& [t, w] : index.neighbors(term, config.neighbor_k))
        terms.push_back(t);
      bool relevant = false;
      for (const auto& s : generic)
        relevant |= oracles::oracle_mentions(s.text, terms);
      if (relevant) CHECK(emitted.count(term));
    }
  }
}

TEST_CASE("determinism: identical inputs give identical example lists") {
  auto corpus = synth::make_corpus(20, 3);
  std::istringstream dump1(synth::conceptnet_dump());
  ConceptIndex index = ConceptIndex::build(dump1, IndexConfig{});
  for (const auto& record : corpus) {
    auto a = build_weak_examples(record, index, WeakSupConfig{});
    auto b = build_weak_examples(record, index, WeakSupConfig{});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].aspect == b[i].aspect);
      CHECK(a[i].summary == b[i].summary);
    }
  }
}
