#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "aspectforge/rng.hpp"
#include "aspectforge/rouge.hpp"
#include "support/oracles.hpp"

using namespace aspectforge;

TEST_CASE("rouge_n hand-computed spot checks") {
  auto identical = rouge_n("Bees make honey.", "Bees make honey.", 1);
  CHECK(identical.precision == doctest::Approx(1.0));
  CHECK(identical.recall == doctest::Approx(1.0));
  CHECK(identical.f1 == doctest::Approx(1.0));

  auto partial = rouge_n("the cat sat", "the cat", 1);
  CHECK(partial.precision == doctest::Approx(2.0 / 3.0));
  CHECK(partial.recall == doctest::Approx(1.0));
  CHECK(partial.f1 == doctest::Approx(0.8));

  auto disjoint = rouge_n("alpha beta", "gamma delta", 1);
  CHECK(disjoint.precision == 0.0);
  CHECK(disjoint.recall == 0.0);
  CHECK(disjoint.f1 == 0.0);

  auto empty = rouge_n("", "the cat", 1);
  CHECK(empty.f1 == 0.0);
}

TEST_CASE("rouge_n clipping caps repeated candidate grams") {
  // candidate repeats "the" three times; reference has it once
  auto s = rouge_n("the the the", "the cat", 1);
  CHECK(s.precision == doctest::Approx(1.0 / 3.0));
  CHECK(s.recall == doctest::Approx(0.5));
}

TEST_CASE("rouge_l hand-computed spot checks") {
  auto s = rouge_l("a b c d", "a c d");
  CHECK(s.precision == doctest::Approx(3.0 / 4.0));
  CHECK(s.recall == doctest::Approx(1.0));
  CHECK(s.f1 == doctest::Approx(6.0 / 7.0));

  auto identical = rouge_l("x y z", "x y z");
  CHECK(identical.f1 == doctest::Approx(1.0));

  auto reversed = rouge_l("c b a", "a b c");
  CHECK(reversed.precision == doctest::Approx(1.0 / 3.0));
  CHECK(reversed.recall == doctest::Approx(1.0 / 3.0));

  CHECK(rouge_l("", "a b").f1 == 0.0);
}

TEST_CASE("lead3 takes the first three sentences") {
  CHECK(lead3("One. Two. Three. Four. Five.") == "One. Two. Three.");
  CHECK(lead3("One. Two.") == "One. Two.");
  CHECK(lead3("") == "");
}

TEST_CASE("aspect_lead3 takes matching sentences with lead3 fallback") {
  Aspect bees;
  bees.term = "bees";
  bees.neighbor_terms = {"insect"};
  const std::string doc =
      "Markets opened higher. Bees swarmed the park. Rain is coming. "
      "An insect exhibit opened. Bees need water. Nothing else happened.";
  CHECK(aspect_lead3(doc, bees) ==
        "Bees swarmed the park. An insect exhibit opened. Bees need water.");

  Aspect absent;
  absent.term = "zeppelin";
  CHECK(aspect_lead3(doc, absent) ==
        "Markets opened higher. Bees swarmed the park. Rain is coming.");

  Aspect everywhere;
  everywhere.term = "bees";
  const std::string all = "Bees one. Bees two. Bees three. Bees four.";
  CHECK(aspect_lead3(all, everywhere) == "Bees one. Bees two. Bees three.");
}

TEST_CASE("evaluate averages per-pair scores") {
  RougeEvaluator ev;
  ev.add("same text here", "same text here");  // F1 = 1
  ev.add("alpha beta", "gamma delta");         // F1 = 0
  auto report = ev.report();
  CHECK(report.pairs == 2);
  CHECK(report.rouge1.f1 == doctest::Approx(0.5));

  RougeEvaluator single;
  single.add("the cat sat", "the cat");
  CHECK(single.report().rouge1.f1 == doctest::Approx(0.8));

  RougeEvaluator empty;
  CHECK_THROWS_AS(empty.report(), DataError);
}

TEST_CASE("identity property on token sequences") {
  DetRng rng(5);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e"};
  for (int round = 0; round < 50; ++round) {
    std::vector<std::string> tokens;
    std::size_t len = 2 + rng.below(10);
    for (std::size_t i = 0; i < len; ++i)
      tokens.push_back(vocab[rng.below(vocab.size())]);
    CHECK(rouge_n_tokens(tokens, tokens, 1).f1 == doctest::Approx(1.0));
    CHECK(rouge_n_tokens(tokens, tokens, 2).f1 == doctest::Approx(1.0));
    CHECK(rouge_l_tokens(tokens, tokens).f1 == doctest::Approx(1.0));
  }
}

TEST_CASE("precision and recall never exceed 1 under clipping") {
  DetRng rng(6);
  const std::vector<std::string> vocab = {"a", "b", "c"};
  for (int round = 0; round < 300; ++round) {
    auto draw = [&] {
      std::vector<std::string> tokens;
      std::size_t len = rng.below(12);
      for (std::size_t i = 0; i < len; ++i)
        tokens.push_back(vocab[rng.below(vocab.size())]);
      return tokens;
    };
    auto cand = draw();
    auto ref = draw();
    for (int n = 1; n <= 2; ++n) {
      auto s = rouge_n_tokens(cand, ref, n);
      CHECK(s.precision <= 1.0 + 1e-12);
      CHECK(s.recall <= 1.0 + 1e-12);
    }
    auto l = rouge_l_tokens(cand, ref);
    CHECK(l.precision <= 1.0 + 1e-12);
    CHECK(l.recall <= 1.0 + 1e-12);
  }
}

TEST_CASE("appending reference tokens never decreases recall") {
  DetRng rng(8);
  const std::vector<std::string> vocab = {"a", "b", "c", "d"};
  for (int round = 0; round < 200; ++round) {
    std::vector<std::string> ref;
    std::size_t rlen = 2 + rng.below(8);
    for (std::size_t i = 0; i < rlen; ++i)
      ref.push_back(vocab[rng.below(vocab.size())]);
    std::vector<std::string> cand;
    std::size_t clen = rng.below(6);
    for (std::size_t i = 0; i < clen; ++i)
      cand.push_back(vocab[rng.below(vocab.size())]);
    auto before = rouge_n_tokens(cand, ref, 1);
    auto extended = cand;
    extended.push_back(ref[rng.below(ref.size())]);
    auto after = rouge_n_tokens(extended, ref, 1);
    CHECK(after.recall >= before.recall - 1e-12);
    auto before2 = rouge_n_tokens(cand, ref, 2);
    auto after2 = rouge_n_tokens(extended, ref, 2);
    CHECK(after2.recall >= before2.recall - 1e-12);
  }
}

TEST_CASE("oracle equivalence, exhaustive over short sequences") {
  // all candidate/reference pairs of length <= 4 over a 3-token vocabulary
  // (the acceptance suite runs the full <= 6 sweep)
  const std::vector<std::string> vocab = {"a", "b", "c"};
  std::vector<std::vector<std::string>> sequences{{}};
  std::size_t start = 0;
  for (int len = 1; len <= 4; ++len) {
    std::size_t end = sequences.size();
    for (std::size_t i = start; i < end; ++i)
      for (const auto& v : vocab) {
        auto next = sequences[i];
        next.push_back(v);
        sequences.push_back(std::move(next));
      }
    start = end;
  }
  for (const auto& cand : sequences) {
    for (const auto& ref : sequences) {
      for (int n = 1; n <= 2; ++n) {
        auto got = rouge_n_tokens(cand, ref, n);
        auto want = oracles::oracle_rouge_n(cand, ref, n);
        CHECK(std::abs(got.precision - want.precision) < 1e-9);
        CHECK(std::abs(got.recall - want.recall) < 1e-9);
        CHECK(std::abs(got.f1 - want.f1) < 1e-9);
      }
      auto got = rouge_l_tokens(cand, ref);
      auto want = oracles::oracle_rouge_l(cand, ref, /*enumerate=*/true);
      CHECK(std::abs(got.precision - want.precision) < 1e-9);
      CHECK(std::abs(got.recall - want.recall) < 1e-9);
      CHECK(std::abs(got.f1 - want.f1) < 1e-9);
    }
  }
}
