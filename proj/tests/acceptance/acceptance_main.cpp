// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed (non-optional) criteria. Usage:
//   aspectforge_acceptance <path-to-aspectforge-cli>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aspectforge/aspectforge.hpp"
#include "../support/oracles.hpp"
#include "../support/synth.hpp"

namespace af = aspectforge;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void pass(const std::string& name, const std::string& detail) {
  std::cout << "PASS  " << name << "  (" << detail << ")\n";
}

void fail(const std::string& name, const std::string& detail) {
  ++g_failures;
  std::cout << "FAIL  " << name << "  (" << detail << ")\n";
}

void skip(const std::string& name, const std::string& detail) {
  std::cout << "SKIP  " << name << "  (" << detail << ")\n";
}

void outcome(bool ok, const std::string& name, const std::string& detail) {
  ok ? pass(name, detail) : fail(name, detail);
}

std::string fixture(const std::string& name) {
  return std::string(ASPECTFORGE_FIXTURE_DIR) + "/" + name;
}

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "aspectforge_acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing:" + path.string() + ">";
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct SynthSetup {
  std::string corpus_path;
  std::string dump_path;
  std::string wiki_path;
  std::vector<af::DocumentRecord> corpus;
};

SynthSetup synth_setup(std::size_t n, std::uint64_t seed, bool categorized,
                       const std::string& tag) {
  SynthSetup s;
  fs::path base = work_dir() / tag;
  fs::create_directories(base);
  s.corpus = synth::make_corpus(n, seed, categorized);
  s.corpus_path = (base / "corpus.jsonl").string();
  s.dump_path = (base / "conceptnet.tsv").string();
  s.wiki_path = (base / "wiki.jsonl").string();
  synth::write_corpus_file(s.corpus_path, s.corpus);
  synth::write_text_file(s.dump_path, synth::conceptnet_dump());
  synth::write_text_file(s.wiki_path, synth::wiki_store_jsonl());
  return s;
}

// --- 1. construction soundness ---------------------------------------------

void criterion_construction_soundness() {
  const std::string name = "construction-soundness";
  auto t0 = std::chrono::steady_clock::now();
  auto setup = synth_setup(1000, 20240817, false, "soundness");
  std::istringstream dump(synth::conceptnet_dump());
  af::ConceptIndex index = af::ConceptIndex::build(dump, af::IndexConfig{});
  af::WeakSupConfig config;

  std::size_t examples = 0, violations = 0;
  for (const auto& record : setup.corpus) {
    auto generic = af::segment_sentences(record.summary);
    for (const auto& ex : af::build_weak_examples(record, index, config)) {
      ++examples;
      std::vector<std::string> terms{ex.aspect.term};
      for (auto& [t, w] :
           index.neighbors(ex.aspect.term, config.neighbor_k))
        terms.push_back(t);
      std::string expected;
      for (const auto& s : generic) {
        if (!oracles::oracle_mentions(s.text, terms)) continue;
        if (!expected.empty()) expected.push_back(' ');
        expected += s.text;
      }
      if (ex.summary != expected ||
          !af::is_sentence_subsequence(generic, ex.summary))
        ++violations;
    }
  }
  double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << examples << " examples, " << violations << " violations, "
         << elapsed << "s";
  outcome(examples > 0 && violations == 0 && elapsed < 60.0, name,
          detail.str());
}

// --- 2. Fig. 1 anchor -------------------------------------------------------

void criterion_fig1_anchor() {
  const std::string name = "fig1-anchor";
  af::ConceptIndex index = af::ConceptIndex::build_from_file(
      fixture("mini_conceptnet.tsv"), af::IndexConfig{});
  auto corpus = af::load_corpus(fixture("mini_corpus.jsonl"));
  const af::DocumentRecord* bees = nullptr;
  for (const auto& rec : corpus)
    if (rec.id == "bees-1") bees = &rec;
  if (!bees) {
    fail(name, "fixture record bees-1 missing");
    return;
  }

  auto examples = af::build_weak_examples(*bees, index, af::WeakSupConfig{});
  bool seed_bees = false, aspect_insect = false, exact = false;
  for (const auto& ex : examples) {
    if (ex.aspect.term == "bees" && ex.aspect.origin == af::AspectOrigin::kSeed)
      seed_bees = true;
    if (ex.aspect.term == "insect") {
      aspect_insect = true;
      if (ex.aspect.origin == af::AspectOrigin::kNeighbor &&
          ex.aspect.source_seed == "bees" &&
          ex.summary == "Bees are vanishing across the country.")
        exact = true;
    }
  }
  outcome(seed_bees && aspect_insect && exact, name,
          "seed bees -> aspect insect, exact bee-sentence summary");
}

// --- 3. related-word contract ----------------------------------------------

std::ostringstream g_null_log;

bool check_related_contract(const std::string& out_dir,
                            const std::string& wiki_store,
                            std::size_t& examples, std::size_t& violations) {
  af::OfflineWikiStore store;
  if (!wiki_store.empty()) store = af::OfflineWikiStore::load(wiki_store);
  af::JsonlReader reader(out_dir + "/train_inputs.jsonl");
  af::json j;
  std::size_t line_no = 0;
  while (reader.next(j, line_no)) {
    ++examples;
    auto words = j["related_words"].get<std::vector<std::string>>();
    auto extract = store.lookup(j["aspect"].get<std::string>());
    bool ok = words.size() <= 10;
    if (!extract) {
      ok = ok && words.empty();
    } else {
      af::ModelInput parsed =
          af::parse_input(j["input"].get<std::string>());
      auto doc_tokens = af::tokenize(parsed.document);
      std::set<std::string> doc_set(doc_tokens.begin(), doc_tokens.end());
      for (const auto& w : words)
        ok = ok && doc_set.count(w) > 0 && extract->token_set.count(w) > 0;
    }
    if (!ok) ++violations;
  }
  return violations == 0;
}

void criterion_related_word_contract() {
  const std::string name = "related-word-contract";
  std::size_t examples = 0, violations = 0;

  af::PipelineConfig mini;
  mini.corpus_path = fixture("mini_corpus.jsonl");
  mini.conceptnet_path = fixture("mini_conceptnet.tsv");
  mini.wiki_store_path = fixture("mini_wiki.jsonl");
  mini.annotations_path = fixture("annotations.jsonl");
  mini.output_dir = (work_dir() / "related_mini").string();
  af::run_weaksup(mini, nullptr, g_null_log);
  bool mini_ok = check_related_contract(mini.output_dir,
                                        mini.wiki_store_path, examples,
                                        violations);

  auto setup = synth_setup(300, 99, false, "related_synth");
  af::PipelineConfig big;
  big.corpus_path = setup.corpus_path;
  big.conceptnet_path = setup.dump_path;
  big.wiki_store_path = setup.wiki_path;
  big.output_dir = (work_dir() / "related_synth_out").string();
  af::run_weaksup(big, nullptr, g_null_log);
  bool big_ok = check_related_contract(big.output_dir, big.wiki_store_path,
                                       examples, violations);

  std::ostringstream detail;
  detail << examples << " examples checked, " << violations << " violations";
  outcome(mini_ok && big_ok && examples > 0, name, detail.str());
}

// --- 4. input-format round trip ---------------------------------------------

void criterion_input_round_trip() {
  const std::string name = "input-format-round-trip";
  af::DetRng rng(424242);
  const std::string aspect_chars =
      "abcdefghijklmnopqrstuvwxyz0123456789 .-'";
  const std::string word_chars = "abcdefghijklmnopqrstuvwxyz0123456789.-'";
  const std::string doc_chars = "abcdefghij ABC:<>s\n\t.!?";
  auto draw = [&](const std::string& alphabet, std::size_t len) {
    std::string out;
    for (std::size_t i = 0; i < len; ++i)
      out.push_back(alphabet[rng.below(alphabet.size())]);
    return out;
  };

  std::size_t mismatches = 0;
  for (int round = 0; round < 10000; ++round) {
    af::ModelInput input;
    input.aspect = draw(aspect_chars, rng.below(16));
    std::size_t words = rng.below(6);
    for (std::size_t w = 0; w < words; ++w)
      input.related.push_back(draw(word_chars, 1 + rng.below(10)));
    input.document = draw(doc_chars, rng.below(120));
    af::ModelInput back = af::parse_input(af::serialize_input(input));
    if (!(back == input)) ++mismatches;
  }

  // golden bytes
  std::istringstream golden(file_bytes(fixture("golden_inputs.txt")));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(golden, line)) lines.push_back(line);
  bool golden_ok =
      lines.size() == 3 &&
      af::serialize_input(
          {"insect", {"bees", "honey"}, "Bees make honey."}) == lines[0] &&
      af::serialize_input({"vote", {}, "Doc."}) == lines[1] &&
      af::serialize_input({"new york",
                           {"city", "election", "turnout"},
                           "The mayor spoke. Voters listened."}) == lines[2];

  std::ostringstream detail;
  detail << "10000 fuzzed inputs, " << mismatches << " mismatches, golden "
         << (golden_ok ? "exact" : "MISMATCH");
  outcome(mismatches == 0 && golden_ok, name, detail.str());
}

// --- 5 & 6. ROUGE oracle equivalence and spot checks ------------------------

void criterion_rouge_oracle() {
  const std::string name = "rouge-oracle-equivalence";
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::string> vocab = {"a", "b", "c"};
  std::vector<std::vector<std::string>> sequences{{}};
  std::size_t start = 0;
  for (int len = 1; len <= 6; ++len) {
    std::size_t end = sequences.size();
    for (std::size_t i = start; i < end; ++i)
      for (const auto& v : vocab) {
        auto next = sequences[i];
        next.push_back(v);
        sequences.push_back(std::move(next));
      }
    start = end;
  }

  std::size_t pairs = 0, mismatches = 0;
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9; };
  for (const auto& cand : sequences) {
    for (const auto& ref : sequences) {
      ++pairs;
      for (int n = 1; n <= 2; ++n) {
        auto got = af::rouge_n_tokens(cand, ref, n);
        auto want = oracles::oracle_rouge_n(cand, ref, n);
        if (!close(got.precision, want.precision) ||
            !close(got.recall, want.recall) || !close(got.f1, want.f1))
          ++mismatches;
      }
      auto got = af::rouge_l_tokens(cand, ref);
      auto want = oracles::oracle_rouge_l(cand, ref, /*enumerate=*/true);
      if (!close(got.precision, want.precision) ||
          !close(got.recall, want.recall) || !close(got.f1, want.f1))
        ++mismatches;
    }
  }

  // 50 random longer pairs, memoized-recursion oracle
  af::DetRng rng(31337);
  const std::vector<std::string> wide_vocab = {"a", "b", "c", "d", "e"};
  for (int round = 0; round < 50; ++round) {
    auto draw = [&](std::size_t min_len, std::size_t spread) {
      std::vector<std::string> tokens;
      std::size_t len = min_len + rng.below(spread);
      for (std::size_t i = 0; i < len; ++i)
        tokens.push_back(wide_vocab[rng.below(wide_vocab.size())]);
      return tokens;
    };
    auto cand = draw(10, 30);
    auto ref = draw(10, 30);
    ++pairs;
    for (int n = 1; n <= 2; ++n) {
      auto got = af::rouge_n_tokens(cand, ref, n);
      auto want = oracles::oracle_rouge_n(cand, ref, n);
      if (!close(got.precision, want.precision) ||
          !close(got.recall, want.recall) || !close(got.f1, want.f1))
        ++mismatches;
    }
    auto got = af::rouge_l_tokens(cand, ref);
    auto want = oracles::oracle_rouge_l(cand, ref, /*enumerate=*/false);
    if (!close(got.precision, want.precision) ||
        !close(got.recall, want.recall) || !close(got.f1, want.f1))
      ++mismatches;
  }

  std::ostringstream detail;
  detail << pairs << " pairs, " << mismatches << " mismatches, "
         << seconds_since(t0) << "s";
  outcome(mismatches == 0, name, detail.str());
}

void criterion_metric_spot_checks() {
  const std::string name = "metric-spot-checks";
  auto r1 = af::rouge_n("the cat sat", "the cat", 1);
  auto rl = af::rouge_l("a b c d", "a c d");
  bool ok = std::abs(r1.f1 - 0.8) <= 1e-9 &&
            std::abs(rl.f1 - 6.0 / 7.0) <= 1e-9;
  std::ostringstream detail;
  detail << "R-1 F1 = " << r1.f1 << ", R-L F1 = " << rl.f1;
  outcome(ok, name, detail.str());
}

// --- 7. MA-News-style generator ----------------------------------------------

void criterion_manews_generator() {
  const std::string name = "manews-generator";
  auto t0 = std::chrono::steady_clock::now();
  auto setup = synth_setup(600, 606060, true, "manews");

  af::PipelineConfig cfg;
  cfg.corpus_path = setup.corpus_path;
  cfg.output_dir = (work_dir() / "manews_out_a").string();
  cfg.sizes = {280, 10, 10};
  cfg.seed = 7;
  af::run_manews(cfg, g_null_log);

  af::PipelineConfig cfg2 = cfg;
  cfg2.output_dir = (work_dir() / "manews_out_b").string();
  af::run_manews(cfg2, g_null_log);

  auto split_info = [&](const std::string& dir, const char* name_,
                        std::size_t& lines, std::set<std::string>& ids) {
    af::JsonlReader reader(dir + "/" + name_ + std::string(".jsonl"));
    af::json j;
    std::size_t line_no = 0;
    while (reader.next(j, line_no)) {
      ++lines;
      for (const auto& entry : j["provenance"])
        ids.insert(entry.at(0).get<std::string>());
    }
  };
  std::size_t train_n = 0, dev_n = 0, test_n = 0;
  std::set<std::string> train_ids, dev_ids, test_ids;
  split_info(cfg.output_dir, "train", train_n, train_ids);
  split_info(cfg.output_dir, "dev", dev_n, dev_ids);
  split_info(cfg.output_dir, "test", test_n, test_ids);

  bool sizes_ok = train_n == 280 && dev_n == 10 && test_n == 10;
  bool leakage = false;
  for (const auto& id : dev_ids) leakage |= train_ids.count(id) > 0;
  for (const auto& id : test_ids)
    leakage |= train_ids.count(id) > 0 || dev_ids.count(id) > 0;

  bool identical = true;
  for (const char* f :
       {"train.jsonl", "dev.jsonl", "test.jsonl", "manifest.json"})
    identical = identical &&
                file_bytes(fs::path(cfg.output_dir) / f) ==
                    file_bytes(fs::path(cfg2.output_dir) / f);

  double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << train_n << "/" << dev_n << "/" << test_n << ", leakage "
         << (leakage ? "YES" : "none") << ", rerun "
         << (identical ? "identical" : "DIFFERS") << ", " << elapsed << "s";
  outcome(sizes_ok && !leakage && identical && elapsed < 10.0, name,
          detail.str());
}

// --- 8 & 9. determinism, crash-resume, throughput ---------------------------

int run_cli(const std::string& command) {
  int status = std::system(command.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return 128;
}

void criterion_determinism_resume(const std::string& cli,
                                  double& records_per_min) {
  const std::string name = "determinism-and-resume";
  auto setup = synth_setup(1000, 515151, false, "determinism");

  auto run_in_process = [&](const std::string& out, std::size_t workers) {
    af::PipelineConfig cfg;
    cfg.corpus_path = setup.corpus_path;
    cfg.conceptnet_path = setup.dump_path;
    cfg.wiki_store_path = setup.wiki_path;
    cfg.output_dir = out;
    cfg.workers = workers;
    return af::run_weaksup(cfg, nullptr, g_null_log);
  };
  auto report_a = run_in_process((work_dir() / "det_a").string(), 1);
  run_in_process((work_dir() / "det_b").string(), 1);
  run_in_process((work_dir() / "det_c").string(), 2);
  records_per_min = report_a.timings.count("construct_records_per_min")
                        ? report_a.timings.at("construct_records_per_min")
                        : 0.0;

  bool rerun_identical = true, workers_identical = true;
  for (const char* f : {"train_inputs.jsonl", "weak_examples.jsonl"}) {
    std::string a = file_bytes(work_dir() / "det_a" / f);
    rerun_identical =
        rerun_identical && a == file_bytes(work_dir() / "det_b" / f);
    workers_identical =
        workers_identical && a == file_bytes(work_dir() / "det_c" / f);
  }
  auto report_sans_timings = [&](const char* dir) {
    auto j = nlohmann::json::parse(
        file_bytes(work_dir() / dir / "report.json"));
    j.erase("timings");
    return j;
  };
  bool reports_match =
      report_sans_timings("det_a") == report_sans_timings("det_b") &&
      report_sans_timings("det_a") == report_sans_timings("det_c");

  // crash-resume through the real binary: kill at record 137, resume, compare
  std::string flags = " weaksup --corpus " + setup.corpus_path +
                      " --conceptnet " + setup.dump_path + " --wiki-store " +
                      setup.wiki_path;
  std::string clean_dir = (work_dir() / "resume_clean").string();
  std::string crash_dir = (work_dir() / "resume_crash").string();
  int clean_rc =
      run_cli(cli + flags + " --out " + clean_dir + " 2>/dev/null");
  int crash_rc = run_cli(cli + flags + " --out " + crash_dir +
                         " --abort-after 137 2>/dev/null");
  int resume_rc = run_cli(cli + flags + " --out " + crash_dir +
                          " --resume 2>/dev/null");

  bool resume_identical =
      clean_rc == 0 && crash_rc == 9 && resume_rc == 0;
  for (const char* f : {"train_inputs.jsonl", "weak_examples.jsonl"})
    resume_identical = resume_identical &&
                       file_bytes(fs::path(clean_dir) / f) ==
                           file_bytes(fs::path(crash_dir) / f);
  if (resume_identical) {
    auto a = nlohmann::json::parse(
        file_bytes(fs::path(clean_dir) / "report.json"));
    auto b = nlohmann::json::parse(
        file_bytes(fs::path(crash_dir) / "report.json"));
    a.erase("timings");
    b.erase("timings");
    resume_identical = a == b;
  }

  std::ostringstream detail;
  detail << "rerun " << (rerun_identical ? "identical" : "DIFFERS")
         << ", workers " << (workers_identical ? "identical" : "DIFFER")
         << ", reports " << (reports_match ? "match" : "DIFFER")
         << ", crash rc=" << crash_rc << ", resume "
         << (resume_identical ? "identical" : "DIFFERS");
  outcome(rerun_identical && workers_identical && reports_match &&
              resume_identical,
          name, detail.str());
}

void criterion_throughput(double records_per_min) {
  const std::string name = "throughput";
  std::ostringstream detail;
  detail << static_cast<std::uint64_t>(records_per_min)
         << " records/min through the construction stage (offline wiki)";
  outcome(records_per_min >= 10000.0, name, detail.str());
}

// --- 10. optional large-scale Lead-3 probe ----------------------------------

void criterion_lead3_probe() {
  const std::string name = "lead3-vicinity (optional)";
  const char* path = std::getenv("ASPECTFORGE_MANEWS_TEST");
  if (!path || !fs::exists(path)) {
    skip(name,
         "set ASPECTFORGE_MANEWS_TEST to an MA-News-style test.jsonl to "
         "run; informative, not gating");
    return;
  }
  af::JsonlReader reader(path);
  af::RougeEvaluator evaluator;
  af::json j;
  std::size_t line_no = 0;
  while (reader.next(j, line_no)) {
    std::string document = j.at("document").get<std::string>();
    std::string summary = j.at("summary").get<std::string>();
    evaluator.add(af::lead3(document), summary);
  }
  auto report = evaluator.report();
  double r1 = report.rouge1.f1 * 100, r2 = report.rouge2.f1 * 100,
         rl = report.rougeL.f1 * 100;
  bool ok = std::abs(r1 - 21.50) <= 3.0 && std::abs(r2 - 6.90) <= 3.0 &&
            std::abs(rl - 14.10) <= 3.0;
  std::ostringstream detail;
  detail << "Lead-3 R1/R2/RL = " << r1 << "/" << r2 << "/" << rl
         << " vs 21.50/6.90/14.10 +-3";
  // informative: report the result either way without gating the suite
  if (ok)
    pass(name, detail.str());
  else
    skip(name, detail.str() + "; outside band, not gating");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: aspectforge_acceptance <path-to-aspectforge-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];
  if (!fs::exists(cli)) {
    std::cerr << "CLI binary not found: " << cli << "\n";
    return 2;
  }

  try {
    criterion_construction_soundness();
    criterion_fig1_anchor();
    criterion_related_word_contract();
    criterion_input_round_trip();
    criterion_rouge_oracle();
    criterion_metric_spot_checks();
    criterion_manews_generator();
    double records_per_min = 0;
    criterion_determinism_resume(cli, records_per_min);
    criterion_throughput(records_per_min);
    criterion_lead3_probe();
  } catch (const std::exception& e) {
    std::cerr << "acceptance suite aborted: " << e.what() << "\n";
    return 99;
  }

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED"
                                : std::to_string(g_failures) +
                                      " CRITERIA FAILED")
            << "\n";
  return g_failures;
}
