#ifndef ASPECTFORGE_PIPELINE_HPP
#define ASPECTFORGE_PIPELINE_HPP

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aspectforge/aspect_seed.hpp"
#include "aspectforge/concept_graph.hpp"
#include "aspectforge/corpus.hpp"
#include "aspectforge/errors.hpp"
#include "aspectforge/jsonl.hpp"
#include "aspectforge/manews.hpp"
#include "aspectforge/model_input.hpp"
#include "aspectforge/rouge.hpp"
#include "aspectforge/salience.hpp"
#include "aspectforge/weak_supervision.hpp"

namespace aspectforge {

struct PipelineConfig {
  // inputs
  std::string corpus_path;
  std::string conceptnet_path;
  std::string index_cache_path;  // load if present, else build and save
  std::string wiki_store_path;
  bool wiki_live = false;
  std::string wiki_base_url;  // env ASPECTFORGE_WIKI_BASE_URL overrides
  std::string wiki_user_agent;
  int wiki_max_retries = 3;
  int wiki_timeout_sec = 10;
  int wiki_max_in_flight = 4;
  std::string annotations_path;

  // knobs
  std::size_t neighbor_k = 10;
  double min_edge_weight = 1.0;
  std::vector<std::string> relation_allowlist;
  std::size_t max_aspects_per_doc = 16;
  std::size_t related_word_limit = 10;
  std::size_t record_cap = 100000;
  std::string output_dir;
  std::size_t workers = 1;
  std::uint64_t seed = 0;

  // manews
  DatasetSizes sizes;
  std::size_t docs_per_example = 2;

  // eval
  std::string candidates_path;
  std::string references_path;

  // control
  bool resume = false;
  std::size_t abort_after = 0;  // testing hook: simulate a crash mid-run
};

namespace detail {

inline std::uint64_t fnv1a64(std::string_view s,
                             std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string join(const std::vector<std::string>& parts,
                        char sep = ',') {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out.push_back(sep);
    out.append(p);
  }
  return out;
}

// Fingerprint of the semantically relevant settings. Worker count and the
// control flags are excluded: they may vary between a run and its resume.
inline std::string config_fingerprint(const PipelineConfig& c) {
  std::ostringstream ss;
  ss << c.corpus_path << '\n'
     << c.conceptnet_path << '\n'
     << c.index_cache_path << '\n'
     << c.wiki_store_path << '\n'
     << c.wiki_live << '\n'
     << c.annotations_path << '\n'
     << c.neighbor_k << '\n'
     << c.min_edge_weight << '\n'
     << join(c.relation_allowlist) << '\n'
     << c.max_aspects_per_doc << '\n'
     << c.related_word_limit << '\n'
     << c.record_cap << '\n'
     << c.seed << '\n';
  std::ostringstream out;
  out << std::hex << fnv1a64(ss.str());
  return out.str();
}

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - since)
      .count();
}

}  // namespace detail

/// Run counters; `timings` is the only section expected to differ between
/// otherwise identical runs.
struct RunReport {
  std::uint64_t records_processed = 0;
  std::uint64_t records_skipped = 0;
  std::uint64_t records_zero_examples = 0;
  std::uint64_t examples_emitted = 0;
  std::uint64_t seed_aspects = 0;
  std::uint64_t neighbor_aspects = 0;
  std::uint64_t empty_summary_discarded = 0;
  std::uint64_t full_summary_kept = 0;
  std::uint64_t examples_unserializable = 0;
  std::uint64_t wiki_hits = 0;
  std::uint64_t wiki_misses = 0;
  std::vector<std::string> failed_record_ids;
  std::map<std::string, double> timings;

  json counters_json() const {
    json j;
    j["records_processed"] = records_processed;
    j["records_skipped"] = records_skipped;
    j["records_zero_examples"] = records_zero_examples;
    j["examples_emitted"] = examples_emitted;
    j["seed_aspects"] = seed_aspects;
    j["neighbor_aspects"] = neighbor_aspects;
    j["empty_summary_discarded"] = empty_summary_discarded;
    j["full_summary_kept"] = full_summary_kept;
    j["examples_unserializable"] = examples_unserializable;
    j["wiki_hits"] = wiki_hits;
    j["wiki_misses"] = wiki_misses;
    j["failed_record_ids"] = failed_record_ids;
    return j;
  }

  void restore_counters(const json& j) {
    records_processed = j.value("records_processed", std::uint64_t{0});
    records_skipped = j.value("records_skipped", std::uint64_t{0});
    records_zero_examples =
        j.value("records_zero_examples", std::uint64_t{0});
    examples_emitted = j.value("examples_emitted", std::uint64_t{0});
    seed_aspects = j.value("seed_aspects", std::uint64_t{0});
    neighbor_aspects = j.value("neighbor_aspects", std::uint64_t{0});
    empty_summary_discarded =
        j.value("empty_summary_discarded", std::uint64_t{0});
    full_summary_kept = j.value("full_summary_kept", std::uint64_t{0});
    examples_unserializable =
        j.value("examples_unserializable", std::uint64_t{0});
    wiki_hits = j.value("wiki_hits", std::uint64_t{0});
    wiki_misses = j.value("wiki_misses", std::uint64_t{0});
    if (j.contains("failed_record_ids"))
      failed_record_ids =
          j["failed_record_ids"].get<std::vector<std::string>>();
  }

  json to_json() const {
    json j = counters_json();
    json t;
    for (const auto& [name, ms] : timings) t[name] = ms;
    j["timings"] = std::move(t);
    return j;
  }
};

namespace detail {

struct ProcessedRecord {
  std::string weak_lines;
  std::string train_lines;
  RecordStats stats;
  std::uint64_t wiki_hits = 0;
  std::uint64_t wiki_misses = 0;
  std::uint64_t unserializable = 0;
  bool zero_examples = false;
  bool skipped = false;
  std::string id;
  std::string skip_reason;
};

inline ProcessedRecord process_record(
    const DocumentRecord& record, const ConceptIndex& index,
    const TfIdfModel& tfidf, WikiSource& wiki, const PipelineConfig& cfg,
    const std::vector<EntityMention>& external) {
  ProcessedRecord out;
  out.id = record.id;
  try {
    WeakSupConfig wcfg{cfg.neighbor_k, cfg.max_aspects_per_doc};
    std::vector<WeakExample> examples =
        build_weak_examples(record, index, wcfg, external, &out.stats);
    if (examples.empty()) out.zero_examples = true;
    auto ranking = tfidf.score_document(record.document);
    for (auto& ex : examples) {
      auto extract = wiki.lookup(ex.aspect.term);
      if (extract)
        ++out.wiki_hits;
      else
        ++out.wiki_misses;
      ex.related_words =
          related_words(ranking, extract.get(), cfg.related_word_limit);
      try {
        ex.model_input = serialize_input(
            {ex.aspect.term, ex.related_words, record.document});
      } catch (const DataError&) {
        ++out.unserializable;
        continue;
      }

      json weak;
      weak["doc_id"] = ex.doc_id;
      weak["aspect"] = ex.aspect.term;
      weak["aspect_origin"] = to_string(ex.aspect.origin);
      weak["source_seed"] = ex.aspect.source_seed;
      weak["summary"] = ex.summary;
      out.weak_lines += weak.dump();
      out.weak_lines += '\n';

      json train;
      train["doc_id"] = ex.doc_id;
      train["aspect"] = ex.aspect.term;
      train["summary"] = ex.summary;
      train["related_words"] = ex.related_words;
      train["input"] = ex.model_input;
      out.train_lines += train.dump();
      out.train_lines += '\n';
    }
  } catch (const WikiFetchError& e) {
    out = ProcessedRecord{};
    out.id = record.id;
    out.skipped = true;
    out.skip_reason = e.what();
  } catch (const DataError& e) {
    out = ProcessedRecord{};
    out.id = record.id;
    out.skipped = true;
    out.skip_reason = e.what();
  }
  return out;
}

// Checkpoint sidecar: written atomically after every record so a killed run
// can resume without recomputing or duplicating output.
struct Checkpoint {
  std::string fingerprint;
  std::uint64_t records_done = 0;
  std::uint64_t weak_bytes = 0;
  std::uint64_t train_bytes = 0;
  json counters;

  static std::filesystem::path path_in(const std::string& out_dir) {
    return std::filesystem::path(out_dir) / ".weaksup.checkpoint.json";
  }

  void write(const std::string& out_dir) const {
    json j;
    j["version"] = 1;
    j["fingerprint"] = fingerprint;
    j["records_done"] = records_done;
    j["weak_bytes"] = weak_bytes;
    j["train_bytes"] = train_bytes;
    j["counters"] = counters;
    auto final_path = path_in(out_dir);
    auto tmp_path = final_path;
    tmp_path += ".tmp";
    {
      std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
      out << j.dump();
      out.flush();
    }
    std::filesystem::rename(tmp_path, final_path);
  }

  static std::optional<Checkpoint> read(const std::string& out_dir) {
    auto p = path_in(out_dir);
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    json j;
    try {
      in >> j;
    } catch (...) {
      return std::nullopt;
    }
    Checkpoint c;
    c.fingerprint = j.value("fingerprint", "");
    c.records_done = j.value("records_done", std::uint64_t{0});
    c.weak_bytes = j.value("weak_bytes", std::uint64_t{0});
    c.train_bytes = j.value("train_bytes", std::uint64_t{0});
    if (j.contains("counters")) c.counters = j["counters"];
    return c;
  }
};

}  // namespace detail

inline void validate_weaksup_config(const PipelineConfig& cfg) {
  namespace fs = std::filesystem;
  if (cfg.corpus_path.empty() || !fs::exists(cfg.corpus_path))
    throw ConfigError("corpus path missing or not found: \"" +
                      cfg.corpus_path + "\"");
  bool have_index_cache =
      !cfg.index_cache_path.empty() && fs::exists(cfg.index_cache_path);
  if (!have_index_cache &&
      (cfg.conceptnet_path.empty() || !fs::exists(cfg.conceptnet_path)))
    throw ConfigError("ConceptNet dump missing or not found: \"" +
                      cfg.conceptnet_path + "\"");
  if (!cfg.wiki_store_path.empty() && !cfg.wiki_live &&
      !fs::exists(cfg.wiki_store_path))
    throw ConfigError("wiki store not found: \"" + cfg.wiki_store_path +
                      "\"");
  if (!cfg.annotations_path.empty() && !fs::exists(cfg.annotations_path))
    throw ConfigError("annotations sidecar not found: \"" +
                      cfg.annotations_path + "\"");
  if (cfg.output_dir.empty()) throw ConfigError("output_dir is required");
  if (cfg.neighbor_k < 1) throw ConfigError("neighbor_k must be >= 1");
  if (cfg.max_aspects_per_doc < 1)
    throw ConfigError("max_aspects_per_doc must be >= 1");
  if (cfg.related_word_limit < 1)
    throw ConfigError("related_word_limit must be >= 1");
  if (cfg.record_cap < 1) throw ConfigError("record_cap must be >= 1");
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
  if (cfg.min_edge_weight < 0)
    throw ConfigError("min_edge_weight must be >= 0");
}

/// Full construction over the configured corpus: seed extraction, aspect
/// expansion, summary synthesis, related-word augmentation and input
/// serialization. Streams records, shards them across workers, and merges
/// output in input order, so the produced files are byte-identical for any
/// worker count. `wiki` may inject a live client; by default the offline
/// store (or an empty stub) is used.
inline RunReport run_weaksup(const PipelineConfig& cfg,
                             WikiSource* wiki = nullptr,
                             std::ostream& log = std::cerr) {
  namespace fs = std::filesystem;
  validate_weaksup_config(cfg);
  fs::create_directories(cfg.output_dir);

  RunReport report;
  auto t_start = std::chrono::steady_clock::now();

  // fatal errors abort with a stage-tagged message
  auto stage = [](const char* tag, auto&& fn) {
    try {
      return fn();
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("[") + tag + "] " + e.what());
    } catch (const WikiFetchError&) {
      throw;
    } catch (const DataError& e) {
      throw DataError(std::string("[") + tag + "] " + e.what());
    }
  };

  // knowledge graph
  auto t_index = std::chrono::steady_clock::now();
  ConceptIndex index = stage("index", [&] {
    IndexConfig icfg;
    icfg.min_weight = cfg.min_edge_weight;
    icfg.relation_allowlist = cfg.relation_allowlist;
    if (!cfg.index_cache_path.empty() && fs::exists(cfg.index_cache_path))
      return ConceptIndex::load_from_file(cfg.index_cache_path);
    ParseReport parse_report;
    ConceptIndex built = ConceptIndex::build_from_file(cfg.conceptnet_path,
                                                       icfg, &parse_report);
    log << "[weaksup] concept index: " << built.term_count() << " terms, "
        << built.edge_count() << " edges (" << parse_report.malformed
        << " malformed rows skipped)\n";
    if (!cfg.index_cache_path.empty())
      built.save_to_file(cfg.index_cache_path);
    return built;
  });
  report.timings["index_build_ms"] = detail::elapsed_ms(t_index);

  // document-frequency pass over the capped corpus
  auto t_fit = std::chrono::steady_clock::now();
  TfIdfModel tfidf = stage("tfidf", [&] {
    TfIdfBuilder builder;
    CorpusReader reader(cfg.corpus_path);
    std::uint64_t n = 0;
    while (n < cfg.record_cap) {
      auto rec = reader.next();
      if (!rec) break;
      builder.add(*rec);
      ++n;
    }
    return builder.finish();
  });
  report.timings["tfidf_fit_ms"] = detail::elapsed_ms(t_fit);

  OfflineWikiStore offline_store;
  if (!wiki) {
    stage("wiki-store", [&] {
      if (!cfg.wiki_store_path.empty() && fs::exists(cfg.wiki_store_path))
        offline_store = OfflineWikiStore::load(cfg.wiki_store_path);
      return 0;
    });
    wiki = &offline_store;
  }

  std::unordered_map<std::string, std::vector<EntityMention>> annotations;
  if (!cfg.annotations_path.empty())
    stage("annotations", [&] {
      annotations = load_annotations(cfg.annotations_path);
      return 0;
    });
  const std::vector<EntityMention> no_external;

  const fs::path weak_path = fs::path(cfg.output_dir) / "weak_examples.jsonl";
  const fs::path train_path = fs::path(cfg.output_dir) / "train_inputs.jsonl";
  const fs::path report_path = fs::path(cfg.output_dir) / "report.json";
  const fs::path failed_path =
      fs::path(cfg.output_dir) / "failed_records.txt";

  detail::Checkpoint checkpoint;
  checkpoint.fingerprint = detail::config_fingerprint(cfg);
  std::uint64_t records_done = 0;
  std::uint64_t weak_bytes = 0;
  std::uint64_t train_bytes = 0;

  if (cfg.resume) {
    if (auto existing = detail::Checkpoint::read(cfg.output_dir)) {
      if (existing->fingerprint != checkpoint.fingerprint)
        throw ConfigError(
            "cannot resume: checkpoint was written with a different "
            "configuration");
      if (!fs::exists(weak_path) || !fs::exists(train_path))
        throw ConfigError("cannot resume: output files are missing");
      fs::resize_file(weak_path, existing->weak_bytes);
      fs::resize_file(train_path, existing->train_bytes);
      records_done = existing->records_done;
      weak_bytes = existing->weak_bytes;
      train_bytes = existing->train_bytes;
      report.restore_counters(existing->counters);
      checkpoint = *existing;
      log << "[weaksup] resuming after " << records_done << " records\n";
    }
  }

  std::ofstream weak_out(weak_path, std::ios::binary |
                                        (records_done ? std::ios::app
                                                      : std::ios::trunc));
  std::ofstream train_out(train_path, std::ios::binary |
                                          (records_done ? std::ios::app
                                                        : std::ios::trunc));
  if (!weak_out || !train_out)
    throw ConfigError("cannot open output files under " + cfg.output_dir);

  auto t_construct = std::chrono::steady_clock::now();
  CorpusReader reader(cfg.corpus_path);
  for (std::uint64_t i = 0; i < records_done; ++i) {
    if (!reader.next())
      throw DataError("cannot resume: corpus shorter than checkpoint");
  }

  const std::size_t chunk_capacity = std::max<std::size_t>(cfg.workers * 16, 16);
  std::vector<DocumentRecord> chunk;
  std::vector<detail::ProcessedRecord> results;

  while (records_done < cfg.record_cap) {
    chunk.clear();
    stage("construct", [&] {
      while (chunk.size() < chunk_capacity &&
             records_done + chunk.size() < cfg.record_cap) {
        auto rec = reader.next();
        if (!rec) break;
        chunk.push_back(std::move(*rec));
      }
      return 0;
    });
    if (chunk.empty()) break;

    results.assign(chunk.size(), {});
    auto run_range = [&](std::size_t begin, std::size_t step) {
      for (std::size_t i = begin; i < chunk.size(); i += step) {
        auto it = annotations.find(chunk[i].id);
        const auto& external =
            it == annotations.end() ? no_external : it->second;
        results[i] = detail::process_record(chunk[i], index, tfidf, *wiki,
                                            cfg, external);
      }
    };
    if (cfg.workers <= 1 || chunk.size() == 1) {
      run_range(0, 1);
    } else {
      const std::size_t nthreads = std::min(cfg.workers, chunk.size());
      std::vector<std::thread> threads;
      std::vector<std::exception_ptr> errors(nthreads);
      for (std::size_t t = 0; t < nthreads; ++t)
        threads.emplace_back([&, t] {
          try {
            run_range(t, nthreads);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      for (auto& th : threads) th.join();
      for (auto& err : errors)
        if (err) std::rethrow_exception(err);
    }

    // ordered merge + per-record checkpoint
    for (auto& res : results) {
      weak_out << res.weak_lines;
      train_out << res.train_lines;
      ++records_done;
      ++report.records_processed;
      if (res.skipped) {
        ++report.records_skipped;
        report.failed_record_ids.push_back(res.id);
        log << "[weaksup] skipped record \"" << res.id
            << "\": " << res.skip_reason << "\n";
      } else {
        if (res.zero_examples) ++report.records_zero_examples;
        report.examples_emitted += res.stats.emitted - res.unserializable;
        report.seed_aspects += res.stats.seed_aspects;
        report.neighbor_aspects += res.stats.neighbor_aspects;
        report.empty_summary_discarded += res.stats.empty_summary_discarded;
        report.full_summary_kept += res.stats.full_summary_kept;
        report.examples_unserializable += res.unserializable;
        report.wiki_hits += res.wiki_hits;
        report.wiki_misses += res.wiki_misses;
      }

      weak_bytes += res.weak_lines.size();
      train_bytes += res.train_lines.size();

      if (cfg.abort_after > 0 && records_done >= cfg.abort_after) {
        // testing hook: die like a kill -9, buffers unflushed
        std::_Exit(9);
      }
      weak_out.flush();
      train_out.flush();
      checkpoint.records_done = records_done;
      checkpoint.weak_bytes = weak_bytes;
      checkpoint.train_bytes = train_bytes;
      checkpoint.counters = report.counters_json();
      checkpoint.write(cfg.output_dir);
    }
    if (records_done % 1000 < chunk.size())
      log << "[weaksup] " << records_done << " records, "
          << report.examples_emitted << " examples\n";
  }

  report.timings["construct_ms"] = detail::elapsed_ms(t_construct);
  double minutes = report.timings["construct_ms"] / 60000.0;
  report.timings["construct_records_per_min"] =
      minutes > 0 ? static_cast<double>(records_done) / minutes : 0.0;
  report.timings["total_ms"] = detail::elapsed_ms(t_start);

  weak_out.flush();
  train_out.flush();

  if (!report.failed_record_ids.empty()) {
    std::ofstream failed(failed_path, std::ios::binary | std::ios::trunc);
    for (const auto& id : report.failed_record_ids) failed << id << '\n';
  } else if (fs::exists(failed_path)) {
    fs::remove(failed_path);
  }

  {
    std::ofstream rep(report_path, std::ios::binary | std::ios::trunc);
    rep << report.to_json().dump(2) << '\n';
  }
  std::error_code ec;
  fs::remove(detail::Checkpoint::path_in(cfg.output_dir), ec);

  log << "[weaksup] done: " << report.records_processed << " records, "
      << report.examples_emitted << " examples, " << report.wiki_hits
      << " wiki hits, " << report.wiki_misses << " misses\n";
  return report;
}

/// MA-News-style dataset generation: writes train/dev/test JSONL plus a
/// manifest with the seed, sizes and per-split category histograms.
inline void run_manews(const PipelineConfig& cfg,
                       std::ostream& log = std::cerr) {
  namespace fs = std::filesystem;
  if (cfg.corpus_path.empty() || !fs::exists(cfg.corpus_path))
    throw ConfigError("corpus path missing or not found: \"" +
                      cfg.corpus_path + "\"");
  if (cfg.output_dir.empty()) throw ConfigError("output_dir is required");
  fs::create_directories(cfg.output_dir);

  std::vector<DocumentRecord> corpus = load_corpus(cfg.corpus_path);
  ManewsConfig mcfg;
  mcfg.sizes = cfg.sizes;
  mcfg.seed = cfg.seed;
  mcfg.docs_per_example = cfg.docs_per_example;
  ManewsDataset dataset = make_dataset(corpus, mcfg);

  auto write_split = [&](const char* name,
                         const std::vector<SyntheticExample>& examples) {
    std::ofstream out(fs::path(cfg.output_dir) / (std::string(name) +
                                                  ".jsonl"),
                      std::ios::binary | std::ios::trunc);
    for (const auto& ex : examples) write_synthetic_line(out, ex);
  };
  write_split("train", dataset.train);
  write_split("dev", dataset.dev);
  write_split("test", dataset.test);

  json manifest;
  manifest["generator"] = "aspectforge-manews";
  manifest["seed"] = cfg.seed;
  manifest["sizes"] =
      json{{"train", cfg.sizes.train}, {"dev", cfg.sizes.dev},
           {"test", cfg.sizes.test}};
  manifest["docs_per_example"] = cfg.docs_per_example;
  json hist;
  for (const auto& [split, counts] : dataset.histogram) {
    json h;
    for (const auto& [aspect, n] : counts) h[aspect] = n;
    hist[split] = std::move(h);
  }
  manifest["category_histogram"] = std::move(hist);
  std::ofstream mf(fs::path(cfg.output_dir) / "manifest.json",
                   std::ios::binary | std::ios::trunc);
  mf << manifest.dump(2) << '\n';

  log << "[manews] wrote " << dataset.train.size() << "/"
      << dataset.dev.size() << "/" << dataset.test.size()
      << " examples to " << cfg.output_dir << "\n";
}

namespace detail {

inline std::string eval_text_of(const json& j, const std::string& path,
                                std::size_t line_no) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object()) {
    if (auto it = j.find("text"); it != j.end() && it->is_string())
      return it->get<std::string>();
    if (auto it = j.find("summary"); it != j.end() && it->is_string())
      return it->get<std::string>();
  }
  throw DataError(path + ":" + std::to_string(line_no) +
                  ": expected a string or an object with \"text\" or "
                  "\"summary\"");
}

}  // namespace detail

/// Averaged ROUGE-1/2/L over aligned candidate/reference JSONL files.
inline RougeReport run_eval(const PipelineConfig& cfg) {
  namespace fs = std::filesystem;
  if (cfg.candidates_path.empty() || !fs::exists(cfg.candidates_path))
    throw ConfigError("candidates path missing or not found: \"" +
                      cfg.candidates_path + "\"");
  if (cfg.references_path.empty() || !fs::exists(cfg.references_path))
    throw ConfigError("references path missing or not found: \"" +
                      cfg.references_path + "\"");
  JsonlReader cand_reader(cfg.candidates_path);
  JsonlReader ref_reader(cfg.references_path);
  RougeEvaluator evaluator;
  json cand, ref;
  std::size_t cand_line = 0, ref_line = 0;
  while (true) {
    bool has_cand = cand_reader.next(cand, cand_line);
    bool has_ref = ref_reader.next(ref, ref_line);
    if (has_cand != has_ref)
      throw DataError("candidates and references have different lengths");
    if (!has_cand) break;
    evaluator.add(
        detail::eval_text_of(cand, cfg.candidates_path, cand_line),
        detail::eval_text_of(ref, cfg.references_path, ref_line));
  }
  return evaluator.report();
}

}  // namespace aspectforge

#endif  // ASPECTFORGE_PIPELINE_HPP
