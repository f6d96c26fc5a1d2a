// aspectforge: weak-supervision construction for aspect-based summarization.
// Subcommands: weaksup (build training examples from a generic corpus),
// manews (synthesize an MA-News-style benchmark), eval (ROUGE-1/2/L),
// inspect (pretty-print one example with invariant checks).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aspectforge/aspectforge.hpp"
#include "aspectforge/wiki_http.hpp"

namespace af = aspectforge;

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string part = (comma == std::string::npos)
                           ? s.substr(pos)
                           : s.substr(pos, comma - pos);
    if (!part.empty()) out.push_back(part);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

af::DatasetSizes parse_sizes(const std::string& s) {
  auto parts = split_csv(s);
  if (parts.size() != 3)
    throw af::ConfigError("--sizes expects train,dev,test (e.g. 280,10,10)");
  af::DatasetSizes sizes;
  try {
    sizes.train = std::stoull(parts[0]);
    sizes.dev = std::stoull(parts[1]);
    sizes.test = std::stoull(parts[2]);
  } catch (const std::exception&) {
    throw af::ConfigError("--sizes expects three integers");
  }
  return sizes;
}

void apply_config_entry(af::PipelineConfig& cfg, const std::string& key,
                        const std::string& value, const std::string& where) {
  auto to_size = [&](const std::string& v) -> std::size_t {
    try {
      return std::stoull(v);
    } catch (const std::exception&) {
      throw af::ConfigError(where + ": integer expected for \"" + key +
                            "\", got \"" + v + "\"");
    }
  };
  auto to_bool = [&](const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw af::ConfigError(where + ": boolean expected for \"" + key + "\"");
  };
  if (key == "corpus")
    cfg.corpus_path = value;
  else if (key == "conceptnet")
    cfg.conceptnet_path = value;
  else if (key == "index_cache")
    cfg.index_cache_path = value;
  else if (key == "wiki_store")
    cfg.wiki_store_path = value;
  else if (key == "wiki_live")
    cfg.wiki_live = to_bool(value);
  else if (key == "wiki_base_url")
    cfg.wiki_base_url = value;
  else if (key == "wiki_user_agent")
    cfg.wiki_user_agent = value;
  else if (key == "wiki_max_retries")
    cfg.wiki_max_retries = static_cast<int>(to_size(value));
  else if (key == "wiki_timeout_sec")
    cfg.wiki_timeout_sec = static_cast<int>(to_size(value));
  else if (key == "wiki_max_in_flight")
    cfg.wiki_max_in_flight = static_cast<int>(to_size(value));
  else if (key == "annotations")
    cfg.annotations_path = value;
  else if (key == "neighbor_k")
    cfg.neighbor_k = to_size(value);
  else if (key == "min_edge_weight")
    cfg.min_edge_weight = std::stod(value);
  else if (key == "relations")
    cfg.relation_allowlist = split_csv(value);
  else if (key == "max_aspects_per_doc")
    cfg.max_aspects_per_doc = to_size(value);
  else if (key == "related_word_limit")
    cfg.related_word_limit = to_size(value);
  else if (key == "record_cap")
    cfg.record_cap = to_size(value);
  else if (key == "output_dir")
    cfg.output_dir = value;
  else if (key == "workers")
    cfg.workers = to_size(value);
  else if (key == "seed")
    cfg.seed = to_size(value);
  else if (key == "sizes")
    cfg.sizes = parse_sizes(value);
  else if (key == "docs_per_example")
    cfg.docs_per_example = to_size(value);
  else if (key == "candidates")
    cfg.candidates_path = value;
  else if (key == "references")
    cfg.references_path = value;
  else
    throw af::ConfigError(where + ": unknown config key \"" + key + "\"");
}

// One documented key=value file; '#' starts a comment.
void load_config_file(af::PipelineConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw af::ConfigError("cannot open config file " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto strip = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      std::size_t e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    std::string stripped = strip(line);
    if (stripped.empty()) continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw af::ConfigError(path + ":" + std::to_string(line_no) +
                            ": expected key = value");
    apply_config_entry(cfg, strip(stripped.substr(0, eq)),
                       strip(stripped.substr(eq + 1)),
                       path + ":" + std::to_string(line_no));
  }
}

struct WeaksupCli {
  std::string config_file;
  std::string corpus, conceptnet, index_cache, wiki_store, wiki_base_url;
  std::string annotations, output_dir, relations;
  std::size_t neighbor_k = 0, max_aspects = 0, related_limit = 0, cap = 0;
  std::size_t workers = 0, abort_after = 0;
  double min_weight = -1;
  std::uint64_t seed = 0;
  bool wiki_live = false, resume = false, seed_set = false;
};

int cmd_weaksup(const WeaksupCli& cli, const CLI::App& sub) {
  af::PipelineConfig cfg;
  if (!cli.config_file.empty()) load_config_file(cfg, cli.config_file);
  if (sub.count("--corpus")) cfg.corpus_path = cli.corpus;
  if (sub.count("--conceptnet")) cfg.conceptnet_path = cli.conceptnet;
  if (sub.count("--index-cache")) cfg.index_cache_path = cli.index_cache;
  if (sub.count("--wiki-store")) cfg.wiki_store_path = cli.wiki_store;
  if (sub.count("--wiki-live")) cfg.wiki_live = cli.wiki_live;
  if (sub.count("--wiki-base-url")) cfg.wiki_base_url = cli.wiki_base_url;
  if (sub.count("--annotations")) cfg.annotations_path = cli.annotations;
  if (sub.count("--neighbor-k")) cfg.neighbor_k = cli.neighbor_k;
  if (sub.count("--min-weight")) cfg.min_edge_weight = cli.min_weight;
  if (sub.count("--relations"))
    cfg.relation_allowlist = split_csv(cli.relations);
  if (sub.count("--max-aspects")) cfg.max_aspects_per_doc = cli.max_aspects;
  if (sub.count("--related-limit")) cfg.related_word_limit = cli.related_limit;
  if (sub.count("--cap")) cfg.record_cap = cli.cap;
  if (sub.count("--out")) cfg.output_dir = cli.output_dir;
  if (sub.count("--workers")) cfg.workers = cli.workers;
  if (sub.count("--seed")) cfg.seed = cli.seed;
  cfg.resume = cli.resume;
  cfg.abort_after = cli.abort_after;
  if (const char* env = std::getenv("ASPECTFORGE_WIKI_BASE_URL"))
    cfg.wiki_base_url = env;

  std::unique_ptr<af::WikiSource> live;
  if (cfg.wiki_live) {
    af::WikiClientConfig wcfg;
    if (!cfg.wiki_base_url.empty()) wcfg.base_url = cfg.wiki_base_url;
    if (!cfg.wiki_user_agent.empty()) wcfg.user_agent = cfg.wiki_user_agent;
    wcfg.store_path = cfg.wiki_store_path;
    wcfg.max_retries = cfg.wiki_max_retries;
    wcfg.timeout_sec = cfg.wiki_timeout_sec;
    wcfg.max_in_flight = cfg.wiki_max_in_flight;
    live = std::make_unique<af::LiveWikiSource>(wcfg);
  }
  af::run_weaksup(cfg, live.get());
  return 0;
}

int cmd_inspect(const std::string& input_path, std::size_t line_wanted,
                const std::string& corpus_path, std::size_t related_limit) {
  af::JsonlReader reader(input_path);
  af::json j;
  std::size_t line_no = 0;
  std::size_t seen = 0;
  bool found = false;
  while (reader.next(j, line_no)) {
    if (++seen == line_wanted) {
      found = true;
      break;
    }
  }
  if (!found)
    throw af::DataError(input_path + ": has fewer than " +
                        std::to_string(line_wanted) + " examples");

  std::string doc_id = af::require_string(j, "doc_id", input_path, line_no);
  std::string aspect = af::require_string(j, "aspect", input_path, line_no);
  std::string summary = af::require_string(j, "summary", input_path, line_no);
  std::string input = af::require_string(j, "input", input_path, line_no);
  std::vector<std::string> related;
  if (j.contains("related_words"))
    related = j["related_words"].get<std::vector<std::string>>();

  std::cout << "doc_id:        " << doc_id << "\n";
  std::cout << "aspect:        " << aspect << "\n";
  std::cout << "summary:       " << summary << "\n";
  std::cout << "related_words:";
  for (const auto& w : related) std::cout << ' ' << w;
  std::cout << "\n";
  std::cout << "input bytes:   " << input.size() << "\n\n";

  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "  [ok]   " : "  [FAIL] ") << what << "\n";
    if (!ok) ++failures;
  };

  af::ModelInput parsed;
  bool parse_ok = true;
  try {
    parsed = af::parse_input(input);
  } catch (const af::DataError&) {
    parse_ok = false;
  }
  check(parse_ok, "input parses");
  if (parse_ok) {
    check(parsed.aspect == aspect, "parsed aspect matches record");
    check(parsed.related == related, "parsed related words match record");
    check(af::serialize_input(parsed) == input,
          "serialize(parse(input)) round-trips");
  }
  check(related.size() <= related_limit,
        "related word count within limit");
  if (parse_ok) {
    auto doc_tokens = af::tokenize(parsed.document);
    std::unordered_set<std::string> token_set(doc_tokens.begin(),
                                              doc_tokens.end());
    bool all_in_doc = true;
    for (const auto& w : related)
      if (!token_set.count(w)) all_in_doc = false;
    check(all_in_doc, "every related word occurs in the document");
  }

  if (!corpus_path.empty()) {
    af::CorpusReader corpus(corpus_path);
    std::optional<af::DocumentRecord> match;
    while (auto rec = corpus.next()) {
      if (rec->id == doc_id) {
        match = std::move(rec);
        break;
      }
    }
    check(match.has_value(), "doc_id found in corpus");
    if (match) {
      check(parse_ok && parsed.document == match->document,
            "input document matches corpus document");
      auto generic = af::segment_sentences(match->summary);
      check(af::is_sentence_subsequence(generic, summary),
            "summary is ordered generic-summary sentences");
    }
  }

  std::cout << "\n"
            << (failures == 0 ? "all checks passed"
                              : std::to_string(failures) + " check(s) FAILED")
            << "\n";
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aspectforge: knowledge-enriched weak supervision for "
               "aspect-based summarization"};
  app.require_subcommand(1);

  WeaksupCli wk;
  auto* weaksup = app.add_subcommand(
      "weaksup", "construct weak supervision training examples");
  weaksup->add_option("--config", wk.config_file, "key=value config file");
  weaksup->add_option("--corpus", wk.corpus, "corpus JSONL path");
  weaksup->add_option("--conceptnet", wk.conceptnet,
                      "ConceptNet assertions TSV path");
  weaksup->add_option("--index-cache", wk.index_cache,
                      "persisted concept index (load if present, else save)");
  weaksup->add_option("--wiki-store", wk.wiki_store,
                      "offline wiki extract store JSONL");
  weaksup->add_flag("--wiki-live", wk.wiki_live,
                    "fetch missing pages from a MediaWiki API");
  weaksup->add_option("--wiki-base-url", wk.wiki_base_url,
                      "MediaWiki base URL (env ASPECTFORGE_WIKI_BASE_URL "
                      "overrides)");
  weaksup->add_option("--annotations", wk.annotations,
                      "external NER sidecar JSONL");
  weaksup->add_option("--neighbor-k", wk.neighbor_k,
                      "neighbors per seed (default 10)");
  weaksup->add_option("--min-weight", wk.min_weight,
                      "minimum ConceptNet edge weight (default 1.0)");
  weaksup->add_option("--relations", wk.relations,
                      "comma-separated relation allowlist (default: all)");
  weaksup->add_option("--max-aspects", wk.max_aspects,
                      "max aspects per document (default 16)");
  weaksup->add_option("--related-limit", wk.related_limit,
                      "max related words per example (default 10)");
  weaksup->add_option("--cap", wk.cap,
                      "record cap (default 100000)");
  weaksup->add_option("--out", wk.output_dir, "output directory");
  weaksup->add_option("--workers", wk.workers, "worker threads (default 1)");
  weaksup->add_option("--seed", wk.seed, "run seed");
  weaksup->add_flag("--resume", wk.resume,
                    "resume an interrupted run from its checkpoint");
  weaksup->add_option("--abort-after", wk.abort_after,
                      "testing hook: simulate a crash after N records")
      ->group("");

  std::string mn_config, mn_corpus, mn_out, mn_sizes = "280,10,10";
  std::uint64_t mn_seed = 0;
  std::size_t mn_docs_per_example = 2;
  auto* manews = app.add_subcommand(
      "manews", "synthesize an MA-News-style benchmark");
  manews->add_option("--config", mn_config, "key=value config file");
  manews->add_option("--corpus", mn_corpus, "categorized corpus JSONL path");
  manews->add_option("--sizes", mn_sizes, "train,dev,test example counts");
  manews->add_option("--seed", mn_seed, "generator seed");
  manews->add_option("--docs-per-example", mn_docs_per_example,
                     "documents interleaved per synthetic example");
  manews->add_option("--out", mn_out, "output directory");

  std::string ev_candidates, ev_references, ev_out;
  auto* eval = app.add_subcommand("eval", "averaged ROUGE-1/2/L report");
  eval->add_option("--candidates", ev_candidates, "candidate JSONL path")
      ->required();
  eval->add_option("--references", ev_references, "reference JSONL path")
      ->required();
  eval->add_option("--out", ev_out, "also write the report here");

  std::string in_input, in_corpus;
  std::size_t in_line = 1, in_limit = 10;
  auto* inspect = app.add_subcommand(
      "inspect", "pretty-print one example with invariant checks");
  inspect->add_option("--input", in_input, "train_inputs.jsonl path")
      ->required();
  inspect->add_option("--line", in_line, "1-based example number");
  inspect->add_option("--corpus", in_corpus,
                      "corpus JSONL for source-record checks");
  inspect->add_option("--related-limit", in_limit,
                      "expected related word limit");

  CLI11_PARSE(app, argc, argv);

  try {
    if (weaksup->parsed()) return cmd_weaksup(wk, *weaksup);
    if (manews->parsed()) {
      af::PipelineConfig cfg;
      if (!mn_config.empty()) load_config_file(cfg, mn_config);
      if (manews->count("--corpus")) cfg.corpus_path = mn_corpus;
      bool sizes_from_file = cfg.sizes.train || cfg.sizes.dev ||
                             cfg.sizes.test;
      if (manews->count("--sizes") || !sizes_from_file)
        cfg.sizes = parse_sizes(mn_sizes);
      if (manews->count("--seed")) cfg.seed = mn_seed;
      if (manews->count("--docs-per-example"))
        cfg.docs_per_example = mn_docs_per_example;
      if (manews->count("--out")) cfg.output_dir = mn_out;
      af::run_manews(cfg);
      return 0;
    }
    if (eval->parsed()) {
      af::PipelineConfig cfg;
      cfg.candidates_path = ev_candidates;
      cfg.references_path = ev_references;
      af::RougeReport report = af::run_eval(cfg);
      std::string body = af::rouge_report_json(report).dump(2);
      std::cout << body << "\n";
      if (!ev_out.empty()) {
        std::ofstream out(ev_out, std::ios::binary | std::ios::trunc);
        out << body << "\n";
      }
      return 0;
    }
    if (inspect->parsed())
      return cmd_inspect(in_input, in_line, in_corpus, in_limit);
  } catch (const af::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const af::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
