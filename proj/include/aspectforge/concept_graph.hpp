#ifndef ASPECTFORGE_CONCEPT_GRAPH_HPP
#define ASPECTFORGE_CONCEPT_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "aspectforge/errors.hpp"
#include "aspectforge/jsonl.hpp"
#include "aspectforge/text.hpp"

namespace aspectforge {

/// Edge admission policy for the assertion dump.
struct IndexConfig {
  std::string language = "en";
  std::vector<std::string> relation_allowlist;  // empty admits all relations
  double min_weight = 1.0;

  bool relation_admitted(std::string_view relation) const {
    if (relation_allowlist.empty()) return true;
    for (const auto& r : relation_allowlist)
      if (r == relation) return true;
    return false;
  }
};

/// Lenient-parse statistics surfaced after a build.
struct ParseReport {
  std::uint64_t rows = 0;
  std::uint64_t admitted = 0;  // undirected edges admitted
  std::uint64_t malformed = 0;
  std::uint64_t filtered_language = 0;
  std::uint64_t filtered_relation = 0;
  std::uint64_t filtered_weight = 0;
  std::uint64_t self_loops = 0;
};

/// Turns a ConceptNet URI ("/c/en/new_york") or a plain term into a
/// normalized concept string. Returns nullopt for non-target-language URIs
/// and for inputs that normalize to nothing (a skip, not an error).
inline std::optional<std::string> normalize_concept(
    std::string_view raw, std::string_view language = "en") {
  std::string_view term = raw;
  if (raw.rfind("/c/", 0) == 0) {
    std::string_view rest = raw.substr(3);
    std::size_t slash = rest.find('/');
    std::string_view lang = (slash == std::string_view::npos)
                                ? rest
                                : rest.substr(0, slash);
    if (lang != language) return std::nullopt;
    if (slash == std::string_view::npos) return std::nullopt;
    term = rest.substr(slash + 1);
    // drop sense suffixes such as "/n" or "/n/wn/animal"
    if (std::size_t cut = term.find('/'); cut != std::string_view::npos)
      term = term.substr(0, cut);
  }
  std::string out;
  out.reserve(term.size());
  for (char c : term) out.push_back(c == '_' ? ' ' : c);
  out = normalize_term(out);
  if (out.empty()) return std::nullopt;
  return out;
}

// Adjacency index over admitted edges. Immutable after build; safe for
// unlimited concurrent readers.
class ConceptIndex {
 public:
  using Neighbor = std::pair<std::string, double>;

  ConceptIndex() = default;
  explicit ConceptIndex(IndexConfig config) : config_(std::move(config)) {}

  const IndexConfig& config() const { return config_; }
  std::size_t term_count() const { return adjacency_.size(); }
  std::uint64_t edge_count() const { return edge_count_; }

  /// Top-k neighbors by weight (ties term-ascending). The query is
  /// normalized and plural-folded the same way mention matching folds
  /// tokens, so "bees" finds the node "bee".
  std::vector<Neighbor> neighbors(std::string_view term,
                                  std::size_t k) const {
    const std::vector<Neighbor>* list = find_list(term);
    if (!list) return {};
    std::vector<Neighbor> out(list->begin(),
                              list->begin() +
                                  std::min(k, list->size()));
    return out;
  }

  bool contains(std::string_view term) const {
    return find_list(term) != nullptr;
  }

  /// Parses a ConceptNet 5 assertions TSV: five tab-separated columns, the
  /// fifth a JSON object carrying "weight". Bad rows are counted, not fatal.
  static ConceptIndex build(std::istream& dump, IndexConfig config,
                            ParseReport* report = nullptr) {
    ConceptIndex index(std::move(config));
    ParseReport local;
    std::string line;
    while (std::getline(dump, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      ++local.rows;
      index.add_row(line, local);
    }
    index.finalize();
    if (report) *report = local;
    return index;
  }

  static ConceptIndex build_from_file(const std::string& path,
                                      IndexConfig config,
                                      ParseReport* report = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open ConceptNet dump " + path);
    return build(in, std::move(config), report);
  }

  // Versioned JSONL adjacency; terms sorted so rebuilds are byte-identical.
  static constexpr int kFormatVersion = 1;

  void save(std::ostream& out) const {
    json header;
    header["format"] = "aspectforge-concept-index";
    header["version"] = kFormatVersion;
    header["language"] = config_.language;
    header["relations"] = config_.relation_allowlist;
    header["min_weight"] = config_.min_weight;
    header["edges"] = edge_count_;
    write_jsonl_line(out, header);
    std::map<std::string_view, const std::vector<Neighbor>*> sorted;
    for (const auto& [term, list] : adjacency_) sorted.emplace(term, &list);
    for (const auto& [term, list] : sorted) {
      json j;
      j["t"] = std::string(term);
      json arr = json::array();
      for (const auto& [nbr, w] : *list) arr.push_back(json::array({nbr, w}));
      j["n"] = std::move(arr);
      write_jsonl_line(out, j);
    }
  }

  void save_to_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write index file " + path);
    save(out);
  }

  static ConceptIndex load(std::istream& in,
                           const std::string& name = "<stream>") {
    JsonlReader reader(in, name);
    json header;
    std::size_t line_no = 0;
    if (!reader.next(header, line_no) || !header.is_object() ||
        header.value("format", "") != "aspectforge-concept-index")
      throw DataError(name + ": not an aspectforge concept index file");
    if (header.value("version", 0) != kFormatVersion)
      throw DataError(name + ": unsupported index version");
    IndexConfig config;
    config.language = header.value("language", "en");
    config.min_weight = header.value("min_weight", 1.0);
    if (header.contains("relations"))
      config.relation_allowlist =
          header["relations"].get<std::vector<std::string>>();
    ConceptIndex index(std::move(config));
    index.edge_count_ = header.value("edges", std::uint64_t{0});
    json j;
    while (reader.next(j, line_no)) {
      std::string term = require_string(j, "t", name, line_no);
      auto& list = index.adjacency_[term];
      for (const auto& entry : j.at("n"))
        list.emplace_back(entry.at(0).get<std::string>(),
                          entry.at(1).get<double>());
    }
    return index;
  }

  static ConceptIndex load_from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open index file " + path);
    return load(in, path);
  }

 private:
  void add_row(const std::string& line, ParseReport& report) {
    std::vector<std::string_view> cols;
    std::string_view view(line);
    std::size_t pos = 0;
    while (true) {
      std::size_t tab = view.find('\t', pos);
      if (tab == std::string_view::npos) {
        cols.push_back(view.substr(pos));
        break;
      }
      cols.push_back(view.substr(pos, tab - pos));
      pos = tab + 1;
    }
    if (cols.size() < 5) {
      ++report.malformed;
      return;
    }
    double weight = 0;
    try {
      auto meta = nlohmann::json::parse(cols[4]);
      if (!meta.is_object() || !meta.contains("weight") ||
          !meta["weight"].is_number()) {
        ++report.malformed;
        return;
      }
      weight = meta["weight"].get<double>();
    } catch (const nlohmann::json::parse_error&) {
      ++report.malformed;
      return;
    }
    if (weight < 0) {
      ++report.malformed;
      return;
    }
    std::string_view relation = cols[1];
    if (relation.rfind("/r/", 0) == 0) relation = relation.substr(3);
    auto start = normalize_concept(cols[2], config_.language);
    auto end = normalize_concept(cols[3], config_.language);
    if (!start || !end) {
      ++report.filtered_language;
      return;
    }
    if (!config_.relation_admitted(relation)) {
      ++report.filtered_relation;
      return;
    }
    if (weight < config_.min_weight) {
      ++report.filtered_weight;
      return;
    }
    if (*start == *end) {
      ++report.self_loops;
      return;
    }
    adjacency_[*start].emplace_back(*end, weight);
    adjacency_[*end].emplace_back(*start, weight);
    ++report.admitted;
    ++edge_count_;
  }

  void finalize() {
    for (auto& [term, list] : adjacency_) {
      // duplicate (a,b) assertions collapse to the max weight, then order
      // by weight descending, term ascending
      std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second > b.second;
      });
      list.erase(std::unique(list.begin(), list.end(),
                             [](const auto& a, const auto& b) {
                               return a.first == b.first;
                             }),
                 list.end());
      std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
      });
    }
  }

  const std::vector<Neighbor>* find_list(std::string_view term) const {
    auto norm = normalize_concept(term, config_.language);
    if (!norm) return nullptr;
    if (auto it = adjacency_.find(*norm); it != adjacency_.end())
      return &it->second;
    // plural folding, matching the mention policy
    if (norm->size() > 1 && norm->back() == 's') {
      if (auto it = adjacency_.find(norm->substr(0, norm->size() - 1));
          it != adjacency_.end())
        return &it->second;
    }
    if (auto it = adjacency_.find(*norm + "s"); it != adjacency_.end())
      return &it->second;
    return nullptr;
  }

  IndexConfig config_;
  std::unordered_map<std::string, std::vector<Neighbor>> adjacency_;
  std::uint64_t edge_count_ = 0;
};

}  // namespace aspectforge

#endif  // ASPECTFORGE_CONCEPT_GRAPH_HPP
