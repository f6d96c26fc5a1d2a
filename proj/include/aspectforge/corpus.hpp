#ifndef ASPECTFORGE_CORPUS_HPP
#define ASPECTFORGE_CORPUS_HPP

#include <istream>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "aspectforge/errors.hpp"
#include "aspectforge/jsonl.hpp"
#include "aspectforge/text.hpp"

namespace aspectforge {

/// One corpus item: a document paired with its generic reference summary.
/// `category` is only consumed by the MA-News-style generator.
struct DocumentRecord {
  std::string id;
  std::string document;
  std::string summary;
  std::optional<std::string> category;

  bool operator==(const DocumentRecord&) const = default;
};

// Streaming reader over the corpus JSONL schema
// {"id": str, "document": str, "summary": str, "category": str|absent}.
// Validates id uniqueness and non-emptiness as records are pulled; holds one
// record at a time (plus the set of seen ids).
class CorpusReader {
 public:
  explicit CorpusReader(const std::string& path) : reader_(path) {}
  CorpusReader(std::istream& in, std::string name = "<stream>")
      : reader_(in, std::move(name)) {}

  std::optional<DocumentRecord> next() {
    json j;
    std::size_t line_no = 0;
    if (!reader_.next(j, line_no)) return std::nullopt;
    if (!j.is_object())
      throw DataError(reader_.path() + ":" + std::to_string(line_no) +
                      ": record is not a JSON object");
    DocumentRecord rec;
    rec.id = require_string(j, "id", reader_.path(), line_no);
    rec.document = require_string(j, "document", reader_.path(), line_no);
    rec.summary = require_string(j, "summary", reader_.path(), line_no);
    if (auto it = j.find("category"); it != j.end() && !it->is_null()) {
      if (!it->is_string())
        throw DataError(reader_.path() + ":" + std::to_string(line_no) +
                        ": non-string \"category\"");
      rec.category = it->get<std::string>();
    }
    if (rec.id.empty())
      throw DataError(reader_.path() + ":" + std::to_string(line_no) +
                      ": empty id");
    if (collapse_whitespace(rec.document).empty())
      throw DataError(reader_.path() + ":" + std::to_string(line_no) +
                      ": empty document for id \"" + rec.id + "\"");
    if (!seen_ids_.insert(rec.id).second)
      throw DataError(reader_.path() + ":" + std::to_string(line_no) +
                      ": duplicate id \"" + rec.id + "\"");
    return rec;
  }

 private:
  JsonlReader reader_;
  std::unordered_set<std::string> seen_ids_;
};

/// Loads a whole corpus into memory. Fixture-scale convenience; the pipeline
/// itself streams through CorpusReader.
inline std::vector<DocumentRecord> load_corpus(const std::string& path) {
  CorpusReader reader(path);
  std::vector<DocumentRecord> records;
  while (auto rec = reader.next()) records.push_back(std::move(*rec));
  return records;
}

inline void write_corpus_line(std::ostream& out, const DocumentRecord& rec) {
  json j;
  j["id"] = rec.id;
  j["document"] = rec.document;
  j["summary"] = rec.summary;
  if (rec.category) j["category"] = *rec.category;
  write_jsonl_line(out, j);
}

}  // namespace aspectforge

#endif  // ASPECTFORGE_CORPUS_HPP
