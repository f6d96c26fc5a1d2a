#ifndef ASPECTFORGE_JSONL_HPP
#define ASPECTFORGE_JSONL_HPP

#include <fstream>
#include <functional>
#include <istream>
#include <string>

#include <json.hpp>

#include "aspectforge/errors.hpp"

namespace aspectforge {

using json = nlohmann::ordered_json;

// Streams a JSONL file line by line; memory stays bounded by one record.
class JsonlReader {
 public:
  explicit JsonlReader(const std::string& path)
      : path_(path), file_(path, std::ios::binary) {
    if (!file_) throw ConfigError("cannot open " + path);
    in_ = &file_;
  }
  explicit JsonlReader(std::istream& in, std::string name = "<stream>")
      : path_(std::move(name)), in_(&in) {}

  // Returns false at end of input. Blank lines are skipped; a UTF-8 BOM on
  // the first line is tolerated.
  bool next(json& out, std::size_t& line_no) {
    std::string line;
    while (std::getline(*in_, line)) {
      ++line_;
      if (line_ == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        out = json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw DataError(path_ + ":" + std::to_string(line_) +
                        ": malformed JSON line (" + e.what() + ")");
      }
      line_no = line_;
      return true;
    }
    return false;
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ifstream file_;
  std::istream* in_ = nullptr;
  std::size_t line_ = 0;
};

inline void write_jsonl_line(std::ostream& out, const json& j) {
  out << j.dump() << '\n';
}

// Pulls a required string field, with a path:line error on absence.
inline std::string require_string(const json& j, const char* field,
                                  const std::string& path,
                                  std::size_t line_no) {
  auto it = j.find(field);
  if (it == j.end() || !it->is_string())
    throw DataError(path + ":" + std::to_string(line_no) +
                    ": missing or non-string field \"" + field + "\"");
  return it->get<std::string>();
}

}  // namespace aspectforge

#endif  // ASPECTFORGE_JSONL_HPP
