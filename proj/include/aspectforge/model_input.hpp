#ifndef ASPECTFORGE_MODEL_INPUT_HPP
#define ASPECTFORGE_MODEL_INPUT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "aspectforge/errors.hpp"

namespace aspectforge {

/// Summarizer input triple. Serialized as `aspect:related words<s>document`
/// with a single space between related words, no space around ":" or "<s>".
struct ModelInput {
  std::string aspect;
  std::vector<std::string> related;
  std::string document;

  bool operator==(const ModelInput&) const = default;
};

inline constexpr std::string_view kDocSeparator = "<s>";

/// Canonical byte sequence for a model input. Throws DataError when the
/// aspect or a related word would make the string unparseable: the aspect
/// may not contain ":" or "<s>", related words may not contain whitespace
/// or "<s>". The document is unrestricted.
inline std::string serialize_input(const ModelInput& input) {
  if (input.aspect.find(kDocSeparator) != std::string::npos ||
      input.aspect.find(':') != std::string::npos)
    throw DataError("unserializable aspect \"" + input.aspect + "\"");
  std::string out = input.aspect;
  out.push_back(':');
  for (std::size_t i = 0; i < input.related.size(); ++i) {
    const std::string& word = input.related[i];
    if (word.empty() || word.find(kDocSeparator) != std::string::npos ||
        word.find_first_of(" \t\n\r") != std::string::npos)
      throw DataError("unserializable related word \"" + word + "\"");
    if (i > 0) out.push_back(' ');
    out.append(word);
  }
  out.append(kDocSeparator);
  out.append(input.document);
  return out;
}

/// Inverse of serialize_input: split at the first "<s>", then the head at
/// the first ":". parse_input(serialize_input(x)) == x for all valid x.
inline ModelInput parse_input(std::string_view s) {
  std::size_t sep = s.find(kDocSeparator);
  if (sep == std::string_view::npos)
    throw DataError("model input missing \"<s>\" separator");
  std::string_view head = s.substr(0, sep);
  std::size_t colon = head.find(':');
  if (colon == std::string_view::npos)
    throw DataError("model input missing \":\" before \"<s>\"");
  ModelInput out;
  out.aspect = std::string(head.substr(0, colon));
  std::string_view related = head.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < related.size()) {
    std::size_t space = related.find(' ', pos);
    std::string_view word = (space == std::string_view::npos)
                                ? related.substr(pos)
                                : related.substr(pos, space - pos);
    if (!word.empty()) out.related.emplace_back(word);
    if (space == std::string_view::npos) break;
    pos = space + 1;
  }
  out.document = std::string(s.substr(sep + kDocSeparator.size()));
  return out;
}

}  // namespace aspectforge

#endif  // ASPECTFORGE_MODEL_INPUT_HPP
