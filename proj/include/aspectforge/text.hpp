#ifndef ASPECTFORGE_TEXT_HPP
#define ASPECTFORGE_TEXT_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace aspectforge {

/// One sentence of a source text, with its 0-based ordinal.
struct Sentence {
  std::string text;
  std::size_t index = 0;

  bool operator==(const Sentence&) const = default;
};

namespace detail {

inline bool ascii_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline bool ascii_alnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

inline bool ascii_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }
inline bool ascii_digit(unsigned char c) { return c >= '0' && c <= '9'; }

// Decodes one UTF-8 codepoint at `pos`. Invalid sequences are passed through
// byte-by-byte so malformed input never throws.
inline std::uint32_t decode_utf8(std::string_view s, std::size_t pos,
                                 std::size_t& len) {
  unsigned char c0 = static_cast<unsigned char>(s[pos]);
  if (c0 < 0x80) {
    len = 1;
    return c0;
  }
  auto cont = [&](std::size_t i) {
    return pos + i < s.size() &&
           (static_cast<unsigned char>(s[pos + i]) & 0xC0) == 0x80;
  };
  if ((c0 & 0xE0) == 0xC0 && cont(1)) {
    len = 2;
    return (static_cast<std::uint32_t>(c0 & 0x1F) << 6) |
           (static_cast<unsigned char>(s[pos + 1]) & 0x3F);
  }
  if ((c0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    len = 3;
    return (static_cast<std::uint32_t>(c0 & 0x0F) << 12) |
           (static_cast<std::uint32_t>(
                static_cast<unsigned char>(s[pos + 1]) & 0x3F)
            << 6) |
           (static_cast<unsigned char>(s[pos + 2]) & 0x3F);
  }
  if ((c0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    len = 4;
    return (static_cast<std::uint32_t>(c0 & 0x07) << 18) |
           (static_cast<std::uint32_t>(
                static_cast<unsigned char>(s[pos + 1]) & 0x3F)
            << 12) |
           (static_cast<std::uint32_t>(
                static_cast<unsigned char>(s[pos + 2]) & 0x3F)
            << 6) |
           (static_cast<unsigned char>(s[pos + 3]) & 0x3F);
  }
  len = 1;
  return c0;
}

// Characters stripped from token edges: ASCII punctuation plus the common
// Unicode punctuation ranges (dashes, curly quotes, ellipsis, guillemets).
inline bool strippable_codepoint(std::uint32_t cp) {
  if (cp < 0x80) return !ascii_alnum(static_cast<unsigned char>(cp));
  if (cp >= 0x00A1 && cp <= 0x00BF) return true;  // inverted marks, section...
  if (cp == 0x00D7 || cp == 0x00F7) return true;
  if (cp >= 0x2000 && cp <= 0x206F) return true;  // general punctuation block
  return false;
}

inline char ascii_lower_char(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c;
}

}  // namespace detail

/// ASCII-lowercases a string in a UTF-8-safe way (multibyte bytes untouched).
inline std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(detail::ascii_lower_char(c));
  return out;
}

/// Trims and collapses runs of whitespace to single spaces.
inline std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (unsigned char c : s) {
    if (detail::ascii_space(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

/// Dedupe/lookup key for aspect terms and mentions: lowercase, collapsed ws.
inline std::string normalize_term(std::string_view s) {
  return to_lower(collapse_whitespace(s));
}

// Built-in English stopword list, version 1. Shared by the salience ranking,
// the entity recognizer, and TF-IDF vocab filtering so results stay
// reproducible across runs and machines.
inline constexpr int kStopwordListVersion = 1;

inline const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> kWords = {
      "a",          "about",   "above",    "after",   "again",      "against",
      "all",        "am",      "an",       "and",     "any",        "are",
      "aren't",     "as",      "at",       "be",      "because",    "been",
      "before",     "being",   "below",    "between", "both",       "but",
      "by",         "can",     "cannot",   "could",   "couldn't",   "did",
      "didn't",     "do",      "does",     "doesn't", "doing",      "don't",
      "down",       "during",  "each",     "few",     "for",        "from",
      "further",    "had",     "hadn't",   "has",     "hasn't",     "have",
      "haven't",    "having",  "he",       "he'd",    "he'll",      "he's",
      "her",        "here",    "hers",     "herself", "him",        "himself",
      "his",        "how",     "i",        "i'd",     "i'll",       "i'm",
      "i've",       "if",      "in",       "into",    "is",         "isn't",
      "it",         "it's",    "its",      "itself",  "just",       "me",
      "more",       "most",    "mustn't",  "my",      "myself",     "no",
      "nor",        "not",     "of",       "off",     "on",         "once",
      "only",       "or",      "other",    "ought",   "our",        "ours",
      "ourselves",  "out",     "over",     "own",     "same",       "shan't",
      "she",        "she'd",   "she'll",   "she's",   "should",     "shouldn't",
      "so",         "some",    "such",     "than",    "that",       "that's",
      "the",        "their",   "theirs",   "them",    "themselves", "then",
      "there",      "there's", "these",    "they",    "they'd",     "they'll",
      "they're",    "they've", "this",     "those",   "through",    "to",
      "too",        "under",   "until",    "up",      "very",       "was",
      "wasn't",     "we",      "we'd",     "we'll",   "we're",      "we've",
      "were",       "weren't", "what",     "what's",  "when",       "when's",
      "where",      "where's", "which",    "while",   "who",        "who's",
      "whom",       "why",     "will",     "with",    "won't",      "would",
      "wouldn't",   "you",     "you'd",    "you'll",  "you're",     "you've",
      "your",       "yours",   "yourself", "yourselves"};
  return kWords;
}

inline bool is_stopword(std::string_view word) {
  return stopwords().count(std::string(word)) > 0;
}

/// Tokenization policy shared by mention matching, TF-IDF and ROUGE:
/// whitespace split, edge punctuation stripped (UTF-8 aware), ASCII
/// lowercase, interior punctuation kept, empty results dropped.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && detail::ascii_space(static_cast<unsigned char>(text[i])))
      ++i;
    std::size_t start = i;
    while (i < n && !detail::ascii_space(static_cast<unsigned char>(text[i])))
      ++i;
    if (i == start) continue;
    std::string_view raw = text.substr(start, i - start);

    // strip leading strippable codepoints
    std::size_t b = 0;
    while (b < raw.size()) {
      std::size_t len = 0;
      std::uint32_t cp = detail::decode_utf8(raw, b, len);
      if (!detail::strippable_codepoint(cp)) break;
      b += len;
    }
    // strip trailing strippable codepoints (re-scan forward, remember the
    // last position where a word character run ended)
    std::size_t e = b;
    std::size_t scan = b;
    while (scan < raw.size()) {
      std::size_t len = 0;
      std::uint32_t cp = detail::decode_utf8(raw, scan, len);
      scan += len;
      if (!detail::strippable_codepoint(cp)) e = scan;
    }
    if (e <= b) continue;
    std::string tok = to_lower(raw.substr(b, e - b));
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

namespace detail {

// Abbreviations that do not end a sentence, lowercase, trailing period
// included. Fixed list; compared against the token ending at the period.
inline const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> kAbbrev = {
      "mr.",   "mrs.",  "ms.",   "dr.",   "prof.", "st.",   "jr.",  "sr.",
      "vs.",   "etc.",  "e.g.",  "i.e.",  "cf.",   "al.",   "gen.", "sen.",
      "rep.",  "gov.",  "capt.", "col.",  "lt.",   "sgt.",  "maj.", "adm.",
      "cmdr.", "hon.",  "rev.",  "inc.",  "ltd.",  "co.",   "corp.", "dept.",
      "univ.", "assn.", "bros.", "mt.",   "ft.",   "no.",   "nos.", "vol.",
      "fig.",  "u.s.",  "u.k.",  "u.n.",  "a.m.",  "p.m.",  "jan.", "feb.",
      "mar.",  "apr.",  "jun.",  "jul.",  "aug.",  "sep.",  "sept.", "oct.",
      "nov.",  "dec."};
  return kAbbrev;
}

inline bool is_open_quote_at(std::string_view s, std::size_t pos) {
  unsigned char c = static_cast<unsigned char>(s[pos]);
  if (c == '"' || c == '\'' || c == '(' || c == '[') return true;
  std::size_t len = 0;
  std::uint32_t cp = decode_utf8(s, pos, len);
  return cp == 0x201C || cp == 0x2018 || cp == 0x00AB;  // curly quotes, <<
}

inline bool is_close_quote_at(std::string_view s, std::size_t pos,
                              std::size_t& len) {
  unsigned char c = static_cast<unsigned char>(s[pos]);
  if (c == '"' || c == '\'' || c == ')' || c == ']') {
    len = 1;
    return true;
  }
  std::uint32_t cp = decode_utf8(s, pos, len);
  return cp == 0x201D || cp == 0x2019 || cp == 0x00BB;
}

// Token ending at (and including) the period at `dot`, leading punctuation
// stripped, lowercased. Used for the abbreviation check.
inline std::string word_ending_at(std::string_view s, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 &&
         !ascii_space(static_cast<unsigned char>(s[begin - 1])))
    --begin;
  while (begin < dot &&
         !ascii_alnum(static_cast<unsigned char>(s[begin])))
    ++begin;
  return to_lower(s.substr(begin, dot - begin + 1));
}

}  // namespace detail

/// Rule-based sentence splitter: terminal [.!?] runs (plus closing quotes)
/// followed by whitespace and an uppercase letter, digit or opening quote
/// start a new sentence; a fixed abbreviation list suppresses false breaks.
inline std::vector<Sentence> segment_sentences(std::string_view text) {
  std::vector<Sentence> sentences;
  const std::size_t n = text.size();
  std::size_t start = 0;
  std::size_t i = 0;

  auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end &&
           detail::ascii_space(static_cast<unsigned char>(text[begin])))
      ++begin;
    while (end > begin &&
           detail::ascii_space(static_cast<unsigned char>(text[end - 1])))
      --end;
    if (end > begin)
      sentences.push_back(
          {std::string(text.substr(begin, end - begin)), sentences.size()});
  };

  while (i < n) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    bool is_period_end = (c == '.');
    std::size_t punct_first = i;
    while (i < n && (text[i] == '.' || text[i] == '!' || text[i] == '?')) {
      is_period_end = (text[i] == '.');
      ++i;
    }
    std::size_t close_len = 0;
    while (i < n && detail::is_close_quote_at(text, i, close_len))
      i += close_len;

    std::size_t after = i;
    if (after >= n || !detail::ascii_space(static_cast<unsigned char>(
                          text[after])))
      continue;
    std::size_t next = after;
    while (next < n &&
           detail::ascii_space(static_cast<unsigned char>(text[next])))
      ++next;
    if (next >= n) break;  // trailing whitespace; final emit handles the rest

    bool starts_new =
        detail::ascii_upper(static_cast<unsigned char>(text[next])) ||
        detail::ascii_digit(static_cast<unsigned char>(text[next])) ||
        detail::is_open_quote_at(text, next);
    if (!starts_new) continue;

    if (is_period_end) {
      // find the last '.' of the punctuation run for the abbreviation check
      std::size_t dot = punct_first;
      for (std::size_t p = punct_first; p < after && p < n; ++p)
        if (text[p] == '.') dot = p;
      if (detail::abbreviations().count(detail::word_ending_at(text, dot)))
        continue;
    }
    emit(start, after);
    start = next;
    i = next;
  }
  emit(start, n);
  return sentences;
}

/// Splits text on blank lines. Paragraph-internal newlines are preserved so
/// provenance can reproduce assembled documents exactly.
inline std::vector<std::string> split_paragraphs(std::string_view text) {
  std::vector<std::string> paragraphs;
  std::string current;
  std::size_t pos = 0;
  auto flush = [&] {
    while (!current.empty() &&
           detail::ascii_space(static_cast<unsigned char>(current.back())))
      current.pop_back();
    if (!current.empty()) paragraphs.push_back(current);
    current.clear();
  };
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    bool blank = true;
    for (unsigned char ch : line)
      if (!detail::ascii_space(ch)) {
        blank = false;
        break;
      }
    if (blank) {
      flush();
    } else {
      if (!current.empty()) current.push_back('\n');
      current.append(line);
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  flush();
  return paragraphs;
}

/// Trailing-'s' plural folding: tokens "bee" and "bees" match either way.
/// Deliberately minimal; no stemmer.
inline bool fold_equal(std::string_view token, std::string_view term) {
  if (token == term) return true;
  if (token.size() == term.size() + 1 && token.back() == 's' &&
      token.substr(0, term.size()) == term)
    return true;
  if (term.size() == token.size() + 1 && term.back() == 's' &&
      term.substr(0, token.size()) == token)
    return true;
  return false;
}

}  // namespace aspectforge

#endif  // ASPECTFORGE_TEXT_HPP
