#ifndef ASPECTFORGE_WIKI_HTTP_HPP
#define ASPECTFORGE_WIKI_HTTP_HPP

#include <chrono>
#include <fstream>
#include <memory>
#include <mutex>
#include <semaphore>
#include <string>
#include <thread>
#include <unordered_set>

#include <httplib.h>
#include <json.hpp>

#include "aspectforge/errors.hpp"
#include "aspectforge/salience.hpp"

namespace aspectforge {

struct WikiClientConfig {
  std::string base_url = "https://en.wikipedia.org";
  std::string api_path = "/w/api.php";
  std::string store_path;  // write-through target; empty disables persistence
  std::string user_agent = "aspectforge/1.0 (research data pipeline)";
  int max_retries = 3;
  int timeout_sec = 10;
  int retry_backoff_ms = 200;
  int max_in_flight = 4;
};

// MediaWiki extracts client with an in-memory cache and write-through to the
// offline store, so a completed run is replayable without network access.
// Negative results (page absent) are cached in memory only: the store schema
// has no way to say "absent".
class LiveWikiSource : public WikiSource {
 public:
  explicit LiveWikiSource(WikiClientConfig config)
      : config_(std::move(config)),
        in_flight_(config_.max_in_flight > 0 ? config_.max_in_flight : 1) {
    if (!config_.store_path.empty() &&
        std::ifstream(config_.store_path).good())
      cache_ = OfflineWikiStore::load(config_.store_path);
  }

  std::shared_ptr<const WikiExtract> lookup(
      const std::string& aspect) override {
    const std::string key = to_lower(collapse_whitespace(aspect));
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (auto hit = cache_.lookup(key)) return hit;
      if (auto it = alias_.find(key); it != alias_.end()) return it->second;
      if (absent_.count(key)) return nullptr;
    }
    in_flight_.acquire();
    std::string body;
    bool ok = false;
    try {
      ok = fetch(aspect, body);
    } catch (...) {
      in_flight_.release();
      throw;
    }
    in_flight_.release();
    if (!ok) {
      std::lock_guard<std::mutex> lock(mutex_);
      absent_.insert(key);
      return nullptr;
    }
    return record_hit(key, body);
  }

 private:
  // Returns false when the API reports no page; throws WikiFetchError when
  // the transport keeps failing.
  bool fetch(const std::string& aspect, std::string& body_out) {
    httplib::Params params{{"action", "query"},
                           {"format", "json"},
                           {"prop", "extracts"},
                           {"explaintext", "1"},
                           {"redirects", "1"},
                           {"titles", aspect}};
    httplib::Headers headers{{"User-Agent", config_.user_agent}};
    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
      if (attempt > 0)
        std::this_thread::sleep_for(std::chrono::milliseconds(
            config_.retry_backoff_ms * attempt));
      httplib::Client client(config_.base_url);
      client.set_connection_timeout(config_.timeout_sec);
      client.set_read_timeout(config_.timeout_sec);
      auto res = client.Get(config_.api_path, params, headers);
      if (!res) {
        last_error = "transport error (" + httplib::to_string(res.error()) +
                     ")";
        continue;
      }
      if (res->status >= 500) {
        last_error = "server status " + std::to_string(res->status);
        continue;
      }
      if (res->status != 200) {
        last_error = "unexpected status " + std::to_string(res->status);
        continue;
      }
      body_out = res->body;
      return parse_found(body_out);
    }
    throw WikiFetchError("wiki fetch for \"" + aspect + "\" failed after " +
                         std::to_string(config_.max_retries + 1) +
                         " attempts: " + last_error);
  }

  static bool parse_found(const std::string& body) {
    auto j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.contains("query") ||
        !j["query"].contains("pages"))
      return false;
    for (auto& [page_id, page] : j["query"]["pages"].items()) {
      if (page_id == "-1" || page.contains("missing")) return false;
      if (page.contains("extract")) return true;
    }
    return false;
  }

  std::shared_ptr<const WikiExtract> record_hit(const std::string& key,
                                                const std::string& body) {
    auto j = nlohmann::json::parse(body);
    std::string title, text;
    for (auto& [page_id, page] : j["query"]["pages"].items()) {
      title = page.value("title", key);
      text = page.value("extract", "");
      break;
    }
    std::lock_guard<std::mutex> lock(mutex_);
    cache_.put(title, text);
    if (!config_.store_path.empty()) {
      std::ofstream out(config_.store_path,
                        std::ios::binary | std::ios::app);
      json line;
      line["title"] = title;
      line["text"] = text;
      write_jsonl_line(out, line);
      // redirected queries get a second entry under the query title so an
      // offline replay of this store resolves them too
      if (to_lower(title) != key) {
        json alias_line;
        alias_line["title"] = key;
        alias_line["text"] = text;
        write_jsonl_line(out, alias_line);
      }
      out.flush();
    }
    // the cache keys by canonical title; remember the query key too
    auto hit = cache_.lookup(title);
    alias_[key] = hit;
    return hit;
  }

  WikiClientConfig config_;
  std::counting_semaphore<64> in_flight_;
  std::mutex mutex_;
  OfflineWikiStore cache_;
  std::unordered_map<std::string, std::shared_ptr<const WikiExtract>> alias_;
  std::unordered_set<std::string> absent_;
};

}  // namespace aspectforge

#endif  // ASPECTFORGE_WIKI_HTTP_HPP
