#ifndef KWACTOR_COOCCUR_HPP
#define KWACTOR_COOCCUR_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace kwactor {

using HitCount = std::uint64_t;

// Canonical query strings, also the keys of the hit-count cache file:
//   singleton  "term"
//   doubleton  "a" AND "b"   with a < b
std::string singleton_query(const std::string& term);
std::string doubleton_query(const std::string& a, const std::string& b);

/// Backend answering raw hit-count queries.
class HitSource {
 public:
  virtual ~HitSource() = default;
  // nullopt when the source has no answer for the query. Transport failures
  // throw.
  virtual std::optional<HitCount> lookup(const std::string& query) = 0;
};

/// Reads a hit-count cache file. Never touches the network.
class CacheFileSource : public HitSource {
 public:
  CacheFileSource() = default;
  explicit CacheFileSource(const std::filesystem::path& path);
  explicit CacheFileSource(std::map<std::string, HitCount> counts);

  std::optional<HitCount> lookup(const std::string& query) override;
  const std::map<std::string, HitCount>& counts() const { return counts_; }

 private:
  std::map<std::string, HitCount> counts_;
};

/// Tries each source in order; the first answer wins.
class LayeredSource : public HitSource {
 public:
  explicit LayeredSource(std::vector<HitSource*> layers);
  std::optional<HitCount> lookup(const std::string& query) override;

 private:
  std::vector<HitSource*> layers_;
};

using TermPair = std::pair<std::string, std::string>;

// Ordered pair with first < second.
TermPair make_pair_key(const std::string& a, const std::string& b);

/// Memoized singleton and doubleton counts. Doubletons are stored clamped to
/// the smaller of the two singletons.
struct HitCountTable {
  std::map<std::string, HitCount> singleton;
  std::map<TermPair, HitCount> doubleton;
  std::size_t queries_issued = 0;
  std::size_t singleton_queries = 0;
  std::size_t doubleton_queries = 0;

  // Cache-file representation (query string -> count).
  nlohmann::json to_json() const;
};

/// Writes counts as a cache file via a temporary file and rename, so a reader
/// never sees a partial file.
void save_hit_cache(const std::filesystem::path& path,
                    const std::map<std::string, HitCount>& counts);
void save_hit_cache(const std::filesystem::path& path,
                    const HitCountTable& table);

/// Memoizing front end over a HitSource. Safe to call from several threads.
class HitProvider {
 public:
  explicit HitProvider(HitSource& source);

  HitProvider(const HitProvider&) = delete;
  HitProvider& operator=(const HitProvider&) = delete;

  // |Omega_term|. Throws MissingCountError when the source has no answer.
  HitCount hit_count(const std::string& term);

  // |Omega_a ∩ Omega_b|, clamped to min(|Omega_a|, |Omega_b|). Symmetric;
  // (a, b) and (b, a) share one cache entry and one query.
  HitCount co_hit_count(const std::string& a, const std::string& b);

  HitCountTable table() const;
  std::size_t queries_issued() const;
  std::size_t doubleton_queries() const;

 private:
  HitCount fetch(const std::string& query);

  HitSource& source_;
  mutable std::mutex mutex_;
  HitCountTable table_;
};

/// |x ∩ y| / (|x| + |y| - |x ∩ y|); 0 for an empty intersection or when both
/// counts are 0.
double jaccard(HitCount hx, HitCount hy, HitCount hxy);

enum class UMode { Singleton, DoubletonWithActor };

const char* to_string(UMode mode);
UMode parse_u_mode(const std::string& text);

struct UVector {
  std::map<std::string, double> entries;

  double at(const std::string& word) const;
  bool contains(const std::string& word) const { return entries.count(word) > 0; }
};

/// Hit counts of words divided by the highest of them. In doubleton mode the
/// counts are those of the conjunction with actor_term.
UVector u_vector(std::span<const std::string> words, HitProvider& provider,
                 UMode mode = UMode::Singleton,
                 const std::string& actor_term = {});

}  // namespace kwactor

#endif
