#include "kwactor/cooccur.hpp"

#include <algorithm>
#include <fstream>

#include "kwactor/error.hpp"

namespace kwactor {

std::string singleton_query(const std::string& term) {
  return "\"" + term + "\"";
}

std::string doubleton_query(const std::string& a, const std::string& b) {
  const auto& [lo, hi] = make_pair_key(a, b);
  return "\"" + lo + "\" AND \"" + hi + "\"";
}

TermPair make_pair_key(const std::string& a, const std::string& b) {
  return a < b ? TermPair{a, b} : TermPair{b, a};
}

CacheFileSource::CacheFileSource(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
  if (!doc.is_object())
    throw Error(ErrorKind::Parse, path.string() + ": expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number_unsigned())
      throw Error(ErrorKind::Parse, path.string() + ": count for " + key +
                                        " is not a nonnegative integer");
    counts_.emplace(key, value.get<HitCount>());
  }
}

CacheFileSource::CacheFileSource(std::map<std::string, HitCount> counts)
    : counts_(std::move(counts)) {}

std::optional<HitCount> CacheFileSource::lookup(const std::string& query) {
  auto it = counts_.find(query);
  if (it == counts_.end()) return std::nullopt;
  return it->second;
}

LayeredSource::LayeredSource(std::vector<HitSource*> layers)
    : layers_(std::move(layers)) {}

std::optional<HitCount> LayeredSource::lookup(const std::string& query) {
  for (auto* layer : layers_)
    if (auto hit = layer->lookup(query)) return hit;
  return std::nullopt;
}

nlohmann::json HitCountTable::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [term, n] : singleton) out[singleton_query(term)] = n;
  for (const auto& [pair, n] : doubleton)
    out[doubleton_query(pair.first, pair.second)] = n;
  return out;
}

void save_hit_cache(const std::filesystem::path& path,
                    const std::map<std::string, HitCount>& counts) {
  nlohmann::json doc(counts);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out << doc.dump(1) << '\n';
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw Error(ErrorKind::Io, "cannot replace " + path.string() + ": " +
                                   ec.message());
}

void save_hit_cache(const std::filesystem::path& path,
                    const HitCountTable& table) {
  save_hit_cache(path, table.to_json().get<std::map<std::string, HitCount>>());
}

HitProvider::HitProvider(HitSource& source) : source_(source) {}

HitCount HitProvider::fetch(const std::string& query) {
  auto value = source_.lookup(query);
  if (!value) throw MissingCountError(query);
  return *value;
}

HitCount HitProvider::hit_count(const std::string& term) {
  if (term.empty()) throw Error(ErrorKind::Config, "empty hit-count term");
  {
    std::lock_guard lock(mutex_);
    auto it = table_.singleton.find(term);
    if (it != table_.singleton.end()) return it->second;
    ++table_.queries_issued;
    ++table_.singleton_queries;
  }
  // The source is called without the lock; concurrent lookups of one key may
  // both reach it, and the values agree.
  const HitCount n = fetch(singleton_query(term));
  std::lock_guard lock(mutex_);
  table_.singleton[term] = n;
  return n;
}

HitCount HitProvider::co_hit_count(const std::string& a, const std::string& b) {
  if (a.empty() || b.empty())
    throw Error(ErrorKind::Config, "empty hit-count term");
  if (a == b)
    throw Error(ErrorKind::Config, "co-occurrence needs two distinct terms");
  const TermPair key = make_pair_key(a, b);
  {
    std::lock_guard lock(mutex_);
    auto it = table_.doubleton.find(key);
    if (it != table_.doubleton.end()) return it->second;
  }
  const HitCount ha = hit_count(a);
  const HitCount hb = hit_count(b);
  {
    std::lock_guard lock(mutex_);
    ++table_.queries_issued;
    ++table_.doubleton_queries;
  }
  const HitCount raw = fetch(doubleton_query(a, b));
  const HitCount clamped = std::min({raw, ha, hb});
  std::lock_guard lock(mutex_);
  table_.doubleton[key] = clamped;
  return clamped;
}

HitCountTable HitProvider::table() const {
  std::lock_guard lock(mutex_);
  return table_;
}

std::size_t HitProvider::queries_issued() const {
  std::lock_guard lock(mutex_);
  return table_.queries_issued;
}

std::size_t HitProvider::doubleton_queries() const {
  std::lock_guard lock(mutex_);
  return table_.doubleton_queries;
}

double jaccard(HitCount hx, HitCount hy, HitCount hxy) {
  if (hxy == 0) return 0.0;
  const double inter = static_cast<double>(hxy);
  const double uni = static_cast<double>(hx) + static_cast<double>(hy) - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

const char* to_string(UMode mode) {
  return mode == UMode::Singleton ? "singleton" : "doubleton-with-actor";
}

UMode parse_u_mode(const std::string& text) {
  if (text == "singleton") return UMode::Singleton;
  if (text == "doubleton-with-actor" || text == "doubleton")
    return UMode::DoubletonWithActor;
  throw Error(ErrorKind::Config, "unknown u mode: " + text);
}

double UVector::at(const std::string& word) const {
  auto it = entries.find(word);
  if (it == entries.end())
    throw Error(ErrorKind::Config, "u vector has no entry for " + word);
  return it->second;
}

UVector u_vector(std::span<const std::string> words, HitProvider& provider,
                 UMode mode, const std::string& actor_term) {
  if (words.empty()) throw Error(ErrorKind::Config, "u vector of no words");
  if (mode == UMode::DoubletonWithActor && actor_term.empty())
    throw Error(ErrorKind::Config, "doubleton u mode needs an actor term");

  std::map<std::string, HitCount> counts;
  HitCount highest = 0;
  for (const auto& w : words) {
    const HitCount n = mode == UMode::Singleton
                           ? provider.hit_count(w)
                           : provider.co_hit_count(actor_term, w);
    counts[w] = n;
    highest = std::max(highest, n);
  }
  UVector u;
  for (const auto& [w, n] : counts)
    u.entries[w] = highest > 0 ? static_cast<double>(n) /
                                     static_cast<double>(highest)
                               : 0.0;
  return u;
}

}  // namespace kwactor
