#ifndef KWACTOR_CORPUS_HPP
#define KWACTOR_CORPUS_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kwactor {

/// Splits text into lowercase word tokens. Any ASCII character that is not a
/// letter or digit separates tokens; bytes outside ASCII are kept as word
/// characters so UTF-8 words survive intact. Tokens made only of digits are
/// dropped.
std::vector<std::string> tokenize(std::string_view raw_text);

/// Lowercases and collapses runs of whitespace; used to compare actor labels.
std::string normalize_label(std::string_view label);

/// A reference actor: one canonical name plus the labels under which the
/// actor can be observed on the web (name variants and labels it shares with
/// other actors).
class ActorRef {
 public:
  ActorRef() = default;
  ActorRef(std::string canonical_name,
           std::vector<std::string> variant_labels = {},
           std::vector<std::string> ambiguous_labels = {},
           std::optional<std::string> category_hint = std::nullopt);

  const std::string& canonical_name() const { return canonical_name_; }
  const std::vector<std::string>& variant_labels() const { return variant_labels_; }
  const std::vector<std::string>& ambiguous_labels() const { return ambiguous_labels_; }
  const std::optional<std::string>& category_hint() const { return category_hint_; }

  // Normalized canonical name; the search term snippets are retrieved for.
  std::string query_term() const { return normalize_label(canonical_name_); }

  // True when label is the canonical name or one of the observable labels.
  bool answers_to(std::string_view label) const;

  bool operator==(const ActorRef&) const = default;

 private:
  std::string canonical_name_;
  std::vector<std::string> variant_labels_;
  std::vector<std::string> ambiguous_labels_;
  std::optional<std::string> category_hint_;
};

class ActorRegistry {
 public:
  ActorRegistry() = default;
  explicit ActorRegistry(std::vector<ActorRef> actors);

  // Reads a JSON array of {"canonical_name", "variant_labels",
  // "ambiguous_labels", "category_hint"} objects.
  static ActorRegistry load(const std::filesystem::path& path);

  // Every actor answering to label. More than one result means the label is
  // ambiguous.
  std::vector<ActorRef> resolve(std::string_view label) const;

  const std::vector<ActorRef>& actors() const { return actors_; }

 private:
  std::vector<ActorRef> actors_;
};

struct Snippet {
  std::string query_term;
  int rank = 0;
  std::vector<std::string> tokens;
  std::string raw_text;

  bool operator==(const Snippet&) const = default;
};

struct CorpusLimits {
  std::size_t snippet_limit = 500;
  std::size_t max_snippet_len = 50;
};

struct CorpusMetadata {
  std::string source;
  // Set by the live adapter only; offline corpora carry no timestamp.
  std::optional<std::string> retrieved_at;

  bool operator==(const CorpusMetadata&) const = default;
};

/// Immutable, rank-ordered list of snippets returned for one actor.
class SnippetCorpus {
 public:
  SnippetCorpus() = default;
  // Throws Error(Config) when an invariant is broken.
  SnippetCorpus(ActorRef actor, std::vector<Snippet> snippets,
                CorpusLimits limits = {}, CorpusMetadata metadata = {});

  const ActorRef& actor() const { return actor_; }
  const std::vector<Snippet>& snippets() const { return snippets_; }
  const CorpusMetadata& metadata() const { return metadata_; }
  std::size_t size() const { return snippets_.size(); }
  bool empty() const { return snippets_.empty(); }

 private:
  ActorRef actor_;
  std::vector<Snippet> snippets_;
  CorpusMetadata metadata_;
};

/// Builds a snippet from raw text: tokenized and clipped to max_snippet_len.
Snippet make_snippet(std::string query_term, int rank, std::string raw_text,
                     std::size_t max_snippet_len = 50);

/// Reads the JSON-lines snippet file, keeping the records whose "actor"
/// field matches the actor (canonical name or any of its labels). Records
/// are sorted by rank and truncated to the snippet limit.
SnippetCorpus load_corpus(const std::filesystem::path& path,
                          const ActorRef& actor, CorpusLimits limits = {});
SnippetCorpus load_corpus(const std::filesystem::path& path,
                          std::string_view actor_label,
                          CorpusLimits limits = {});

/// Writes the corpus back in the snippet fixture format.
void save_corpus(const std::filesystem::path& path,
                 const SnippetCorpus& corpus);

class SnippetProvider {
 public:
  virtual ~SnippetProvider() = default;
  virtual SnippetCorpus fetch(const ActorRef& actor, std::size_t limit) = 0;
};

/// Serves snippets from a fixture file. Pure: never touches the network.
class FixtureSnippetProvider : public SnippetProvider {
 public:
  explicit FixtureSnippetProvider(std::filesystem::path path,
                                  CorpusLimits limits = {});
  SnippetCorpus fetch(const ActorRef& actor, std::size_t limit) override;

 private:
  std::filesystem::path path_;
  CorpusLimits limits_;
};

/// limit == 0 yields an empty corpus without consulting the provider.
SnippetCorpus fetch_snippets(SnippetProvider& provider, const ActorRef& actor,
                             std::size_t limit, CorpusLimits limits = {});

}  // namespace kwactor

#endif
