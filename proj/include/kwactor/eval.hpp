#ifndef KWACTOR_EVAL_HPP
#define KWACTOR_EVAL_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace kwactor {

// How an actor's extraction ended, for the outcome histogram.
enum class Outcome { NoCluster, SingleCluster, MultiKeyword };

const char* to_string(Outcome outcome);
Outcome parse_outcome(const std::string& text);

/// Lowercases scheme and host of URL-like identifiers and strips fragments.
/// Other identifiers are returned unchanged.
std::string canonicalize_page_id(const std::string& id);

struct JudgmentSet {
  std::string actor_label;
  std::vector<std::string> relevant;   // canonical, duplicate-free
  std::vector<std::string> retrieved;  // canonical, first occurrence kept
  std::optional<Outcome> outcome;

  // Canonicalizes and deduplicates both lists.
  static JudgmentSet make(std::string actor_label,
                          const std::vector<std::string>& relevant,
                          const std::vector<std::string>& retrieved,
                          std::optional<Outcome> outcome = std::nullopt);
};

/// JSON lines {"actor", "relevant", "retrieved", optional "outcome"}.
std::vector<JudgmentSet> load_judgments(const std::filesystem::path& path);

// A metric is nullopt when undefined (empty retrieved or relevant list).
struct PrecisionRecall {
  std::optional<double> precision;
  std::optional<double> recall;
};

PrecisionRecall precision_recall(const JudgmentSet& j);

/// Harmonic mean 2pr / (p + r); 0 when p + r == 0.
double f_measure(double precision, double recall);

struct ActorMetrics {
  std::string actor;
  std::optional<double> recall;
  std::optional<double> precision;
  std::optional<double> f_measure;
};

struct OutcomeBucket {
  std::size_t count = 0;
  double percent = 0.0;
};

struct OutcomeHistogram {
  std::size_t total = 0;  // judgment sets carrying an outcome
  OutcomeBucket no_cluster;
  OutcomeBucket single_cluster;
  OutcomeBucket multi_keyword;
};

struct EvalReport {
  std::vector<ActorMetrics> per_actor;  // sorted by actor label
  double recall = 0.0;
  double precision = 0.0;
  double f_measure = 0.0;
  // Actors left out of each average because the metric was undefined.
  std::size_t recall_excluded = 0;
  std::size_t precision_excluded = 0;
  std::size_t f_excluded = 0;
  OutcomeHistogram outcomes;

  nlohmann::json to_json() const;
  // Aligned plain-text table: one row per actor plus the average row.
  std::string to_table() const;
};

/// Unweighted means over actors with defined metrics. Throws
/// Error(EmptyReport) for an empty list or when no metric is defined.
EvalReport evaluate(const std::vector<JudgmentSet>& judgments);

// One decimal place, e.g. 0.35886 -> "35.9%".
std::string format_percent(double fraction);

}  // namespace kwactor

#endif
