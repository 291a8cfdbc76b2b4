#include "kwactor/eval.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <tuple>

#include "kwactor/error.hpp"

namespace kwactor {

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> canonical_unique(const std::vector<std::string>& ids) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& id : ids) {
    std::string c = canonicalize_page_id(id);
    if (c.empty()) throw Error(ErrorKind::Parse, "empty page identifier");
    if (seen.insert(c).second) out.push_back(std::move(c));
  }
  return out;
}

double mean(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

OutcomeBucket bucket(std::size_t count, std::size_t total) {
  return {count, total ? 100.0 * static_cast<double>(count) / static_cast<double>(total) : 0.0};
}

std::string cell(const std::optional<double>& x) {
  return x ? format_percent(*x) : std::string("n/a");
}

}  // namespace

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::NoCluster: return "no-cluster";
    case Outcome::SingleCluster: return "single-cluster";
    case Outcome::MultiKeyword: return "multi-keyword";
  }
  return "unknown";
}

Outcome parse_outcome(const std::string& text) {
  if (text == "no-cluster") return Outcome::NoCluster;
  if (text == "single-cluster") return Outcome::SingleCluster;
  if (text == "multi-keyword") return Outcome::MultiKeyword;
  throw Error(ErrorKind::Parse, "unknown outcome: " + text);
}

std::string canonicalize_page_id(const std::string& id) {
  const auto scheme_end = id.find("://");
  if (scheme_end == std::string::npos) return id;
  std::string out = lower(id.substr(0, scheme_end)) + "://";
  std::string rest = id.substr(scheme_end + 3);
  if (auto hash = rest.find('#'); hash != std::string::npos) rest.resize(hash);
  const auto host_end = rest.find_first_of("/?");
  if (host_end == std::string::npos) return out + lower(rest);
  return out + lower(rest.substr(0, host_end)) + rest.substr(host_end);
}

JudgmentSet JudgmentSet::make(std::string actor_label,
                              const std::vector<std::string>& relevant,
                              const std::vector<std::string>& retrieved,
                              std::optional<Outcome> outcome) {
  JudgmentSet j;
  j.actor_label = std::move(actor_label);
  j.relevant = canonical_unique(relevant);
  j.retrieved = canonical_unique(retrieved);
  j.outcome = outcome;
  return j;
}

std::vector<JudgmentSet> load_judgments(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::vector<JudgmentSet> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto rec = nlohmann::json::parse(line);
      std::optional<Outcome> outcome;
      if (rec.contains("outcome")) outcome = parse_outcome(rec["outcome"].get<std::string>());
      out.push_back(JudgmentSet::make(
          rec.at("actor").get<std::string>(),
          rec.at("relevant").get<std::vector<std::string>>(),
          rec.at("retrieved").get<std::vector<std::string>>(), outcome));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) +
                                        ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) +
                                        ": " + e.what());
    }
  }
  return out;
}

PrecisionRecall precision_recall(const JudgmentSet& j) {
  const std::set<std::string> relevant(j.relevant.begin(), j.relevant.end());
  const auto hits = static_cast<double>(
      std::count_if(j.retrieved.begin(), j.retrieved.end(),
                    [&](const std::string& id) { return relevant.count(id) > 0; }));
  PrecisionRecall pr;
  if (!j.retrieved.empty()) pr.precision = hits / static_cast<double>(j.retrieved.size());
  if (!j.relevant.empty()) pr.recall = hits / static_cast<double>(j.relevant.size());
  return pr;
}

double f_measure(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

EvalReport evaluate(const std::vector<JudgmentSet>& judgments) {
  if (judgments.empty()) throw Error(ErrorKind::EmptyReport, "no judgments to evaluate");

  EvalReport report;
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& j : judgments) {
    const auto pr = precision_recall(j);
    ActorMetrics m{j.actor_label, pr.recall, pr.precision, std::nullopt};
    if (pr.precision && pr.recall) m.f_measure = f_measure(*pr.precision, *pr.recall);
    report.per_actor.push_back(std::move(m));
    if (j.outcome) {
      ++counts[static_cast<int>(*j.outcome)];
      ++report.outcomes.total;
    }
  }
  // Sorted so that the averages do not depend on input order.
  std::sort(report.per_actor.begin(), report.per_actor.end(),
            [](const ActorMetrics& a, const ActorMetrics& b) {
              return std::tie(a.actor, a.recall, a.precision) <
                     std::tie(b.actor, b.recall, b.precision);
            });

  std::vector<double> r, p, f;
  for (const auto& m : report.per_actor) {
    if (m.recall) r.push_back(*m.recall); else ++report.recall_excluded;
    if (m.precision) p.push_back(*m.precision); else ++report.precision_excluded;
    if (m.f_measure) f.push_back(*m.f_measure); else ++report.f_excluded;
  }
  if (r.empty() && p.empty())
    throw Error(ErrorKind::EmptyReport, "no actor has a defined metric");
  report.recall = mean(r);
  report.precision = mean(p);
  report.f_measure = mean(f);

  const std::size_t total = report.outcomes.total;
  report.outcomes.no_cluster = bucket(counts[0], total);
  report.outcomes.single_cluster = bucket(counts[1], total);
  report.outcomes.multi_keyword = bucket(counts[2], total);
  return report;
}

std::string format_percent(double fraction) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << fraction * 100.0 << '%';
  return out.str();
}

nlohmann::json EvalReport::to_json() const {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
  json actors = json::array();
  for (const auto& m : per_actor)
    actors.push_back({{"actor", m.actor},
                      {"recall", opt(m.recall)},
                      {"precision", opt(m.precision)},
                      {"f_measure", opt(m.f_measure)}});
  auto b = [](const OutcomeBucket& x) {
    return json{{"count", x.count}, {"percent", x.percent}};
  };
  return json{
      {"per_actor", std::move(actors)},
      {"averages", {{"recall", recall}, {"precision", precision}, {"f_measure", f_measure}}},
      {"excluded",
       {{"recall", recall_excluded}, {"precision", precision_excluded}, {"f_measure", f_excluded}}},
      {"outcomes",
       {{"total", outcomes.total},
        {"no_cluster", b(outcomes.no_cluster)},
        {"single_cluster", b(outcomes.single_cluster)},
        {"multi_keyword", b(outcomes.multi_keyword)}}}};
}

std::string EvalReport::to_table() const {
  std::size_t width = std::string("Average").size();
  for (const auto& m : per_actor) width = std::max(width, m.actor.size());
  std::ostringstream out;
  auto row = [&](const std::string& name, const std::string& r, const std::string& p,
                 const std::string& f) {
    out << std::left << std::setw(static_cast<int>(width)) << name << std::right
        << std::setw(10) << r << std::setw(11) << p << std::setw(11) << f << '\n';
  };
  row("Actor", "Recall", "Precision", "F-measure");
  out << std::string(width + 32, '-') << '\n';
  for (const auto& m : per_actor)
    row(m.actor, cell(m.recall), cell(m.precision), cell(m.f_measure));
  out << std::string(width + 32, '-') << '\n';
  row("Average", format_percent(recall), format_percent(precision), format_percent(f_measure));
  if (outcomes.total > 0) {
    out << '\n';
    auto line = [&](const char* label, const OutcomeBucket& x) {
      out << std::left << std::setw(16) << label << std::right << std::setw(6) << x.count
          << std::setw(9) << std::fixed << std::setprecision(2) << x.percent << "%\n";
    };
    line("no cluster", outcomes.no_cluster);
    line("single cluster", outcomes.single_cluster);
    line("multi keyword", outcomes.multi_keyword);
  }
  return out.str();
}

}  // namespace kwactor
