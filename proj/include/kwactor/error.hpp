#ifndef KWACTOR_ERROR_HPP
#define KWACTOR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kwactor {

enum class ErrorKind {
  Config,
  Io,
  Parse,
  EmptyCorpus,
  UndefinedStatistic,
  MissingCount,
  Transport,
  Budget,
  NoCluster,
  NoKeyword,
  EmptyReport,
};

const char* to_string(ErrorKind kind);

// All library failures are reported through this one exception type; the
// kind decides the CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Carries the term whose hit count could not be served so fixtures can be
// completed by hand.
class MissingCountError : public Error {
 public:
  explicit MissingCountError(const std::string& query)
      : Error(ErrorKind::MissingCount, "no hit count for " + query),
        query_(query) {}

  const std::string& query() const noexcept { return query_; }

 private:
  std::string query_;
};

}  // namespace kwactor

#endif
