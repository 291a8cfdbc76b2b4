#include "kwactor/error.hpp"

namespace kwactor {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::EmptyCorpus: return "empty-corpus";
    case ErrorKind::UndefinedStatistic: return "undefined-statistic";
    case ErrorKind::MissingCount: return "missing-count";
    case ErrorKind::Transport: return "transport";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::NoCluster: return "no-cluster";
    case ErrorKind::NoKeyword: return "no-keyword";
    case ErrorKind::EmptyReport: return "empty-report";
  }
  return "unknown";
}

}  // namespace kwactor
