#include "screenplaynet/error.hpp"

namespace screenplaynet {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptyScript: return "EmptyScript";
    case ErrorKind::kConfigConflict: return "ConfigConflict";
    case ErrorKind::kConfigSyntax: return "ConfigSyntax";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kInvalidParams: return "InvalidParams";
    case ErrorKind::kDanglingReference: return "DanglingReference";
    case ErrorKind::kEmptyGraph: return "EmptyGraph";
    case ErrorKind::kNoEdges: return "NoEdges";
    case ErrorKind::kNoConvergence: return "NoConvergence";
    case ErrorKind::kUnknownMeasure: return "UnknownMeasure";
    case ErrorKind::kUnknownLayer: return "UnknownLayer";
    case ErrorKind::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace screenplaynet
