#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace screenplaynet {

enum class ErrorKind {
  kEmptyScript,
  kConfigConflict,
  kConfigSyntax,
  kEmptyCorpus,
  kInvalidParams,
  kDanglingReference,
  kEmptyGraph,
  kNoEdges,
  kNoConvergence,
  kUnknownMeasure,
  kUnknownLayer,
  kIo,
};

std::string_view error_kind_name(ErrorKind kind);

// Base error carried through every module; `kind` is the machine-readable
// tag, what() the human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace screenplaynet
