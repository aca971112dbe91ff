#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tcc {

enum class ErrorKind {
    Syntax,
    InvalidVertexId,
    MissingTarget,
    MultipleTargets,
    DuplicateArc,
    DanglingEndpoint,
    TargetHasOutgoing,
    InvalidWeight,
    MixedWeights,
    RowNotNormalized,
    ModeViolation,
    AnnotationMismatch,
    InternalInconsistency,
    SolveFailure,
    VertexSetMismatch,
    TargetMismatch,
    StartUnknown,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the
/// CLI) can dispatch without parsing messages. Parse failures also carry the
/// 1-based line and column of the offending token.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);
    Error(ErrorKind kind, const std::string& message, std::size_t line, std::size_t column);

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<std::size_t> line() const noexcept { return line_; }
    std::optional<std::size_t> column() const noexcept { return column_; }

private:
    ErrorKind kind_;
    std::optional<std::size_t> line_;
    std::optional<std::size_t> column_;
};

}  // namespace tcc
