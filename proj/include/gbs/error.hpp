#pragma once

#include <stdexcept>
#include <string>

namespace gbs {

enum class ErrorKind {
    MalformedInput,
    ZeroLabel,
    Disconnected,
    EmptyGraph,
    NotMinimal,
    NotReduced,
    ElementaryInput,
    NotUnimodular,
    ConditionsFailed,
    NotCollapsible,
    IndivisibleLabel,
    NotAdjacent,
    NotDivisible,
    SameGeometricEdge,
    NotAscendingLoop,
    BadFactor,
    NotAClosedPath,
    SizeLimitExceeded,
    BoundTooSmall,
    CriterionMismatch,
    IoError,
};

const char *kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace gbs
