#include "gospace/error.hpp"

namespace gospace {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonClosed: return "NonClosed";
    case ErrorCode::DependentBasis: return "DependentBasis";
    case ErrorCode::NonCompact: return "NonCompact";
    case ErrorCode::NotSubalgebra: return "NotSubalgebra";
    case ErrorCode::ReductivityFailure: return "ReductivityFailure";
    case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorCode::UnknownSpec: return "UnknownSpec";
    case ErrorCode::UnsupportedRank: return "UnsupportedRank";
    case ErrorCode::SpecParse: return "SpecParse";
    case ErrorCode::NonPositiveCoefficient: return "NonPositiveCoefficient";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::NotStronglyConvex: return "NotStronglyConvex";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::BoundaryNondifferentiable: return "BoundaryNondifferentiable";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::SingularOperator: return "SingularOperator";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace gospace
