#include "mdelta/error.hpp"

namespace mdelta {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io: return "IO";
    case ErrorCode::Usage: return "USAGE";
    case ErrorCode::Config: return "CONFIG";
    case ErrorCode::RaggedRow: return "RAGGED_ROW";
    case ErrorCode::NonNumericCell: return "NON_NUMERIC_CELL";
    case ErrorCode::TooFewRespondents: return "TOO_FEW_RESPONDENTS";
    case ErrorCode::DuplicateLabel: return "DUPLICATE_LABEL";
    case ErrorCode::LengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::DegenerateInstance: return "DEGENERATE_INSTANCE";
    case ErrorCode::CountOutOfRange: return "COUNT_OUT_OF_RANGE";
    case ErrorCode::PositionOutOfRange: return "POSITION_OUT_OF_RANGE";
    case ErrorCode::InstanceTooLarge: return "INSTANCE_TOO_LARGE";
    case ErrorCode::ZeroTotalVariance: return "ZERO_TOTAL_VARIANCE";
    case ErrorCode::SingleItem: return "SINGLE_ITEM";
    case ErrorCode::ConstantHalf: return "CONSTANT_HALF";
    case ErrorCode::NonConvergence: return "NON_CONVERGENCE";
    case ErrorCode::DegenerateCovariance: return "DEGENERATE_COVARIANCE";
  }
  return "UNKNOWN";
}

}  // namespace mdelta
