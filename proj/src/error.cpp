#include "pcn/error.hpp"

namespace pcn {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::ShapeError: return "SHAPE_ERROR";
        case ErrorCode::MarginError: return "MARGIN_ERROR";
        case ErrorCode::OutOfBounds: return "OUT_OF_BOUNDS";
        case ErrorCode::ModeError: return "MODE_ERROR";
        case ErrorCode::CountOverflow: return "COUNT_OVERFLOW";
        case ErrorCode::EmptySample: return "EMPTY_SAMPLE";
        case ErrorCode::MergeError: return "MERGE_ERROR";
        case ErrorCode::CandidateError: return "CANDIDATE_ERROR";
        case ErrorCode::TooLarge: return "TOO_LARGE";
        case ErrorCode::InsufficientTrace: return "INSUFFICIENT_TRACE";
        case ErrorCode::DeltaError: return "DELTA_ERROR";
        case ErrorCode::EmptyInput: return "EMPTY_INPUT";
        case ErrorCode::UnseenContext: return "UNSEEN_CONTEXT";
        case ErrorCode::ConfigError: return "CONFIG_ERROR";
        case ErrorCode::IoError: return "IO_ERROR";
    }
    return "UNKNOWN";
}

}  // namespace pcn
