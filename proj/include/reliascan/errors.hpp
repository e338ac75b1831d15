#ifndef RELIASCAN_ERRORS_HPP_
#define RELIASCAN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace reliascan {

// Every failure the library reports deliberately. Anything else escaping a
// call is a plain std::exception and treated as an internal error by the CLI.
enum class ErrorCode {
    io_error,
    parse_error,
    duplicate_id,
    empty_corpus,
    negative_population,
    missing_period,
    non_alphabetic_input,
    empty_input,
    empty_vocabulary,
    df_out_of_range,
    k_too_large,
    zero_matrix,
    no_convergence,
    weight_out_of_range,
    unknown_topic,
    already_promoted,
    zero_population,
    empty_baseline,
    nonpositive_expected,
    dimension_mismatch,
    missing_baseline,
    invalid_config,
    invalid_window,
    no_trend_data,
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::io_error: return "io_error";
        case ErrorCode::parse_error: return "parse_error";
        case ErrorCode::duplicate_id: return "duplicate_id";
        case ErrorCode::empty_corpus: return "empty_corpus";
        case ErrorCode::negative_population: return "negative_population";
        case ErrorCode::missing_period: return "missing_period";
        case ErrorCode::non_alphabetic_input: return "non_alphabetic_input";
        case ErrorCode::empty_input: return "empty_input";
        case ErrorCode::empty_vocabulary: return "empty_vocabulary";
        case ErrorCode::df_out_of_range: return "df_out_of_range";
        case ErrorCode::k_too_large: return "k_too_large";
        case ErrorCode::zero_matrix: return "zero_matrix";
        case ErrorCode::no_convergence: return "no_convergence";
        case ErrorCode::weight_out_of_range: return "weight_out_of_range";
        case ErrorCode::unknown_topic: return "unknown_topic";
        case ErrorCode::already_promoted: return "already_promoted";
        case ErrorCode::zero_population: return "zero_population";
        case ErrorCode::empty_baseline: return "empty_baseline";
        case ErrorCode::nonpositive_expected: return "nonpositive_expected";
        case ErrorCode::dimension_mismatch: return "dimension_mismatch";
        case ErrorCode::missing_baseline: return "missing_baseline";
        case ErrorCode::invalid_config: return "invalid_config";
        case ErrorCode::invalid_window: return "invalid_window";
        case ErrorCode::no_trend_data: return "no_trend_data";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace reliascan

#endif  // RELIASCAN_ERRORS_HPP_
