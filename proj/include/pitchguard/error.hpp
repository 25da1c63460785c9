#ifndef PITCHGUARD_ERROR_HPP
#define PITCHGUARD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pitchguard {

// Base of all library errors. ValidationError maps to CLI exit code 1,
// NumericError to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

// --- ingest ---

class MalformedRowError : public ValidationError {
public:
    MalformedRowError(std::size_t line, const std::string& detail)
        : ValidationError("malformed row at line " + std::to_string(line) + ": " + detail),
          line(line) {}
    std::size_t line;
};

class DuplicateDayError : public ValidationError {
public:
    DuplicateDayError(const std::string& subject, int day)
        : ValidationError("duplicate day " + std::to_string(day) + " for subject " + subject),
          subject(subject), day(day) {}
    std::string subject;
    int day;
};

class MissingColumnError : public ValidationError {
public:
    explicit MissingColumnError(const std::string& name)
        : ValidationError("missing column: " + name), name(name) {}
    std::string name;
};

class TruncationTooDeepError : public ValidationError {
public:
    TruncationTooDeepError(const std::string& subject, int injury_day, int a)
        : ValidationError("truncation too deep for subject " + subject + ": T=" +
                          std::to_string(injury_day) + ", a=" + std::to_string(a)),
          subject(subject), injury_day(injury_day), a(a) {}
    std::string subject;
    int injury_day;
    int a;
};

class NonPositiveResponseError : public ValidationError {
public:
    explicit NonPositiveResponseError(double value)
        : ValidationError("response must be positive, got " + std::to_string(value)) {}
};

class EmptyWeekSetError : public ValidationError {
public:
    EmptyWeekSetError() : ValidationError("no sessions survive weekly aggregation filter") {}
};

class OutOfRangeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidSpecError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// --- dtw ---

class EmptySequenceError : public ValidationError {
public:
    EmptySequenceError() : ValidationError("dtw requires non-empty sequences") {}
};

class TooLargeError : public ValidationError {
public:
    TooLargeError(std::size_t n, std::size_t m)
        : ValidationError("brute-force oracle limited to n*m <= 36, got " +
                          std::to_string(n) + "x" + std::to_string(m)) {}
};

// --- kernels / gp ---

class InputKindMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class SingularSystemError : public NumericError {
public:
    using NumericError::NumericError;
};

class NoAcceptedSettingError : public NumericError {
public:
    using NumericError::NumericError;
};

// --- glm ---

class RankDeficientError : public NumericError {
public:
    using NumericError::NumericError;
};

class RefitFailureError : public NumericError {
public:
    explicit RefitFailureError(std::size_t index)
        : NumericError("leave-one-out refit failed for observation " + std::to_string(index)),
          index(index) {}
    std::size_t index;
};

class NotNestedError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// --- spca ---

class AllColumnsDegenerateError : public ValidationError {
public:
    AllColumnsDegenerateError() : ValidationError("all feature columns have zero variance") {}
};

class TooFewSurvivorsError : public ValidationError {
public:
    TooFewSurvivorsError(double alpha, std::size_t survivors, std::size_t m)
        : ValidationError("alpha=" + std::to_string(alpha) + " leaves " +
                          std::to_string(survivors) + " features, need m=" + std::to_string(m)),
          alpha(alpha), survivors(survivors), m(m) {}
    double alpha;
    std::size_t survivors;
    std::size_t m;
};

class MissingFeatureError : public ValidationError {
public:
    explicit MissingFeatureError(const std::string& name)
        : ValidationError("missing feature: " + name), name(name) {}
    std::string name;
};

class NumericalFailureError : public NumericError {
public:
    using NumericError::NumericError;
};

// --- metrics ---

class LengthMismatchError : public ValidationError {
public:
    LengthMismatchError(std::size_t a, std::size_t b)
        : ValidationError("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class ConstantVectorError : public ValidationError {
public:
    ConstantVectorError() : ValidationError("metric undefined on constant vector") {}
};

class DegenerateAgreementError : public ValidationError {
public:
    DegenerateAgreementError() : ValidationError("kappa undefined: chance agreement is 1") {}
};

class UnknownLabelError : public ValidationError {
public:
    explicit UnknownLabelError(const std::string& label)
        : ValidationError("unknown label: " + label), label(label) {}
    std::string label;
};

// --- eval ---

class FoldTooSmallError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EmptyTrainingError : public ValidationError {
public:
    EmptyTrainingError() : ValidationError("training set is empty") {}
};

} // namespace pitchguard

#endif
