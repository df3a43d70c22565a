#ifndef EP_ERRORS_HPP
#define EP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ep {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define EP_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                        \
    public:                                                            \
        explicit Name(const std::string& what) : Error(what) {}        \
    }

// dataset_io
EP_DEFINE_ERROR(ParseError);
EP_DEFINE_ERROR(ValidationError);
EP_DEFINE_ERROR(IoError);
EP_DEFINE_ERROR(FormatError);

// geometry
EP_DEFINE_ERROR(DimensionMismatch);
EP_DEFINE_ERROR(IndexOutOfRange);
EP_DEFINE_ERROR(DegenerateSet);
EP_DEFINE_ERROR(InvalidN);

// sampling / ensemble
EP_DEFINE_ERROR(InvalidParams);

// linear_classifier
EP_DEFINE_ERROR(MissingClass);
EP_DEFINE_ERROR(NonFiniteInput);

// evaluation
EP_DEFINE_ERROR(InsufficientClassSamples);
EP_DEFINE_ERROR(InsufficientEvaluation);
EP_DEFINE_ERROR(LengthMismatch);

// clustering
EP_DEFINE_ERROR(InvalidK);
EP_DEFINE_ERROR(LabelsRequiredForPurity);

// analysis
EP_DEFINE_ERROR(LabelsRequired);
EP_DEFINE_ERROR(InvalidKMax);
EP_DEFINE_ERROR(InvalidConfig);

// synth
EP_DEFINE_ERROR(InvalidSpec);

#undef EP_DEFINE_ERROR

} // namespace ep

#endif
