#pragma once

#include <stdexcept>
#include <string>

namespace loewner {

/// Base of every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public Error {
    using Error::Error;
};

class NotHermitian : public Error {
    using Error::Error;
};

class SpectrumOutsideDomain : public Error {
    using Error::Error;
};

class DimensionMismatch : public Error {
    using Error::Error;
};

class BadInterval : public Error {
    using Error::Error;
};

class NonPositiveAlpha : public Error {
    using Error::Error;
};

class NotUnitalFamily : public Error {
    using Error::Error;
};

class BadDimensions : public Error {
    using Error::Error;
};

class NotUnitVector : public Error {
    using Error::Error;
};

class HypothesisViolated : public Error {
    using Error::Error;
};

class ParseError : public Error {
    using Error::Error;
};

} // namespace loewner
