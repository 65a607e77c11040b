#pragma once

#include <stdexcept>
#include <string>

namespace bilap {

enum class ErrorCode {
    InvalidDimension,
    InvalidArgument,
    Domain,
    Threshold,
    Precondition,
    InsufficientSpectrum,
    Resolution,
    Unsupported,
    NotSymmetric,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace bilap
