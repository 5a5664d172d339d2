#pragma once

#include <stdexcept>
#include <string>

namespace abelian {

/// Base class for every failure raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input violated an operation's documented precondition.
class precondition_error : public error {
public:
    using error::error;
};

/// The two surfaces do not meet (equal m, equal n, or vanishing determinant).
class no_intersection : public error {
public:
    using error::error;
};

/// lambda/m or lambda*/n is undefined because m = 0 or n = 0.
class degenerate_parametrization : public error {
public:
    using error::error;
};

/// No admissible (d, gamma) pair exists for the condition-2 equations.
class empty_family : public error {
public:
    using error::error;
};

/// Argument outside the domain of a special function (nome not in (0,1), z = 0).
class domain_error : public error {
public:
    using error::error;
};

/// Evaluation point lies on (or within tolerance of) a zero of a theta denominator.
class pole_error : public error {
public:
    using error::error;
};

/// Result of exact integer arithmetic does not fit in 64 bits.
class overflow_error : public error {
public:
    using error::error;
};

} // namespace abelian
