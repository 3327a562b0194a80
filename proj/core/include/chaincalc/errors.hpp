#pragma once

#include <stdexcept>
#include <string>

namespace chaincalc {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data (bad sizes, unparsable values, unresolved names).
class input_error : public error {
public:
    using error::error;
};

// A value lies outside the domain an operation expects
// (wrong coordinate length, element of the wrong group, basis mismatch).
class domain_error : public error {
public:
    using error::error;
};

// A matrix does not define a homomorphism between the given groups.
class welldef_error : public error {
public:
    using error::error;
};

// Structurally inconsistent aggregate data (dangling indices, shape clashes).
class structural_error : public error {
public:
    using error::error;
};

// Required optional data is absent for the requested operation.
class config_error : public error {
public:
    using error::error;
};

// A documented precondition of an operation does not hold.
class precondition_error : public error {
public:
    using error::error;
};

// A stated invariant of a datum is violated.
class invariant_error : public error {
public:
    using error::error;
};

// A computation exceeded its configured resource bound.
class resource_error : public error {
public:
    using error::error;
};

// The input falls outside the supported fragment.
class unsupported_error : public error {
public:
    using error::error;
};

} // namespace chaincalc
