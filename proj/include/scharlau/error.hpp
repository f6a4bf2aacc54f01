#pragma once

#include <stdexcept>
#include <string>

namespace scharlau {

// Base for every error raised by the library. The CLI maps these onto exit
// codes: InputError -> 2, CheckFailure -> 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid user input or violated precondition.
class InputError : public Error {
public:
    using Error::Error;
};

// A mathematical check that should hold did not.
class CheckFailure : public Error {
public:
    using Error::Error;
};

class NotPrime : public InputError {
public:
    using InputError::InputError;
};

class ModulusMismatch : public InputError {
public:
    using InputError::InputError;
};

class NotInvertible : public InputError {
public:
    using InputError::InputError;
};

class NoSolution : public InputError {
public:
    using InputError::InputError;
};

class NotInSL2 : public InputError {
public:
    using InputError::InputError;
};

class OrderCap : public InputError {
public:
    using InputError::InputError;
};

class BadSpec : public InputError {
public:
    using InputError::InputError;
};

class BadTable : public InputError {
public:
    using InputError::InputError;
};

class ParentMismatch : public InputError {
public:
    using InputError::InputError;
};

class InvalidPartition : public InputError {
public:
    using InputError::InputError;
};

class ViolatedPrediction : public CheckFailure {
public:
    using CheckFailure::CheckFailure;
};

class IdentityFailure : public CheckFailure {
public:
    using CheckFailure::CheckFailure;
};

class CoefficientMismatch : public CheckFailure {
public:
    using CheckFailure::CheckFailure;
};

}  // namespace scharlau
