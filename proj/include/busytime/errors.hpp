#pragma once

#include <stdexcept>
#include <string>

namespace busytime {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (times, JSON documents, CSV rows).
struct ParseError : Error {
    using Error::Error;
};

/// An interval [lo, hi) with lo >= hi.
struct InvalidIntervalError : Error {
    using Error::Error;
};

/// A job or instance violating basic validity (p <= 0, window too short,
/// duplicate ids, negative lookahead).
struct ValidationError : Error {
    using Error::Error;
};

/// An algorithm or oracle was invoked on an instance outside its contract
/// (wrong machine model, non-uniform jobs, insufficient lookahead).
struct PreconditionError : Error {
    using Error::Error;
};

/// A scheduler committed a decision that violates a job window or repeats a job.
struct InfeasibleDecisionError : Error {
    explicit InfeasibleDecisionError(int job, const std::string& what)
        : Error(what), job_id(job) {}
    int job_id;
};

/// A revealed job passed its latest start time without a decision.
struct DeadlineMissError : Error {
    explicit DeadlineMissError(int job, const std::string& what)
        : Error(what), job_id(job) {}
    int job_id;
};

/// An adversary broke the release protocol (release in the past, reused id).
struct ProtocolError : Error {
    using Error::Error;
};

/// A finished schedule failed validation; carries the first violation found.
struct FeasibilityError : Error {
    FeasibilityError(int job, const std::string& what) : Error(what), job_id(job) {}
    int job_id;
};

/// An exact oracle was asked for more jobs than its cap allows.
struct SizeCapError : Error {
    using Error::Error;
};

/// A schedule rearrangement could not be carried out on the given input,
/// usually an adversary/algorithm mismatch.
struct ConstructionError : Error {
    using Error::Error;
};

/// Bad experiment or CLI configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace busytime
