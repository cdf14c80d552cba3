#pragma once

#include <stdexcept>
#include <string>

namespace birk {

/// Input violates a documented precondition of an operation.
class contract_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The data is valid but lies outside the domain the algorithm can handle
/// (bad base point, collision, infeasible seed, ...). Maps to exit code 3.
class domain_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iteration failed to converge or produced non-finite values. Exit code 4.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class degenerate_base_point : public domain_error {
public:
    using domain_error::domain_error;
};

/// Raised when the winding validator rejects the base point (|W| != 1).
class invalid_base_point : public domain_error {
public:
    invalid_base_point(const std::string& msg, long winding)
        : domain_error(msg), winding_(winding) {}
    long winding() const { return winding_; }

private:
    long winding_;
};

/// Lift continuation found a residual above the hard cap; the trajectory is
/// too short or not quasiperiodic.
class continuation_gap : public domain_error {
public:
    using domain_error::domain_error;
};

class inconsistent_ordering : public domain_error {
public:
    using domain_error::domain_error;
};

class collision_error : public domain_error {
public:
    using domain_error::domain_error;
};

class infeasible_seed : public domain_error {
public:
    using domain_error::domain_error;
};

class integration_timeout : public domain_error {
public:
    using domain_error::domain_error;
};

class inconsistent_model : public numerical_error {
public:
    using numerical_error::numerical_error;
};

class insufficient_data : public domain_error {
public:
    using domain_error::domain_error;
};

} // namespace birk
