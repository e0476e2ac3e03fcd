#pragma once

#include <stdexcept>
#include <string>

namespace dtile {

/// Caller supplied something outside an operation's domain.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// No Steiner triple system exists for the requested order.
class UnsupportedOrder : public InputError {
public:
    using InputError::InputError;
};

/// A pipeline stage could not complete on this instance. Not a proof of
/// infeasibility: callers are expected to fall back to exact search.
class StageFailure : public std::runtime_error {
public:
    StageFailure(std::string stage, std::string what, int stuck_vertex = -1)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)), stuck_vertex_(stuck_vertex) {}

    const std::string& stage() const { return stage_; }
    int stuck_vertex() const { return stuck_vertex_; }

private:
    std::string stage_;
    int stuck_vertex_;
};

/// The randomized absorbing-family builder ran out of retries.
class ConstructionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A leftover 4-set found no unused absorber in the family.
class AbsorptionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A search hit its node or time limit under SearchBudget::OnExhaust::fail.
class SearchExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dtile
