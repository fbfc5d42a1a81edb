#pragma once

#include <stdexcept>
#include <string>

namespace ecotour {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// thrown when a cost graph admits a cycle with negative total energy
struct NegativeCycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnreachableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sequence is not a depot-anchored tour over existing arcs covering all terminals
struct NotATourError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InstanceTooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenerationFailedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ecotour
