#pragma once

#include <stdexcept>
#include <string>

namespace prediql {

// Network-level failure before an HTTP status was obtained.
struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The endpoint answered with HTTP >= 400.
struct EndpointError : std::runtime_error {
    int status;
    EndpointError(int status_, const std::string& what)
        : std::runtime_error(what), status(status_) {}
};

// Introspection response carried no `__schema` key. Reportable as a security
// observation in its own right (introspection is OFF on the target).
struct IntrospectionDisabledError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedSchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StorageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// GraphQL document syntax error with source position (1-based).
struct SyntaxError : std::runtime_error {
    int line;
    int column;
    SyntaxError(int line_, int column_, const std::string& msg)
        : std::runtime_error("syntax error at " + std::to_string(line_) + ":" +
                             std::to_string(column_) + ": " + msg),
          line(line_),
          column(column_) {}
};

} // namespace prediql
