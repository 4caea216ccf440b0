#include "prediql/transport.hpp"

#include "prediql/errors.hpp"

#include <httplib.h>

namespace prediql {

namespace {

// Splits "http://host:port/path" into the httplib base and the path part.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("endpoint must start with http:// or https://: " + endpoint);
    }
    auto path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return {endpoint, "/"};
    }
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

} // namespace

HttpTransport::HttpTransport(std::string endpoint, HeaderSet headers,
                             std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), headers_(std::move(headers)), timeout_(timeout) {
    std::tie(base_, path_) = split_endpoint(endpoint_);
}

TransportResult HttpTransport::post_json(const std::string& body) {
    httplib::Client client(base_);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout_).count(),
                                  (timeout_.count() % 1000) * 1000);
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout_).count(),
                            (timeout_.count() % 1000) * 1000);
    client.set_follow_location(true);

    httplib::Headers headers;
    for (const auto& [k, v] : headers_) {
        headers.emplace(k, v);
    }

    TransportResult result;
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
        const auto err = res.error();
        result.ok = false;
        result.timed_out = err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read;
        result.error = httplib::to_string(err);
        return result;
    }
    result.ok = true;
    result.status = res->status;
    result.body = res->body;
    return result;
}

} // namespace prediql
