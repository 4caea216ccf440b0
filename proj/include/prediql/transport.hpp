#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <string>

namespace prediql {

using HeaderSet = std::map<std::string, std::string>;

struct TransportResult {
    bool ok = false;       // an HTTP status was obtained
    bool timed_out = false;
    int status = 0;
    std::string body;
    std::string error; // transport-level description when !ok
};

// Wire seam between the engine and a GraphQL endpoint. The fixture implements
// it in-process; HttpTransport talks to real servers.
class Transport {
public:
    virtual ~Transport() = default;
    virtual TransportResult post_json(const std::string& body) = 0;
    virtual std::string target() const = 0;
};

class HttpTransport : public Transport {
public:
    HttpTransport(std::string endpoint, HeaderSet headers = {},
                  std::chrono::milliseconds timeout = std::chrono::milliseconds(15000));

    TransportResult post_json(const std::string& body) override;
    std::string target() const override { return endpoint_; }

private:
    std::string endpoint_;
    std::string base_;
    std::string path_;
    HeaderSet headers_;
    std::chrono::milliseconds timeout_;
};

} // namespace prediql
