#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "tracekc/service/api_service.hpp"

namespace tracekc::service {

// HTTP binding for ApiService. One instance serves until stop().
class HttpServer {
public:
    explicit HttpServer(ApiService& service, std::filesystem::path static_dir = {});
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    // Port 0 binds an ephemeral port. Returns the bound port, or -1.
    int bind(const std::string& host, int port);
    // Blocks until stop().
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace tracekc::service
