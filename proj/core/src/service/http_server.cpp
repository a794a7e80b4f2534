#include "tracekc/service/http_server.hpp"

#include <httplib.h>

namespace tracekc::service {

struct HttpServer::Impl {
    explicit Impl(ApiService& s) : service(s) {}
    ApiService& service;
    httplib::Server server;
};

HttpServer::HttpServer(ApiService& service, std::filesystem::path static_dir)
    : impl_(std::make_unique<Impl>(service)) {
    auto& srv = impl_->server;
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
        ApiResponse r = impl_->service.handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    srv.Get("/theories", forward);
    srv.Post("/admin/reload", forward);
    srv.Post(R"(/theories/([^/]+)/(query|dag))", forward);
    if (!static_dir.empty()) srv.set_mount_point("/", static_dir.string());
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_) impl_->server.stop();
}

}  // namespace tracekc::service
