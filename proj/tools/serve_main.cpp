#include <csignal>
#include <iostream>

#include <CLI11.hpp>

#include "tracekc/error.hpp"
#include "tracekc/service/http_server.hpp"

namespace {
tracekc::service::HttpServer* g_server = nullptr;
void on_signal(int) {
    if (g_server) g_server->stop();
}
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serve compiled theories over HTTP/JSON", "tracekc-serve"};
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string theory_dir;
    std::size_t node_cap = 2000;
    std::string ui_dir;
    app.add_option("--host", host)->envname("TRACEKC_HOST");
    app.add_option("--port", port)->envname("TRACEKC_PORT");
    app.add_option("--theories", theory_dir, "Directory of *.nnf theories")->envname("TRACEKC_THEORY_DIR")->required();
    app.add_option("--node-cap", node_cap, "Largest DAG /dag will render")->envname("TRACEKC_NODE_CAP");
    app.add_option("--ui-dir", ui_dir, "Static files served at /")->envname("TRACEKC_UI_DIR");
    CLI11_PARSE(app, argc, argv);

    try {
        tracekc::service::ApiService service({theory_dir, node_cap});
        tracekc::service::HttpServer server(service, ui_dir);
        int bound = server.bind(host, port);
        if (bound < 0) {
            std::cerr << "error: cannot bind " << host << ':' << port << '\n';
            return 2;
        }
        g_server = &server;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        std::cerr << "serving " << service.theory_count() << " theories on http://" << host << ':' << bound << '\n';
        server.listen();
    } catch (const tracekc::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
