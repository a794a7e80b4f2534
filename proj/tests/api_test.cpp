#include <gtest/gtest.h>

#include <atomic>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "oracle.hpp"
#include "pipeline.hpp"
#include "tracekc/query/result.hpp"
#include "tracekc/service/api_service.hpp"
#include "tracekc/service/http_server.hpp"

using namespace tracekc;
using namespace tracekc::service;
using json = nlohmann::json;

namespace {

Theory car_key() {
    TraceSet t(Schema{{"D", "K"}, {"dr", "sw", "in"}});
    t.add({from_bit_string("00"), "in"});
    t.add({from_bit_string("01"), "sw"});
    t.add({from_bit_string("11"), "dr"});
    return testing_pipeline::theory_from(t, {{"source", "car-key"}});
}

std::unique_ptr<ApiService> with_car_key(std::size_t cap = 2000) {
    auto s = std::make_unique<ApiService>(ServiceConfig{{}, cap});
    s->add_theory("carkey", car_key());
    return s;
}

}  // namespace

TEST(ApiService, EmptyListing) {
    ApiService s(ServiceConfig{});
    auto r = s.handle("GET", "/theories", "");
    EXPECT_EQ(r.status, 200);
    EXPECT_EQ(json::parse(r.body), json::array());
}

TEST(ApiService, ListingCarriesExactCount) {
    auto sp = with_car_key();
    auto& s = *sp;
    auto j = json::parse(s.list_theories().body);
    ASSERT_EQ(j.size(), 1u);
    EXPECT_EQ(j[0]["id"], "carkey");
    EXPECT_EQ(j[0]["model_count"], car_key().model_count().str());
    EXPECT_EQ(j[0]["model_count"], "3");
    EXPECT_EQ(j[0]["schema"]["actions"], json({"dr", "sw", "in"}));
    EXPECT_EQ(j[0]["schema"]["state_variables"], json({"D", "K"}));
}

TEST(ApiService, QueryMatchesEngine) {
    auto sp = with_car_key();
    auto& s = *sp;
    auto r = s.handle("POST", "/theories/carkey/query", R"({"evidence": {"K": true}})");
    ASSERT_EQ(r.status, 200) << r.body;
    auto j = json::parse(r.body);
    Theory th = car_key();
    auto direct = to_json(th.action_likelihood(th.parse_evidence("K=1")));
    EXPECT_EQ(j["likelihoods"], json::parse(direct["likelihoods"].dump()));
    EXPECT_EQ(j["likelihoods"][0]["exact"], "1/2");  // dr
    EXPECT_EQ(j["likelihoods"][2]["exact"], "0/1");    // in
}

TEST(ApiService, EmptyEvidenceSumsToOne) {
    auto sp = with_car_key();
    auto& s = *sp;
    auto j = json::parse(s.query("carkey", "{}").body);
    double sum = 0;
    for (const auto& l : j["likelihoods"]) sum += l["decimal"].get<double>();
    EXPECT_DOUBLE_EQ(sum, 1.0);
    EXPECT_EQ(s.query("carkey", "").status, 200);
}

TEST(ApiService, CompleteStateGivesSingleAction) {
    auto sp = with_car_key();
    auto& s = *sp;
    auto j = json::parse(s.query("carkey", R"({"evidence": {"D": false, "K": true}})").body);
    EXPECT_EQ(j["likelihoods"][1]["name"], "sw");
    EXPECT_EQ(j["likelihoods"][1]["exact"], "1/1");
}

TEST(ApiService, StateTarget) {
    auto sp = with_car_key();
    auto& s = *sp;
    auto j = json::parse(s.query("carkey", R"({"evidence": {"action=sw": true}, "target": "state"})").body);
    EXPECT_EQ(j["likelihoods"][0]["exact"], "0/1");  // D
    EXPECT_EQ(j["likelihoods"][1]["exact"], "1/1");  // K
}

TEST(ApiService, ErrorStatuses) {
    auto sp = with_car_key(5);
    auto& s = *sp;
    EXPECT_EQ(s.handle("POST", "/theories/nope/query", "{}").status, 404);
    EXPECT_EQ(s.handle("POST", "/theories/carkey/query", R"({"evidence": {"Z": true}})").status, 422);
    EXPECT_EQ(s.handle("POST", "/theories/carkey/query", R"({"evidence": {"D": true, "K": false}})").status, 409);
    EXPECT_EQ(s.handle("POST", "/theories/carkey/query", "{not json").status, 400);
    EXPECT_EQ(s.handle("POST", "/theories/carkey/query", R"({"evidence": {"D": 1}})").status, 400);
    EXPECT_EQ(s.handle("POST", "/theories/carkey/query", R"({"target": "everything"})").status, 400);
    EXPECT_EQ(s.handle("GET", "/theories/carkey/query", "").status, 405);
    EXPECT_EQ(s.handle("POST", "/theories/carkey/dag", "{}").status, 413);
    EXPECT_EQ(s.handle("GET", "/elsewhere", "").status, 404);
    auto j = json::parse(s.handle("POST", "/theories/carkey/query", R"({"evidence": {"D": true, "K": false}})").body);
    EXPECT_EQ(j["error"], "no supporting observations");
}

TEST(ApiService, DagRendering) {
    auto sp = with_car_key();
    auto& s = *sp;
    auto full = json::parse(s.dag("carkey", "{}").body);
    EXPECT_EQ(full["node_count"], car_key().dag().node_count());
    EXPECT_EQ(full["root"], full["node_count"].get<std::size_t>() - 1);
    for (const auto& n : full["nodes"])
        for (const auto& c : n.value("children", json::array())) EXPECT_LT(c.get<std::size_t>(), n["id"].get<std::size_t>());

    auto pruned = json::parse(s.dag("carkey", R"({"evidence": {"K": true}})").body);
    EXPECT_LT(pruned["node_count"].get<std::size_t>(), full["node_count"].get<std::size_t>());
    for (const auto& n : pruned["nodes"])
        if (n["kind"] == "lit") EXPECT_NE(n["literal"]["var"], "K");

    auto none = json::parse(s.dag("carkey", R"({"evidence": {"D": true, "K": false}})").body);
    EXPECT_EQ(none["node_count"], 1);
    EXPECT_EQ(none["nodes"][0]["kind"], "false");
}

TEST(ApiService, ReloadFromDirectoryIsStable) {
    oracle::TempDir dir("api");
    Theory th = car_key();
    save_theory(dir / "b.nnf", th.dag(), th.metadata());
    save_theory(dir / "a.nnf", th.dag(), th.metadata());
    ApiService first(ServiceConfig{dir.path(), 2000});
    ApiService second(ServiceConfig{dir.path(), 2000});
    EXPECT_EQ(first.theory_count(), 2u);
    EXPECT_EQ(first.list_theories().body, second.list_theories().body);
    std::filesystem::remove(dir / "b.nnf");
    EXPECT_EQ(first.handle("POST", "/admin/reload", "").status, 200);
    EXPECT_EQ(first.theory_count(), 1u);
    {
        std::ofstream broken(dir / "c.nnf");
        broken << "nnf 3 2 1\nL 1\nL -1\nA 2 0 1\n";
    }
    EXPECT_EQ(first.handle("POST", "/admin/reload", "").status, 400);
    EXPECT_EQ(first.theory_count(), 1u);
}

TEST(ApiService, ConcurrentIdenticalRequestsAgree) {
    auto sp = with_car_key();
    auto& s = *sp;
    const std::string body = R"({"evidence": {"K": true}})";
    const std::string expected = s.query("carkey", body).body;
    std::vector<std::thread> threads;
    std::atomic<int> mismatches{0};
    for (int t = 0; t < 8; ++t)
        threads.emplace_back([&] {
            for (int i = 0; i < 200; ++i)
                if (s.query("carkey", body).body != expected) ++mismatches;
        });
    for (int i = 0; i < 20; ++i) s.add_theory("other" + std::to_string(i), car_key());
    for (auto& th : threads) th.join();
    EXPECT_EQ(mismatches, 0);
}

TEST(HttpServer, ServesOverLoopback) {
    oracle::TempDir dir("http");
    Theory th = car_key();
    save_theory(dir / "carkey.nnf", th.dag(), th.metadata());
    ApiService service(ServiceConfig{dir.path(), 2000});
    HttpServer server(service);
    int port = server.bind("127.0.0.1", 0);
    ASSERT_GT(port, 0);
    std::thread loop([&] { server.listen(); });

    httplib::Client client("127.0.0.1", port);
    client.set_connection_timeout(5);
    auto list = client.Get("/theories");
    ASSERT_TRUE(list);
    EXPECT_EQ(list->status, 200);
    EXPECT_EQ(json::parse(list->body)[0]["id"], "carkey");

    auto q = client.Post("/theories/carkey/query", R"({"evidence": {"K": true}})", "application/json");
    ASSERT_TRUE(q);
    EXPECT_EQ(q->status, 200);
    EXPECT_EQ(q->body, service.query("carkey", R"({"evidence": {"K": true}})").body);

    auto missing = client.Post("/theories/nope/dag", "{}", "application/json");
    ASSERT_TRUE(missing);
    EXPECT_EQ(missing->status, 404);
    auto conflict = client.Post("/theories/carkey/query", R"({"evidence": {"D": true, "K": false}})", "application/json");
    ASSERT_TRUE(conflict);
    EXPECT_EQ(conflict->status, 409);
    auto reload = client.Post("/admin/reload", "", "application/json");
    ASSERT_TRUE(reload);
    EXPECT_EQ(reload->status, 200);

    server.stop();
    loop.join();
}
