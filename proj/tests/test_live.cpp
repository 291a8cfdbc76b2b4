#include <atomic>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include "kwactor/error.hpp"
#include "kwactor/live.hpp"

using namespace kwactor;

namespace {

// Local stand-in for the search engine. Serves `total` numbered results and
// answers 429 for any page starting at `fail_at` or later.
class StubEngine {
 public:
  explicit StubEngine(int total, int fail_at = -1) {
    server_.Get("/search", [=, this](const httplib::Request& req, httplib::Response& res) {
      ++search_calls;
      const int start = std::stoi(req.get_param_value("start"));
      const int count = std::stoi(req.get_param_value("count"));
      if (fail_at >= 0 && start >= fail_at) {
        res.status = 429;
        return;
      }
      nlohmann::json results = nlohmann::json::array();
      for (int i = start; i < std::min(total, start + count); ++i)
        results.push_back({{"text", "result number" + std::to_string(i) + " network"}});
      res.set_content(nlohmann::json{{"results", results}}.dump(), "application/json");
    });
    server_.Get("/hits", [](const httplib::Request& req, httplib::Response& res) {
      const auto q = req.get_param_value("q");
      if (q == "\"boom\"") {
        res.status = 500;
        return;
      }
      res.set_content(nlohmann::json{{"count", q.size() * 10}}.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubEngine() {
    server_.stop();
    thread_.join();
  }
  Endpoint endpoint() const { return Endpoint{"127.0.0.1", port_}; }
  std::atomic<int> search_calls{0};

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace

TEST(Endpoint, Parse) {
  const auto a = Endpoint::parse("http://localhost:8080/");
  EXPECT_EQ(a.host, "localhost");
  EXPECT_EQ(a.port, 8080);
  const auto b = Endpoint::parse("example.org");
  EXPECT_EQ(b.port, 80);
  EXPECT_THROW(Endpoint::parse("https://x:1"), Error);
  EXPECT_THROW(Endpoint::parse("x:port"), Error);
}

TEST(LiveSnippetProvider, PagesUntilLimit) {
  StubEngine engine(120);
  LiveSnippetProvider provider(engine.endpoint(), 50);
  const auto corpus = provider.fetch(ActorRef("Abdullah Mohd Zin"), 100);
  ASSERT_EQ(corpus.size(), 100u);
  EXPECT_EQ(engine.search_calls, 2);
  EXPECT_EQ(corpus.snippets().front().rank, 1);
  EXPECT_EQ(corpus.snippets().back().rank, 100);
  EXPECT_EQ(corpus.snippets().front().query_term, "abdullah mohd zin");
  ASSERT_TRUE(corpus.metadata().retrieved_at.has_value());
  EXPECT_EQ(corpus.metadata().retrieved_at->size(), 20u);
}

TEST(LiveSnippetProvider, StopsWhenResultsRunOut) {
  StubEngine engine(30);
  LiveSnippetProvider provider(engine.endpoint(), 20);
  EXPECT_EQ(provider.fetch(ActorRef("x"), 500).size(), 30u);
}

TEST(LiveSnippetProvider, QuotaErrorDiscardsPartialResults) {
  StubEngine engine(500, 100);
  LiveSnippetProvider provider(engine.endpoint(), 50);
  try {
    provider.fetch(ActorRef("x"), 500);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Budget);
  }
  EXPECT_EQ(engine.search_calls, 3);
}

TEST(LiveSnippetProvider, UnreachableIsTransportError) {
  Endpoint dead{"127.0.0.1", 1};
  LiveSnippetProvider provider(dead);
  try {
    provider.fetch(ActorRef("x"), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Transport);
  }
}

TEST(LiveHitSource, ReturnsCounts) {
  StubEngine engine(0);
  LiveHitSource source(engine.endpoint());
  HitProvider provider(source);
  EXPECT_EQ(provider.hit_count("use"), 50u);
  EXPECT_EQ(provider.co_hit_count("a", "use"), 30u);
  EXPECT_EQ(source.requests(), 3u);
  EXPECT_THROW(source.lookup("\"boom\""), Error);
}
