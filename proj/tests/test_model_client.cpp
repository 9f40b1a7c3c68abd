#include <doctest.h>

#include <cstdlib>

#include "gridbench/model_client.hpp"

using namespace gridbench;

namespace {

// Deterministic virtual clock: sleeping advances time instantly.
class FakeClock : public Clock {
public:
    double now_ms() override { return now_; }
    void sleep_ms(double ms) override {
        if (ms > 0) now_ += ms;
        ++sleeps;
    }
    double now_ = 0.0;
    int sleeps = 0;
};

}  // namespace

TEST_CASE("mock transport returns canned text with latency") {
    FakeClock clock;
    MockTransport mock([](const std::string& id, const std::string&) {
        return "[[1]] for " + id;
    }, clock);
    mock.set_delay_ms(50);
    Completion c = mock.complete("ep-1", "prompt");
    CHECK(c.text == "[[1]] for ep-1");
    CHECK(c.latency_ms >= 50.0);
    CHECK(c.attempts == 1);
}

TEST_CASE("mock transport retry contract") {
    FakeClock clock;
    MockTransport mock([](const std::string&, const std::string&) { return "ok"; },
                       clock);
    mock.fail_next(2);
    Completion c = mock.complete("ep", "p");
    CHECK(c.text == "ok");
    CHECK(c.attempts == 3);

    mock.fail_next(10);
    CHECK_THROWS_AS(mock.complete("ep", "p"), TransportError);
    try {
        mock.fail_next(10);
        mock.complete("ep", "p");
    } catch (const TransportError& e) {
        CHECK(e.attempts == 4);  // max_retries 3 + the initial attempt
        CHECK(e.kind == "injected");
    }
}

TEST_CASE("rate limiter never exceeds rpm over any window") {
    FakeClock clock;
    RateLimiter limiter(60.0, clock);  // 1 request per second sustained
    std::vector<double> stamps;
    for (int i = 0; i < 120; ++i) {
        limiter.acquire();
        stamps.push_back(clock.now_ms());
    }
    // Any 60-second window holds at most 60 dispatches (+1 boundary grant).
    for (std::size_t i = 0; i + 61 < stamps.size(); ++i) {
        CHECK(stamps[i + 61] - stamps[i] >= 1000.0 * (61 - 60));
    }
    // The burst capacity is one bucket; afterwards the steady rate applies.
    CHECK(stamps.back() >= 59000.0);
}

TEST_CASE("missing auth variable fails before any network call") {
    ModelHandle handle;
    handle.model_id = "m";
    handle.endpoint = "https://localhost:1/v1/chat/completions";
    handle.auth_env = "GRIDBENCH_TEST_NO_SUCH_KEY";
    ::unsetenv(handle.auth_env.c_str());
    CHECK_THROWS_AS(HttpTransport{handle}, AuthError);
}

TEST_CASE("http transport rejects endpoints without a scheme") {
    FakeClock clock;
    ModelHandle handle;
    handle.model_id = "m";
    handle.endpoint = "localhost/v1";
    HttpTransport transport(handle, clock);
    CHECK_THROWS_AS(transport.complete("ep", "p"), ConfigError);
}
