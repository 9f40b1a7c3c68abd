#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "gridbench/errors.hpp"

namespace gridbench {

// Wall-clock abstraction so rate limiting and backoff are testable with a
// virtual clock.
class Clock {
public:
    virtual ~Clock() = default;
    virtual double now_ms() = 0;
    virtual void sleep_ms(double ms) = 0;
};

class SystemClock : public Clock {
public:
    double now_ms() override;
    void sleep_ms(double ms) override;
};

Clock& system_clock();

// Token bucket over a 60 s window; never dispatches above `rpm` requests
// per minute. Safe for concurrent acquire().
class RateLimiter {
public:
    RateLimiter(double rpm, Clock& clock);
    void acquire();

private:
    double rpm_;
    Clock& clock_;
    std::mutex mutex_;
    double tokens_;
    double last_ms_;
};

struct ModelHandle {
    std::string model_id;
    std::string endpoint;  // e.g. https://api.example.com/v1/chat/completions
    std::string auth_env;  // environment variable holding the API key
    double temperature = 0.0;
    int max_tokens = 4096;
    double timeout_s = 120.0;
    double rpm = 60.0;
    int max_retries = 3;
};

struct Completion {
    std::string text;
    double latency_ms = 0.0;  // full request including retries
    int attempts = 1;
    std::optional<std::int64_t> prompt_tokens;
    std::optional<std::int64_t> completion_tokens;
};

class Transport {
public:
    virtual ~Transport() = default;
    virtual Completion complete(const std::string& episode_id,
                                const std::string& prompt) = 0;
};

// JSON chat-completion client with retries (timeout/429/5xx, exponential
// backoff) and rate limiting. Secret material stays in the environment and
// is never echoed into errors or records.
class HttpTransport : public Transport {
public:
    HttpTransport(ModelHandle handle, Clock& clock = system_clock());
    Completion complete(const std::string& episode_id,
                        const std::string& prompt) override;

private:
    ModelHandle handle_;
    Clock& clock_;
    RateLimiter limiter_;
    std::string api_key_;
};

// Offline transport for tests: canned responder plus injectable failures
// and latency.
class MockTransport : public Transport {
public:
    using Responder = std::function<std::string(const std::string& episode_id,
                                                const std::string& prompt)>;
    explicit MockTransport(Responder responder, Clock& clock = system_clock());

    void fail_next(int n) { fail_next_ = n; }
    void set_delay_ms(double ms) { delay_ms_ = ms; }
    void set_max_retries(int n) { max_retries_ = n; }

    Completion complete(const std::string& episode_id,
                        const std::string& prompt) override;

private:
    Responder responder_;
    Clock& clock_;
    int fail_next_ = 0;
    double delay_ms_ = 0.0;
    int max_retries_ = 3;
    std::mutex mutex_;
};

}  // namespace gridbench
