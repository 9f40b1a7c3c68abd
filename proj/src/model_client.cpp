#include "gridbench/model_client.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace gridbench {

double SystemClock::now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

void SystemClock::sleep_ms(double ms) {
    if (ms > 0) std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(ms));
}

Clock& system_clock() {
    static SystemClock clock;
    return clock;
}

RateLimiter::RateLimiter(double rpm, Clock& clock)
    : rpm_(rpm), clock_(clock), tokens_(rpm), last_ms_(clock.now_ms()) {}

void RateLimiter::acquire() {
    std::unique_lock lock(mutex_);
    for (;;) {
        const double now = clock_.now_ms();
        tokens_ = std::min(rpm_, tokens_ + (now - last_ms_) * rpm_ / 60000.0);
        last_ms_ = now;
        if (tokens_ >= 1.0) {
            tokens_ -= 1.0;
            return;
        }
        const double wait = (1.0 - tokens_) * 60000.0 / rpm_;
        lock.unlock();
        clock_.sleep_ms(wait);
        lock.lock();
    }
}

HttpTransport::HttpTransport(ModelHandle handle, Clock& clock)
    : handle_(std::move(handle)), clock_(clock), limiter_(handle_.rpm, clock) {
    if (!handle_.auth_env.empty()) {
        const char* key = std::getenv(handle_.auth_env.c_str());
        if (!key || !*key) {
            throw AuthError("environment variable " + handle_.auth_env + " is not set");
        }
        api_key_ = key;
    }
}

Completion HttpTransport::complete(const std::string& /*episode_id*/,
                                   const std::string& prompt) {
    // Split the endpoint into scheme://host[:port] and path.
    const auto scheme_end = handle_.endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("endpoint must include a scheme: " + handle_.endpoint);
    }
    const auto path_start = handle_.endpoint.find('/', scheme_end + 3);
    const std::string base = path_start == std::string::npos
                                 ? handle_.endpoint
                                 : handle_.endpoint.substr(0, path_start);
    const std::string path =
        path_start == std::string::npos ? "/" : handle_.endpoint.substr(path_start);

    nlohmann::json body{
        {"model", handle_.model_id},
        {"messages", {{{"role", "user"}, {"content", prompt}}}},
        {"temperature", handle_.temperature},
        {"max_tokens", handle_.max_tokens},
    };
    const std::string payload = body.dump();

    const double start = clock_.now_ms();
    std::string last_kind = "unknown";
    for (int attempt = 1; attempt <= handle_.max_retries + 1; ++attempt) {
        limiter_.acquire();
        httplib::Client client(base);
        client.set_read_timeout(std::chrono::duration<double>(handle_.timeout_s));
        client.set_connection_timeout(std::chrono::duration<double>(handle_.timeout_s));
        httplib::Headers headers;
        if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

        auto res = client.Post(path, headers, payload, "application/json");
        if (!res) {
            last_kind = "timeout";
        } else if (res->status == 429 || res->status >= 500) {
            last_kind = "http_" + std::to_string(res->status);
        } else if (res->status >= 400) {
            throw TransportError("http_" + std::to_string(res->status), attempt,
                                 handle_.model_id + ": request rejected with status " +
                                     std::to_string(res->status));
        } else {
            nlohmann::json reply;
            try {
                reply = nlohmann::json::parse(res->body);
            } catch (const nlohmann::json::parse_error&) {
                throw TransportError("bad_json", attempt,
                                     handle_.model_id + ": unparseable response body");
            }
            Completion out;
            out.text = reply.at("choices").at(0).at("message").at("content")
                           .get<std::string>();
            if (reply.contains("usage")) {
                const auto& usage = reply["usage"];
                if (usage.contains("prompt_tokens"))
                    out.prompt_tokens = usage["prompt_tokens"].get<std::int64_t>();
                if (usage.contains("completion_tokens"))
                    out.completion_tokens = usage["completion_tokens"].get<std::int64_t>();
            }
            out.attempts = attempt;
            out.latency_ms = clock_.now_ms() - start;
            return out;
        }
        if (attempt <= handle_.max_retries) {
            clock_.sleep_ms(std::min(4000.0, 250.0 * double(1 << (attempt - 1))));
        }
    }
    throw TransportError(last_kind, handle_.max_retries + 1,
                         handle_.model_id + ": retries exhausted (" + last_kind + ")");
}

MockTransport::MockTransport(Responder responder, Clock& clock)
    : responder_(std::move(responder)), clock_(clock) {}

Completion MockTransport::complete(const std::string& episode_id,
                                   const std::string& prompt) {
    const double start = clock_.now_ms();
    for (int attempt = 1; attempt <= max_retries_ + 1; ++attempt) {
        bool fail;
        {
            std::lock_guard lock(mutex_);
            fail = fail_next_ > 0;
            if (fail) --fail_next_;
        }
        if (delay_ms_ > 0) clock_.sleep_ms(delay_ms_);
        if (fail) {
            if (attempt > max_retries_) {
                throw TransportError("injected", attempt, "mock failure");
            }
            continue;
        }
        Completion out;
        out.text = responder_(episode_id, prompt);
        out.attempts = attempt;
        out.latency_ms = clock_.now_ms() - start;
        return out;
    }
    throw TransportError("injected", max_retries_ + 1, "mock failure");
}

}  // namespace gridbench
