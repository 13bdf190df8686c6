#pragma once

// Range scanning with ordered output. Dynamic chunks of primes feed N
// workers; the coordinator drains completed chunks strictly in order, so the
// record stream is ascending and byte-identical whatever the jobs count.
// JSONL/CSV rendering of reports lives here too; the CLI is a thin shell.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "wolst/primes.hpp"
#include "wolst/theorems.hpp"

namespace wolst {

enum class ScanFormat { jsonl, csv };

struct ScanConfig {
    u64 lo = 7, hi = 0; // primes in [lo, hi); 7 <= lo < hi <= 2^21
    int jobs = 1;
    bool deep = false;
    ScanFormat format = ScanFormat::jsonl;
};

struct ScanSummary {
    u64 primes_scanned = 0;
    std::vector<u64> wolstenholme; // flagged primes, ascending
    u64 inconsistent = 0;          // reports with a false consistency flag
    u64 failed_checks = 0;         // reports with a non-empty failure list
    double seconds = 0.0;
};

// --- rendering ---------------------------------------------------------

namespace detail {

inline void append_quoted(std::string& s, const std::string& v) {
    s += '"';
    for (char ch : v) {
        if (ch == '"' || ch == '\\') s += '\\';
        s += ch;
    }
    s += '"';
}

} // namespace detail

inline std::string to_jsonl(const PrimeReport& r) {
    std::string s;
    s.reserve(256);
    s += "{\"p\":" + std::to_string(r.p);
    s += ",\"v_binom_minus_1\":" + std::to_string(r.level_a.v);
    s += ",\"v_binom_saturated\":";
    s += r.level_a.saturated ? "true" : "false";
    s += ",\"v_h1\":" + std::to_string(r.level_b.v);
    s += ",\"v_h2\":" + std::to_string(r.level_c.v);
    s += ",\"bern_p3\":" + std::to_string(r.bern_p3);
    s += ",\"bern_p5\":";
    s += r.bern_p5 ? std::to_string(*r.bern_p5) : "null";
    s += ",\"bern_big\":";
    s += r.bern_big ? std::to_string(*r.bern_big) : "null";
    s += ",\"wolstenholme\":";
    s += r.is_wolstenholme ? "true" : "false";
    s += ",\"thm1_consistent\":";
    s += r.thm1_consistent ? "true" : "false";
    s += ",\"thm2_consistent\":";
    s += r.thm2_consistent ? (*r.thm2_consistent ? "true" : "false") : "null";
    s += ",\"failures\":[";
    for (std::size_t i = 0; i < r.check_failures.size(); ++i) {
        if (i) s += ',';
        detail::append_quoted(s, r.check_failures[i]);
    }
    s += "]}";
    return s;
}

inline const char* csv_header() {
    return "p,v_binom_minus_1,v_binom_saturated,v_h1,v_h2,bern_p3,bern_p5,"
           "bern_big,wolstenholme,thm1_consistent,thm2_consistent,failures";
}

inline std::string to_csv_row(const PrimeReport& r) {
    std::string s;
    s.reserve(128);
    s += std::to_string(r.p);
    s += ',' + std::to_string(r.level_a.v);
    s += r.level_a.saturated ? ",true" : ",false";
    s += ',' + std::to_string(r.level_b.v);
    s += ',' + std::to_string(r.level_c.v);
    s += ',' + std::to_string(r.bern_p3);
    s += ',';
    if (r.bern_p5) s += std::to_string(*r.bern_p5);
    s += ',';
    if (r.bern_big) s += std::to_string(*r.bern_big);
    s += r.is_wolstenholme ? ",true" : ",false";
    s += r.thm1_consistent ? ",true" : ",false";
    s += ',';
    if (r.thm2_consistent) s += *r.thm2_consistent ? "true" : "false";
    s += ',';
    for (std::size_t i = 0; i < r.check_failures.size(); ++i) {
        if (i) s += ';';
        s += r.check_failures[i];
    }
    return s;
}

// --- engine -------------------------------------------------------------

// Runs build_report over every prime in [cfg.lo, cfg.hi) and hands reports to
// sink in ascending order on the calling thread. Worker exceptions are
// captured and rethrown here after the pool drains.
template <class Sink>
ScanSummary scan_range(const ScanConfig& cfg, Sink&& sink) {
    if (cfg.lo < 7)
        throw RangeTooLargeError("scan range must satisfy 7 <= lo < hi <= 2^21");
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<u64> ps = primes_in({cfg.lo, cfg.hi});
    const std::size_t n = ps.size();
    constexpr std::size_t chunk = 16;
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    const int jobs = std::max(1, cfg.jobs);

    std::vector<std::vector<PrimeReport>> done(nchunks);
    std::vector<char> ready(nchunks, 0);
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::condition_variable cv;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            std::vector<PrimeReport> batch;
            const std::size_t b = c * chunk, e = std::min(n, b + chunk);
            batch.reserve(e - b);
            try {
                for (std::size_t i = b; i < e; ++i)
                    batch.push_back(build_report(ps[i], cfg.deep));
            } catch (...) {
                std::lock_guard<std::mutex> g(mu);
                if (!first_error) first_error = std::current_exception();
                batch.clear(); // chunk still marked ready so the drain loop ends
            }
            {
                std::lock_guard<std::mutex> g(mu);
                done[c] = std::move(batch);
                ready[c] = 1;
            }
            cv.notify_one();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);

    ScanSummary sum;
    {
        std::unique_lock<std::mutex> lk(mu);
        for (std::size_t c = 0; c < nchunks; ++c) {
            cv.wait(lk, [&] { return ready[c] != 0; });
            std::vector<PrimeReport> batch = std::move(done[c]);
            lk.unlock();
            for (const PrimeReport& r : batch) {
                ++sum.primes_scanned;
                if (r.is_wolstenholme) sum.wolstenholme.push_back(r.p);
                if (!r.thm1_consistent ||
                    (r.thm2_consistent && !*r.thm2_consistent))
                    ++sum.inconsistent;
                if (!r.check_failures.empty()) ++sum.failed_checks;
                sink(r);
            }
            lk.lock();
        }
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    sum.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sum;
}

} // namespace wolst
