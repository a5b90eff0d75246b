#include "weil2/veritool.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

int main(int argc, char** argv)
{
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    bool verbose = false;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "-v")
            verbose = true;
        else if (a.rfind("--threads=", 0) == 0)
            threads = std::max(1, std::atoi(a.c_str() + 10));
    }

    int failures = 0;
    for (const auto& c : weil2::acceptance_criteria()) {
        auto start = std::chrono::steady_clock::now();
        weil2::CheckResult r;
        std::string error;
        try {
            r = c.run(threads);
        } catch (const std::exception& e) {
            error = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = secs <= c.limit_seconds;
        bool ok = error.empty() && r.status != weil2::Status::fail && in_time;
        failures += !ok;
        std::printf("Criterion %d: %s (%s, %.2fs of %.0fs)\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(), secs,
                    c.limit_seconds);
        if (!error.empty())
            std::printf("  exception: %s\n", error.c_str());
        else if (!in_time)
            std::printf("  over the time limit\n");
        if (!ok || verbose)
            std::printf("  %s\n", r.detail.dump().c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
