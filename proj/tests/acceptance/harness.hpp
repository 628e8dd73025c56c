#pragma once

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace acceptance {

class Harness {
 public:
  // Runs one criterion, prints a single pass/fail line with its runtime.
  void criterion(const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %-38s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
                detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
    ++total_;
    failures_ += !ok;
  }

  int finish() const {
    std::printf("%d/%d criteria passed\n", total_ - failures_, total_);
    return failures_;
  }

 private:
  int total_ = 0;
  int failures_ = 0;
};

}  // namespace acceptance
