// Runs acceptance criteria 1..10 and prints one PASS/FAIL line per criterion.
// Usage: acceptance [--jobs N] [criterion ...]

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "qng/verify.hpp"

int main(int argc, char** argv) {
  qng::verify::Options options;
  options.progress = &std::cerr;
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--jobs" && i + 1 < argc) options.jobs = std::atoi(argv[++i]);
    else wanted.push_back(std::atoi(a.c_str()));
  }
  if (const char* env = std::getenv("QNG_CERTIFY_JOBS")) options.jobs = std::max(1, std::atoi(env));
  if (wanted.empty()) wanted = {1, 2, 3, 5, 6, 7, 8, 9, 10, 4};  // 4 checks every cached target, so it goes last

  qng::verify::Acceptance acc(options);
  std::vector<qng::verify::Check> results(11);
  for (int n : wanted) {
    results[n] = acc.criterion(n);
    std::cerr << "criterion " << n << " done in " << results[n].seconds << " s\n";
  }
  bool ok = true;
  for (int n = 1; n <= 10; ++n) {
    if (results[n].id.empty()) continue;
    const auto& c = results[n];
    std::cout << "criterion " << n << ": " << (c.pass ? "PASS" : "FAIL") << " - " << c.name << " | " << c.detail
              << " (" << c.seconds << " s)" << std::endl;
    ok = ok && c.pass;
  }
  return ok ? 0 : 1;
}
