// Times the serial reference path against the OpenMP path on the sampling
// workloads and confirms the two produce bit-identical estimates.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "sg/montecarlo.hpp"
#include "sg/partition.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Case {
  std::string name;
  double serial_s = 0;
  double parallel_s = 0;
  bool identical = false;
};

template <typename F>
Case run_case(const std::string& name, std::size_t samples, F&& estimate) {
  sg::McOptions serial{samples, 7, 0, false};
  sg::McOptions parallel{samples, 7, 0, true};

  Case c;
  c.name = name;
  auto t0 = Clock::now();
  auto a = estimate(serial);
  c.serial_s = seconds_since(t0);
  t0 = Clock::now();
  auto b = estimate(parallel);
  c.parallel_s = seconds_since(t0);
  c.identical = std::memcmp(&a.mean, &b.mean, sizeof a.mean) == 0 &&
                std::memcmp(&a.std_error, &b.std_error, sizeof a.std_error) ==
                    0;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t samples = 40000;
  if (argc > 1) samples = std::strtoull(argv[1], nullptr, 10);

  const sg::Partition lam42({4, 2});
  const sg::Partition lam222({2, 2, 2});

  Case cases[] = {
      run_case("schur[4,2] N=6", samples,
               [&](const sg::McOptions& o) {
                 return sg::estimate_schur_average(lam42, 6, o).real_part;
               }),
      run_case("schur[2,2,2] N=8", samples,
               [&](const sg::McOptions& o) {
                 return sg::estimate_schur_average(lam222, 8, o).real_part;
               }),
      run_case("trace^4 N=8", samples,
               [&](const sg::McOptions& o) {
                 return sg::estimate_trace_moment(4, 8, o);
               }),
      run_case("charpoly(0.3,-0.2) N=6", samples,
               [&](const sg::McOptions& o) {
                 return sg::estimate_charpoly_pair(0.3, -0.2, 6, o);
               }),
  };

  sg::McOptions probe{samples, 7, 0, true};
  std::printf("samples per case: %zu, parallel workers: %d\n\n", samples,
              sg::resolve_thread_count(probe));
  std::printf("%-24s %10s %10s %9s %s\n", "case", "serial[s]", "openmp[s]",
              "speedup", "bit-identical");
  bool all_identical = true;
  for (const Case& c : cases) {
    std::printf("%-24s %10.3f %10.3f %8.2fx %s\n", c.name.c_str(), c.serial_s,
                c.parallel_s,
                c.parallel_s > 0 ? c.serial_s / c.parallel_s : 0.0,
                c.identical ? "yes" : "NO");
    all_identical = all_identical && c.identical;
  }
  if (!all_identical) {
    std::printf("\nserial and parallel paths disagree\n");
    return 1;
  }
  return 0;
}
