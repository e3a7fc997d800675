#include <chrono>
#include <cstdlib>
#include <iostream>

#include "causalvote/graph.hpp"
#include "causalvote/validity.hpp"

// Times the serial reference kernels against their parallel counterparts.
// Usage: causalvote_bench [threads]

namespace {

template <typename F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : 2;
  const auto g = causalvote::build_gamma(causalvote::ModelParams::standard(), {});

  causalvote::ChoiceRelation rel_s, rel_p;
  const double t_rel_s = time_ms([&] { rel_s = causalvote::choice_relation_serial(g); });
  const double t_rel_p =
      time_ms([&] { rel_p = causalvote::choice_relation(g, threads); });
  std::cout << "choice_relation   serial " << t_rel_s << " ms, " << threads
            << " threads " << t_rel_p << " ms\n";

  const double t_uni_s = time_ms([&] { causalvote::check_univocality_serial(rel_s); });
  const double t_uni_p =
      time_ms([&] { causalvote::check_univocality(rel_p, threads); });
  std::cout << "check_univocality serial " << t_uni_s << " ms, " << threads
            << " threads " << t_uni_p << " ms\n";

  const double t_sw_s = time_ms([&] { causalvote::sweep_partition_serial(rel_s); });
  const double t_sw_p =
      time_ms([&] { causalvote::sweep_partition(rel_p, threads); });
  std::cout << "sweep_partition   serial " << t_sw_s << " ms, " << threads
            << " threads " << t_sw_p << " ms\n";

  const double t_bg_s =
      time_ms([&] { causalvote::build_branch_graph_serial(g, rel_s); });
  const double t_bg_p =
      time_ms([&] { causalvote::build_branch_graph(g, rel_p, threads); });
  std::cout << "branch_graph      serial " << t_bg_s << " ms, " << threads
            << " threads " << t_bg_p << " ms\n";

  return 0;
}
