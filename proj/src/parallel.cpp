#include "gesture/parallel.hpp"

namespace gesture {
namespace {

std::size_t hardware_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

std::atomic<std::size_t> g_threads{0};

}  // namespace

void set_thread_count(std::size_t count) { g_threads = count; }

std::size_t thread_count() {
  const std::size_t n = g_threads.load();
  return n == 0 ? hardware_threads() : n;
}

}  // namespace gesture
