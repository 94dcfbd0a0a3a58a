#include <atomic>
#include <cassert>
#include <cstdlib>

#include "gesture/kernels.hpp"
#include "tables.hpp"

namespace gesture::kernels {

#ifndef GESTURE_BUILD_AVX2
namespace detail {
const KernelTable* avx2_table_if_built() { return nullptr; }
}  // namespace detail
#endif

const KernelTable* avx2_table() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? detail::avx2_table_if_built() : nullptr;
#else
  return nullptr;
#endif
}

// NEON is mandatory on aarch64, so being compiled in is enough.
const KernelTable* neon_table() { return detail::neon_table_if_built(); }

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> tables{&scalar_table()};
  if (const KernelTable* t = avx2_table()) tables.push_back(t);
  if (const KernelTable* t = neon_table()) tables.push_back(t);
  return tables;
}

namespace {

const KernelTable* find_table(std::string_view name) {
  for (const KernelTable* t : available_tables()) {
    if (t->name == name) return t;
  }
  return nullptr;
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("GESTURE_KERNELS")) {
    if (const KernelTable* t = find_table(env)) return t;
  }
  return available_tables().back();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

const KernelTable& active() { return *active_slot().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  const KernelTable* t = find_table(name);
  if (t == nullptr) return false;
  active_slot().store(t, std::memory_order_relaxed);
  return true;
}

void dtw_row(double a, std::span<const double> b, std::span<const double> prev, double left,
             std::span<double> cur) {
  assert(b.size() == cur.size() && prev.size() == cur.size() + 1);
  active().dtw_row(a, b.data(), prev.data(), left, cur.data(), cur.size());
}

void correlate(std::span<const double> padded, std::span<const double> weights,
               std::span<double> out) {
  assert(padded.size() + 1 >= out.size() + weights.size());
  active().correlate(padded.data(), weights.data(), weights.size(), out.data(), out.size());
}

void subtract(std::span<double> data, double value) {
  active().subtract(data.data(), data.size(), value);
}

}  // namespace gesture::kernels
