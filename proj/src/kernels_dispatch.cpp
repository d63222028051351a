#include <atomic>

#include "cutoffloc/kernels.hpp"

namespace cutoffloc::kernels {
namespace {

// -1: auto-detect; otherwise the pinned Isa value.
std::atomic<int> g_forced{-1};

}  // namespace

std::string to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "?";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
      return avx2_table() != nullptr && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() {
  static const Isa isa = isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
  return isa;
}

Isa active_isa() {
  const int f = g_forced.load(std::memory_order_relaxed);
  return f < 0 ? detected_isa() : static_cast<Isa>(f);
}

void force_isa(std::optional<Isa> isa) {
  if (isa && !isa_available(*isa)) {
    throw UsageError("instruction set " + to_string(*isa) + " is not available on this CPU");
  }
  g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

const KernelTable& table(Isa isa) {
  if (isa == Isa::avx2 && isa_available(Isa::avx2)) return *avx2_table();
  return scalar_table();
}

const KernelTable& active_table() { return table(active_isa()); }

}  // namespace cutoffloc::kernels
