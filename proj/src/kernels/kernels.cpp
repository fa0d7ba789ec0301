#include "becgraph/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace becgraph::kernels {

#if defined(BECGRAPH_HAVE_AVX2)
namespace detail {
const Ops* avx2_ops_impl();
}
#endif

namespace {

bool cpu_has_avx2_fma() {
#if defined(BECGRAPH_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Ops* resolve(std::string_view name) {
  if (name == "scalar") return &scalar_ops();
  if (name == "avx2") {
    const Ops* ops = avx2_ops();
    if (!ops)
      throw std::invalid_argument(
          "kernel backend 'avx2' is unavailable on this machine");
    return ops;
  }
  if (name == "auto") {
    if (const Ops* ops = avx2_ops()) return ops;
    return &scalar_ops();
  }
  throw std::invalid_argument("unknown kernel backend '" + std::string(name) +
                              "' (expected scalar, avx2, or auto)");
}

std::atomic<const Ops*> g_active{nullptr};

}  // namespace

const Ops* avx2_ops() {
#if defined(BECGRAPH_HAVE_AVX2)
  return cpu_has_avx2_fma() ? detail::avx2_ops_impl() : nullptr;
#else
  return nullptr;
#endif
}

const Ops& active() {
  const Ops* ops = g_active.load(std::memory_order_acquire);
  if (!ops) {
    const char* env = std::getenv("BECGRAPH_KERNELS");
    ops = resolve(env ? std::string_view(env) : std::string_view("auto"));
    g_active.store(ops, std::memory_order_release);
  }
  return *ops;
}

void select(std::string_view name) {
  g_active.store(resolve(name), std::memory_order_release);
}

std::vector<std::string> available() {
  std::vector<std::string> names{"scalar"};
  if (avx2_ops()) names.emplace_back("avx2");
  return names;
}

}  // namespace becgraph::kernels
