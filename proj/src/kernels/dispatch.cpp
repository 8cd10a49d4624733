#include <atomic>
#include <cstdlib>
#include <string>

#include "minmod/error.hpp"
#include "minmod/kernels.hpp"

namespace minmod::kernels {

namespace {

struct Table {
  Isa isa;
  cplx (*dot)(const cplx*, const cplx*, std::size_t);
  double (*norm_sq)(const cplx*, std::size_t);
  void (*axpy)(cplx, const cplx*, cplx*, std::size_t);
};

constexpr Table kScalar{Isa::scalar, &scalar::dot, &scalar::norm_sq, &scalar::axpy};
#if defined(MINMOD_HAVE_AVX2)
constexpr Table kAvx2{Isa::avx2, &avx2::dot, &avx2::norm_sq, &avx2::axpy};
#endif

bool host_has_avx2() {
#if defined(MINMOD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table* table_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &kScalar;
    case Isa::avx2:
#if defined(MINMOD_HAVE_AVX2)
      return host_has_avx2() ? &kAvx2 : nullptr;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const Table* select_initial() {
  if (const char* env = std::getenv("MINMOD_ISA")) {
    const std::string want(env);
    if (want == "scalar") return &kScalar;
    if (want == "avx2") {
      if (const Table* t = table_for(Isa::avx2)) return t;
    }
  }
  if (const Table* t = table_for(Isa::avx2)) return t;
  return &kScalar;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{select_initial()};
  return table;
}

const Table& active() { return *current().load(std::memory_order_acquire); }

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) { return table_for(isa) != nullptr; }

Isa active_isa() { return active().isa; }

void force_isa(Isa isa) {
  const Table* t = table_for(isa);
  if (t == nullptr) {
    throw DomainError("kernel variant '" + std::string(isa_name(isa)) + "' is not available on this host");
  }
  current().store(t, std::memory_order_release);
}

cplx dot(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
  return active().dot(x.data(), y.data(), x.size());
}

double norm_sq(std::span<const cplx> x) { return active().norm_sq(x.data(), x.size()); }

void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  if (x.size() != y.size()) throw DimensionError("axpy: length mismatch");
  active().axpy(a, x.data(), y.data(), x.size());
}

void gemv(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<const cplx> x, std::span<cplx> y) {
  if (a.size() != rows * cols || x.size() != cols || y.size() != rows) {
    throw DimensionError("gemv: shape mismatch");
  }
  const Table& t = active();
  for (std::size_t i = 0; i < rows; ++i) y[i] = cplx(0.0, 0.0);
  for (std::size_t j = 0; j < cols; ++j) {
    if (x[j] == cplx(0.0, 0.0)) continue;
    t.axpy(x[j], a.data() + j * rows, y.data(), rows);
  }
}

}  // namespace minmod::kernels
