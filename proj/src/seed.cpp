#include "discthin/seed.hpp"

#include "discthin/types.hpp"

namespace discthin {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::size_guard: return "size_guard";
    case ErrorCode::bound_violation: return "bound_violation";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  // Two rounds so that (parent, index) and (index, parent) do not collide.
  return mix64(mix64(parent) ^ (index * 0xd6e8feb86659fd93ULL + 0x632be59bd9b4e019ULL));
}

double unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

Prng::result_type Prng::operator()() noexcept {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace discthin
