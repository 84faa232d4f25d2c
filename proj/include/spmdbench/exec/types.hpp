#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace spmdbench::exec {

enum class ElemType { f32, f64 };

constexpr std::size_t size_bytes(ElemType t) noexcept { return t == ElemType::f32 ? 4 : 8; }

std::string_view to_string(ElemType t) noexcept;

/// Accepts "f32"/"f64" (and "float32"/"float64"). Throws InvalidArgument otherwise.
ElemType parse_elem_type(std::string_view text);

template <class T>
constexpr ElemType elem_type_of() noexcept;

template <>
constexpr ElemType elem_type_of<float>() noexcept {
  return ElemType::f32;
}

template <>
constexpr ElemType elem_type_of<double>() noexcept {
  return ElemType::f64;
}

struct Dim3 {
  std::uint32_t x = 1;
  std::uint32_t y = 1;
  std::uint32_t z = 1;

  constexpr std::uint64_t volume() const noexcept {
    return std::uint64_t{x} * std::uint64_t{y} * std::uint64_t{z};
  }

  friend constexpr bool operator==(const Dim3&, const Dim3&) = default;
};

/// "XxYxZ", e.g. "512x1x1".
std::string to_string(const Dim3& d);

struct LaunchConfig {
  Dim3 grid_dim;
  Dim3 block_dim;

  /// Throws InvalidArgument when any grid or block component is zero.
  void validate() const;
};

/// Helper for 1D launches: enough blocks of `block` threads to cover `n` items.
LaunchConfig launch_1d(std::uint64_t n, std::uint32_t block);

}  // namespace spmdbench::exec
