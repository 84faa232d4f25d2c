#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "spmdbench/exec/backend.hpp"
#include "spmdbench/exec/buffer.hpp"

namespace spmdbench::kernels {

inline constexpr std::size_t kBudeClasses = 64;

/// Docking input: ligand and protein atoms as flattened (x, y, z, cls) float
/// quadruples, a class-scale table and six pose parameter arrays.
struct BudeDeck {
  std::uint32_t natlig = 0;
  std::uint32_t natpro = 0;
  std::uint32_t nposes = 0;
  std::vector<float> ligand;   // 4 * natlig
  std::vector<float> protein;  // 4 * natpro
  std::array<float, kBudeClasses> fs{};
  std::array<std::vector<float>, 6> poses;  // rx, ry, rz, tx, ty, tz
  std::uint32_t ppwi = 1;
  std::uint32_t wg = 64;

  friend bool operator==(const BudeDeck&, const BudeDeck&) = default;
};

struct BudeDefaults {
  static constexpr std::uint32_t natlig = 26;
  static constexpr std::uint32_t natpro = 938;
  static constexpr std::uint32_t nposes = 65536;
};

/// Deterministic synthetic deck from a splitmix64 stream (see README for the
/// distribution of each field).
BudeDeck bude_gen_deck(std::uint64_t seed, std::uint32_t natlig = BudeDefaults::natlig,
                       std::uint32_t natpro = BudeDefaults::natpro,
                       std::uint32_t nposes = BudeDefaults::nposes, std::uint32_t ppwi = 1,
                       std::uint32_t wg = 64);

/// Throws InvalidArgument on count/size mismatches, classes outside [0,64),
/// non-positive scales, or nposes not divisible by ppwi.
void validate(const BudeDeck& deck);

/// Row-major 3x4 rigid transform [R | t].
using Transform3x4 = std::array<std::array<float, 4>, 3>;

Transform3x4 bude_transform(float rx, float ry, float rz, float tx, float ty, float tz);

struct FastenResult {
  exec::Buffer etotals;
  double seconds = 0.0;
};

/// Work-item launch: ceil(nposes / (wg * ppwi)) blocks of wg threads, each
/// thread evaluating ppwi poses strided by wg.
FastenResult fasten_kernel(const BudeDeck& deck, const exec::Backend& backend);

/// Scalar oracle: one pose at a time, same f32 arithmetic and loop order.
std::vector<float> fasten_reference(const BudeDeck& deck);

}  // namespace spmdbench::kernels
