#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "spmdbench/exec/backend.hpp"
#include "spmdbench/exec/buffer.hpp"

namespace spmdbench::kernels {

/// Helium-like atoms, each carrying the same contracted s-type Gaussian.
struct HfSystem {
  std::uint32_t natoms = 0;
  std::uint32_t ngauss = 0;
  std::vector<double> xpnt;     // ngauss exponents
  std::vector<double> coef;     // ngauss contraction coefficients, normalized
  std::vector<double> geom;     // natoms * 3
  std::vector<double> dens;     // natoms * natoms, row-major
  std::vector<double> schwarz;  // nn = natoms (natoms + 1) / 2
  double dtol = 1e-10;

  std::uint64_t nn() const noexcept { return std::uint64_t{natoms} * (natoms + 1) / 2; }
  std::uint64_t nnnn() const noexcept { return nn() * (nn() + 1) / 2; }
};

struct HfPrimitives {
  std::vector<double> exponents;
  std::vector<double> coefficients;  // unnormalized
};

/// Built-in helium STO-nG primitives; throws InvalidArgument for an unsupported ngauss.
HfPrimitives hf_builtin_primitives(std::uint32_t ngauss);

/// Assembles a system: normalizes coefficients c <- c (2a/pi)^(3/4), sets
/// dens = 0.1 + 0.9 I and computes the Schwarz bounds.
HfSystem hf_make_system(const HfPrimitives& prims, std::vector<double> geom, double dtol = 1e-10);

/// natoms atoms on a cubic lattice of the given spacing, x fastest.
HfSystem hf_gen_system(std::uint32_t natoms, std::uint32_t ngauss = 3, double spacing = 2.0);

/// Parses the plain-text system format:
///   natoms ngauss
///   exponent coefficient   (ngauss lines, unnormalized)
///   x y z                  (natoms lines)
HfSystem hf_read_system(std::istream& in);
HfSystem hf_load_system(const std::string& path);
/// Writes `sys` in the same format (coefficients de-normalized).
void hf_write_system(std::ostream& out, const HfSystem& sys);

void validate(const HfSystem& sys);

/// Boys function F0(T) = integral_0^1 exp(-T u^2) du.
double boys_f0(double T);

/// Contracted (ij|kl) electron-repulsion integral between atom-centred s functions.
double eri(std::uint32_t i, std::uint32_t j, std::uint32_t k, std::uint32_t l, const HfSystem& sys);

/// schwarz[i(i+1)/2 + j] = sqrt((ij|ij)) for i >= j.
std::vector<double> hf_schwarz(const HfSystem& sys);

struct Quartet {
  std::uint32_t i, j, k, l;
  friend bool operator==(const Quartet&, const Quartet&) = default;
};

/// Largest t with t(t+1)/2 <= m.
std::uint64_t triangular_root(std::uint64_t m);

/// Inverse of the canonical (i>=j, k>=l, ij>=kl) enumeration. Throws
/// std::out_of_range when m >= nnnn.
Quartet decompose_ijkl(std::uint64_t m, std::uint32_t natoms);

struct HfResult {
  exec::Buffer fock;
  double seconds = 0.0;
};

/// Two-electron Fock build: one thread per canonical quartet, six atomic
/// updates per surviving quartet.
HfResult hf_kernel(const HfSystem& sys, const exec::Backend& backend, std::uint32_t tbsize = 256);

/// Sequential oracle with the same enumeration and plain additions.
std::vector<double> hf_reference(const HfSystem& sys);

/// fock[j][i] <- fock[i][j] for i >= j.
void hf_symmetrize(std::vector<double>& fock, std::uint32_t natoms);

}  // namespace spmdbench::kernels
