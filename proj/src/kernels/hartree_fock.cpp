#include "spmdbench/kernels/hartree_fock.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "spmdbench/errors.hpp"
#include "spmdbench/exec/launch.hpp"

namespace spmdbench::kernels {

namespace {

constexpr double kPi = std::numbers::pi;

double norm_factor(double alpha) { return std::pow(2.0 * alpha / kPi, 0.75); }

// Works on std::vector and exec::DeviceSpan alike.
template <class Vec>
double eri_impl(std::uint32_t i, std::uint32_t j, std::uint32_t k, std::uint32_t l,
                std::uint32_t ngauss, const Vec& xpnt, const Vec& coef, const Vec& geom) {
  const auto center = [&](std::uint32_t a, int d) { return geom[3 * std::size_t{a} + d]; };
  const double ab2 = [&] {
    double s = 0.0;
    for (int d = 0; d < 3; ++d) s += (center(i, d) - center(j, d)) * (center(i, d) - center(j, d));
    return s;
  }();
  const double cd2 = [&] {
    double s = 0.0;
    for (int d = 0; d < 3; ++d) s += (center(k, d) - center(l, d)) * (center(k, d) - center(l, d));
    return s;
  }();
  const double two_pi_52 = 2.0 * std::pow(kPi, 2.5);

  double result = 0.0;
  for (std::uint32_t ib = 0; ib < ngauss; ++ib) {
    for (std::uint32_t jb = 0; jb < ngauss; ++jb) {
      const double a = xpnt[ib];
      const double b = xpnt[jb];
      const double p = a + b;
      const double kab = std::exp(-a * b / p * ab2);
      const double cab = coef[ib] * coef[jb];
      double P[3];
      for (int d = 0; d < 3; ++d) P[d] = (a * center(i, d) + b * center(j, d)) / p;
      for (std::uint32_t kb = 0; kb < ngauss; ++kb) {
        for (std::uint32_t lb = 0; lb < ngauss; ++lb) {
          const double c = xpnt[kb];
          const double e = xpnt[lb];
          const double q = c + e;
          const double kcd = std::exp(-c * e / q * cd2);
          double pq2 = 0.0;
          for (int d = 0; d < 3; ++d) {
            const double Q = (c * center(k, d) + e * center(l, d)) / q;
            pq2 += (P[d] - Q) * (P[d] - Q);
          }
          const double T = p * q / (p + q) * pq2;
          result += cab * coef[kb] * coef[lb] * two_pi_52 / (p * q * std::sqrt(p + q)) * kab *
                    kcd * boys_f0(T);
        }
      }
    }
  }
  return result;
}

std::uint64_t tri(std::uint64_t t) { return t * (t + 1) / 2; }

exec::Kernel make_fock_kernel() {
  using exec::ArgKind;
  exec::Kernel k;
  k.name = "hartree_fock";
  // schwarz, xpnt, coef, geom, dens, fock, natoms, ngauss, nnnn, dtol
  k.params = {ArgKind::buffer, ArgKind::buffer,  ArgKind::buffer,  ArgKind::buffer,
              ArgKind::buffer, ArgKind::buffer,  ArgKind::integer, ArgKind::integer,
              ArgKind::integer, ArgKind::scalar};
  k.body = [](const exec::BlockContext& ctx, const exec::KernelArgs& args) {
    const auto schwarz = args.buffer<double>(0);
    const auto xpnt = args.buffer<double>(1);
    const auto coef = args.buffer<double>(2);
    const auto geom = args.buffer<double>(3);
    const auto dens = args.buffer<double>(4);
    const auto fock = args.buffer<double>(5);
    const auto natoms = static_cast<std::uint32_t>(args.integer(6));
    const auto ngauss = static_cast<std::uint32_t>(args.integer(7));
    const auto nnnn = static_cast<std::uint64_t>(args.integer(8));
    const double dtol = args.scalar(9);
    const std::size_t n = natoms;

    ctx.for_each_thread([&](exec::ThreadIdx t) {
      const std::uint64_t ijkl = std::uint64_t{ctx.block_idx.x} * ctx.block_dim.x + t.x;
      if (ijkl >= nnnn) return;
      const Quartet qd = decompose_ijkl(ijkl, natoms);
      const std::uint64_t ij = tri(qd.i) + qd.j;
      const std::uint64_t kl = tri(qd.k) + qd.l;
      if (schwarz[ij] * schwarz[kl] < dtol) return;

      double e = eri_impl(qd.i, qd.j, qd.k, qd.l, ngauss, xpnt, coef, geom);
      if (qd.i == qd.j) e *= 0.5;
      if (qd.k == qd.l) e *= 0.5;
      if (ij == kl) e *= 0.5;

      const std::size_t i = qd.i, j = qd.j, k = qd.k, l = qd.l;
      fock.atomic_add(i * n + j, dens[k * n + l] * e * 4.0);
      fock.atomic_add(k * n + l, dens[i * n + j] * e * 4.0);
      fock.atomic_add(i * n + k, dens[j * n + l] * e * -1.0);
      fock.atomic_add(i * n + l, dens[j * n + k] * e * -1.0);
      fock.atomic_add(j * n + k, dens[i * n + l] * e * -1.0);
      fock.atomic_add(j * n + l, dens[i * n + k] * e * -1.0);
    });
  };
  return k;
}

exec::Buffer upload(const std::string& name, const std::vector<double>& v) {
  exec::Buffer b(name, v.size(), exec::ElemType::f64, 0.0);
  std::copy(v.begin(), v.end(), b.data<double>().begin());
  return b;
}

}  // namespace

HfPrimitives hf_builtin_primitives(std::uint32_t ngauss) {
  // Helium STO-nG (zeta = 1.69).
  switch (ngauss) {
    case 1:
      return {{0.773860295}, {1.0}};
    case 2:
      return {{3.740795188, 0.6658596579}, {0.4301284983, 0.6789135305}};
    case 3:
      return {{6.36242139, 1.158923, 0.31364979}, {0.15432897, 0.53532814, 0.44463454}};
    case 4:
      return {{22.90997810, 4.192243732, 1.164651214, 0.3865372681},
              {0.05675242080, 0.2601413550, 0.5328461143, 0.2916254405}};
    case 6:
      return {{65.98456824, 12.09819836, 3.384639924, 1.162715163, 0.4515163224, 0.1859593559},
              {0.009163596281, 0.04936149294, 0.1685383049, 0.3705627997, 0.4164915298,
               0.1303340841}};
    default:
      throw InvalidArgument("no built-in primitives for ngauss=" + std::to_string(ngauss) +
                            " (built-in: 1, 2, 3, 4, 6); supply them in a system file");
  }
}

HfSystem hf_make_system(const HfPrimitives& prims, std::vector<double> geom, double dtol) {
  if (prims.exponents.empty() || prims.exponents.size() != prims.coefficients.size()) {
    throw InvalidArgument("hf primitives need matching, non-empty exponent and coefficient lists");
  }
  if (prims.exponents.size() > 6) throw InvalidArgument("hf supports at most 6 primitives");
  if (geom.empty() || geom.size() % 3 != 0) {
    throw InvalidArgument("hf geometry must hold 3 coordinates per atom");
  }
  HfSystem sys;
  sys.natoms = static_cast<std::uint32_t>(geom.size() / 3);
  sys.ngauss = static_cast<std::uint32_t>(prims.exponents.size());
  sys.xpnt = prims.exponents;
  sys.coef = prims.coefficients;
  for (std::size_t g = 0; g < sys.ngauss; ++g) {
    if (!(sys.xpnt[g] > 0.0)) throw InvalidArgument("hf exponents must be > 0");
    sys.coef[g] *= norm_factor(sys.xpnt[g]);
  }
  sys.geom = std::move(geom);
  const std::size_t n = sys.natoms;
  sys.dens.assign(n * n, 0.1);
  for (std::size_t a = 0; a < n; ++a) sys.dens[a * n + a] = 1.0;
  sys.dtol = dtol;
  sys.schwarz = hf_schwarz(sys);
  return sys;
}

HfSystem hf_gen_system(std::uint32_t natoms, std::uint32_t ngauss, double spacing) {
  if (natoms == 0) throw InvalidArgument("hf natoms must be >= 1");
  if (ngauss == 0 || ngauss > 6) throw InvalidArgument("hf ngauss must be in 1..6");
  std::uint32_t side = 1;
  while (std::uint64_t{side} * side * side < natoms) ++side;
  std::vector<double> geom;
  geom.reserve(3 * std::size_t{natoms});
  for (std::uint32_t a = 0; a < natoms; ++a) {
    geom.push_back(spacing * (a % side));
    geom.push_back(spacing * ((a / side) % side));
    geom.push_back(spacing * (a / (side * side)));
  }
  return hf_make_system(hf_builtin_primitives(ngauss), std::move(geom));
}

HfSystem hf_read_system(std::istream& in) {
  long long natoms = 0, ngauss = 0;
  if (!(in >> natoms >> ngauss)) throw InvalidArgument("hf system file: missing 'natoms ngauss' header");
  if (natoms < 1) throw InvalidArgument("hf system file: natoms must be >= 1");
  if (ngauss < 1 || ngauss > 6) throw InvalidArgument("hf system file: ngauss must be in 1..6");
  HfPrimitives prims;
  for (long long g = 0; g < ngauss; ++g) {
    double x = 0, c = 0;
    if (!(in >> x >> c)) throw InvalidArgument("hf system file: truncated primitive list");
    prims.exponents.push_back(x);
    prims.coefficients.push_back(c);
  }
  std::vector<double> geom;
  geom.reserve(3 * static_cast<std::size_t>(natoms));
  for (long long a = 0; a < natoms; ++a) {
    double x = 0, y = 0, z = 0;
    if (!(in >> x >> y >> z)) throw InvalidArgument("hf system file: truncated geometry");
    geom.insert(geom.end(), {x, y, z});
  }
  return hf_make_system(prims, std::move(geom));
}

HfSystem hf_load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open hf system file '" + path + "'");
  return hf_read_system(in);
}

void hf_write_system(std::ostream& out, const HfSystem& sys) {
  out << sys.natoms << ' ' << sys.ngauss << '\n';
  out << std::setprecision(17);
  for (std::size_t g = 0; g < sys.ngauss; ++g) {
    out << sys.xpnt[g] << ' ' << sys.coef[g] / norm_factor(sys.xpnt[g]) << '\n';
  }
  for (std::size_t a = 0; a < sys.natoms; ++a) {
    out << sys.geom[3 * a] << ' ' << sys.geom[3 * a + 1] << ' ' << sys.geom[3 * a + 2] << '\n';
  }
}

void validate(const HfSystem& sys) {
  const std::size_t n = sys.natoms;
  if (n == 0 || sys.ngauss == 0) throw InvalidArgument("hf system is empty");
  if (sys.xpnt.size() != sys.ngauss || sys.coef.size() != sys.ngauss) {
    throw InvalidArgument("hf primitive arrays must hold ngauss entries");
  }
  for (double x : sys.xpnt)
    if (!(x > 0.0)) throw InvalidArgument("hf exponents must be > 0");
  if (sys.geom.size() != 3 * n) throw InvalidArgument("hf geometry must hold natoms x 3 values");
  if (sys.dens.size() != n * n) throw InvalidArgument("hf density must be natoms x natoms");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (sys.dens[a * n + b] != sys.dens[b * n + a]) {
        throw InvalidArgument("hf density matrix must be symmetric");
      }
  if (sys.schwarz.size() != sys.nn()) throw InvalidArgument("hf schwarz must hold nn entries");
  for (double s : sys.schwarz)
    if (!(s >= 0.0)) throw InvalidArgument("hf schwarz bounds must be >= 0");
}

double boys_f0(double T) {
  if (!(T >= 0.0)) throw InvalidArgument("boys_f0 requires T >= 0");
  if (T < 1e-12) return 1.0 - T / 3.0 + T * T / 10.0 - T * T * T / 42.0;
  const double rt = std::sqrt(T);
  return 0.5 * std::sqrt(kPi / T) * std::erf(rt);
}

double eri(std::uint32_t i, std::uint32_t j, std::uint32_t k, std::uint32_t l, const HfSystem& sys) {
  if (i >= sys.natoms || j >= sys.natoms || k >= sys.natoms || l >= sys.natoms) {
    throw InvalidArgument("eri atom index out of range for natoms=" + std::to_string(sys.natoms));
  }
  return eri_impl(i, j, k, l, sys.ngauss, sys.xpnt, sys.coef, sys.geom);
}

std::vector<double> hf_schwarz(const HfSystem& sys) {
  std::vector<double> out(sys.nn());
  for (std::uint32_t i = 0; i < sys.natoms; ++i)
    for (std::uint32_t j = 0; j <= i; ++j) out[tri(i) + j] = std::sqrt(eri(i, j, i, j, sys));
  return out;
}

std::uint64_t triangular_root(std::uint64_t m) {
  auto t = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(m) + 1.0) - 1.0) / 2.0);
  while (t > 0 && tri(t) > m) --t;
  while (tri(t + 1) <= m) ++t;
  return t;
}

Quartet decompose_ijkl(std::uint64_t m, std::uint32_t natoms) {
  const std::uint64_t nn = std::uint64_t{natoms} * (natoms + 1) / 2;
  if (m >= nn * (nn + 1) / 2) {
    throw std::out_of_range("quartet index " + std::to_string(m) + " out of range for natoms=" +
                            std::to_string(natoms));
  }
  const std::uint64_t ij = triangular_root(m);
  const std::uint64_t kl = m - tri(ij);
  const std::uint64_t i = triangular_root(ij);
  const std::uint64_t k = triangular_root(kl);
  return {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(ij - tri(i)),
          static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(kl - tri(k))};
}

HfResult hf_kernel(const HfSystem& sys, const exec::Backend& backend, std::uint32_t tbsize) {
  validate(sys);
  static const exec::Kernel kernel = make_fock_kernel();
  exec::Buffer schwarz = upload("schwarz", sys.schwarz);
  exec::Buffer xpnt = upload("xpnt", sys.xpnt);
  exec::Buffer coef = upload("coef", sys.coef);
  exec::Buffer geom = upload("geom", sys.geom);
  exec::Buffer dens = upload("dens", sys.dens);
  exec::Buffer fock("fock", std::size_t{sys.natoms} * sys.natoms, exec::ElemType::f64, 0.0);
  const std::uint64_t nnnn = sys.nnnn();
  const double seconds =
      exec::launch(kernel, exec::launch_1d(nnnn, tbsize), backend,
                   {schwarz, xpnt, coef, geom, dens, fock, static_cast<std::int64_t>(sys.natoms),
                    static_cast<std::int64_t>(sys.ngauss), static_cast<std::int64_t>(nnnn),
                    sys.dtol});
  return {std::move(fock), seconds};
}

std::vector<double> hf_reference(const HfSystem& sys) {
  validate(sys);
  const std::size_t n = sys.natoms;
  std::vector<double> fock(n * n, 0.0);
  const std::uint64_t nnnn = sys.nnnn();
  for (std::uint64_t m = 0; m < nnnn; ++m) {
    const Quartet qd = decompose_ijkl(m, sys.natoms);
    const std::uint64_t ij = tri(qd.i) + qd.j;
    const std::uint64_t kl = tri(qd.k) + qd.l;
    if (sys.schwarz[ij] * sys.schwarz[kl] < sys.dtol) continue;
    double e = eri(qd.i, qd.j, qd.k, qd.l, sys);
    if (qd.i == qd.j) e *= 0.5;
    if (qd.k == qd.l) e *= 0.5;
    if (ij == kl) e *= 0.5;
    const std::size_t i = qd.i, j = qd.j, k = qd.k, l = qd.l;
    const auto& d = sys.dens;
    fock[i * n + j] += d[k * n + l] * e * 4.0;
    fock[k * n + l] += d[i * n + j] * e * 4.0;
    fock[i * n + k] += d[j * n + l] * e * -1.0;
    fock[i * n + l] += d[j * n + k] * e * -1.0;
    fock[j * n + k] += d[i * n + l] * e * -1.0;
    fock[j * n + l] += d[i * n + k] * e * -1.0;
  }
  return fock;
}

void hf_symmetrize(std::vector<double>& fock, std::uint32_t natoms) {
  const std::size_t n = natoms;
  if (fock.size() != n * n) throw InvalidArgument("fock must be natoms x natoms");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) fock[j * n + i] = fock[i * n + j];
}

}  // namespace spmdbench::kernels
