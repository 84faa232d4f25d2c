#include "spmdbench/kernels/bude.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spmdbench/errors.hpp"
#include "spmdbench/exec/launch.hpp"

namespace spmdbench::kernels {

namespace {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi) from the top 53 bits.
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::uint64_t state_;
};

struct Atom {
  float x, y, z;
  int cls;
};

inline Atom load_atom(const float* base, std::size_t n) {
  return {base[4 * n], base[4 * n + 1], base[4 * n + 2], static_cast<int>(base[4 * n + 3])};
}

struct Vec3 {
  float x, y, z;
};

inline Vec3 transform_point(const Transform3x4& t, const Atom& a) {
  return {t[0][3] + a.x * t[0][0] + a.y * t[0][1] + a.z * t[0][2],
          t[1][3] + a.x * t[1][0] + a.y * t[1][1] + a.z * t[1][2],
          t[2][3] + a.x * t[2][0] + a.y * t[2][1] + a.z * t[2][2]};
}

// Quadratic well inside unit distance, inverse-square tail outside; both
// branches equal s at r2 == 1.
inline float pair_energy(const Vec3& l, const Atom& p, float scale) {
  const float dx = l.x - p.x;
  const float dy = l.y - p.y;
  const float dz = l.z - p.z;
  const float r2 = dx * dx + dy * dy + dz * dz;
  return r2 < 1.0f ? scale * (2.0f - r2) : scale / r2;
}

exec::Kernel make_fasten() {
  using exec::ArgKind;
  exec::Kernel k;
  k.name = "fasten";
  // protein, ligand, transforms_0..5, etotals, forcefield, natlig, natpro, num_transforms, ppwi
  k.params = {ArgKind::buffer,  ArgKind::buffer,  ArgKind::buffer,  ArgKind::buffer,
              ArgKind::buffer,  ArgKind::buffer,  ArgKind::buffer,  ArgKind::buffer,
              ArgKind::buffer,  ArgKind::buffer,  ArgKind::integer, ArgKind::integer,
              ArgKind::integer, ArgKind::integer};
  k.body = [](const exec::BlockContext& ctx, const exec::KernelArgs& args) {
    const auto protein = args.buffer<float>(0);
    const auto ligand = args.buffer<float>(1);
    const std::array<exec::DeviceSpan<float>, 6> transforms = {
        args.buffer<float>(2), args.buffer<float>(3), args.buffer<float>(4),
        args.buffer<float>(5), args.buffer<float>(6), args.buffer<float>(7)};
    const auto etotals = args.buffer<float>(8);
    const auto forcefield = args.buffer<float>(9);
    const auto natlig = static_cast<std::size_t>(args.integer(10));
    const auto natpro = static_cast<std::size_t>(args.integer(11));
    const auto num_transforms = static_cast<std::size_t>(args.integer(12));
    const auto ppwi = static_cast<std::size_t>(args.integer(13));
    const std::size_t lsz = ctx.block_dim.x;

    std::vector<Transform3x4> transform(ppwi);
    std::vector<float> etot(ppwi);
    std::vector<Vec3> lpos(ppwi);
    std::vector<unsigned char> live(ppwi);

    ctx.for_each_thread([&](exec::ThreadIdx t) {
      std::size_t ix = std::size_t{ctx.block_idx.x} * lsz * ppwi + t.x;
      if (ix >= num_transforms) ix = num_transforms - ppwi;

      for (std::size_t i = 0; i < ppwi; ++i) {
        const std::size_t index = ix + i * lsz;
        live[i] = index < num_transforms;
        etot[i] = 0.0f;
        if (!live[i]) continue;
        transform[i] = bude_transform(transforms[0][index], transforms[1][index],
                                      transforms[2][index], transforms[3][index],
                                      transforms[4][index], transforms[5][index]);
      }

      for (std::size_t l = 0; l < natlig; ++l) {
        const Atom la{ligand[4 * l], ligand[4 * l + 1], ligand[4 * l + 2],
                      static_cast<int>(ligand[4 * l + 3])};
        const float lscale = forcefield[static_cast<std::size_t>(la.cls)];
        for (std::size_t i = 0; i < ppwi; ++i)
          if (live[i]) lpos[i] = transform_point(transform[i], la);

        for (std::size_t q = 0; q < natpro; ++q) {
          const Atom pa{protein[4 * q], protein[4 * q + 1], protein[4 * q + 2],
                        static_cast<int>(protein[4 * q + 3])};
          const float scale = lscale * forcefield[static_cast<std::size_t>(pa.cls)];
          for (std::size_t i = 0; i < ppwi; ++i)
            if (live[i]) etot[i] += pair_energy(lpos[i], pa, scale);
        }
      }

      const std::size_t td_base = std::size_t{ctx.block_idx.x} * lsz * ppwi + t.x;
      if (td_base < num_transforms) {
        for (std::size_t i = 0; i < ppwi; ++i) {
          const std::size_t out = td_base + i * lsz;
          if (out < num_transforms) etotals[out] = etot[i] * 0.5f;
        }
      }
    });
  };
  return k;
}

}  // namespace

BudeDeck bude_gen_deck(std::uint64_t seed, std::uint32_t natlig, std::uint32_t natpro,
                       std::uint32_t nposes, std::uint32_t ppwi, std::uint32_t wg) {
  if (natlig == 0 || natpro == 0 || nposes == 0 || ppwi == 0 || wg == 0) {
    throw InvalidArgument("bude deck counts (natlig, natpro, nposes, ppwi, wg) must be >= 1");
  }
  if (nposes % ppwi != 0) {
    throw InvalidArgument("bude nposes=" + std::to_string(nposes) +
                          " must be divisible by ppwi=" + std::to_string(ppwi));
  }
  BudeDeck deck;
  deck.natlig = natlig;
  deck.natpro = natpro;
  deck.nposes = nposes;
  deck.ppwi = ppwi;
  deck.wg = wg;

  constexpr double pi = std::numbers::pi;
  SplitMix64 pose_rng(seed ^ 1);
  for (auto& p : deck.poses) p.resize(nposes);
  for (std::uint32_t n = 0; n < nposes; ++n) {
    for (int a = 0; a < 3; ++a) deck.poses[a][n] = static_cast<float>(pose_rng.uniform(-pi, pi));
    for (int a = 3; a < 6; ++a) deck.poses[a][n] = static_cast<float>(pose_rng.uniform(-5, 5));
  }

  SplitMix64 lig_rng(seed ^ 2);
  deck.ligand.resize(4 * std::size_t{natlig});
  for (std::uint32_t n = 0; n < natlig; ++n) {
    for (int a = 0; a < 3; ++a) deck.ligand[4 * n + a] = static_cast<float>(lig_rng.uniform(-2, 2));
    deck.ligand[4 * n + 3] = static_cast<float>(n % kBudeClasses);
  }

  SplitMix64 pro_rng(seed ^ 3);
  deck.protein.resize(4 * std::size_t{natpro});
  for (std::uint32_t m = 0; m < natpro; ++m) {
    for (int a = 0; a < 3; ++a) deck.protein[4 * m + a] = static_cast<float>(pro_rng.uniform(-10, 10));
    deck.protein[4 * m + 3] = static_cast<float>((3 * std::uint64_t{m} + 1) % kBudeClasses);
  }

  for (std::size_t c = 0; c < kBudeClasses; ++c) {
    deck.fs[c] = static_cast<float>(0.1 * static_cast<double>(1 + c % 8));
  }
  return deck;
}

void validate(const BudeDeck& deck) {
  if (deck.natlig == 0 || deck.natpro == 0 || deck.nposes == 0 || deck.ppwi == 0 || deck.wg == 0) {
    throw InvalidArgument("bude deck counts must be >= 1");
  }
  if (deck.nposes % deck.ppwi != 0) {
    throw InvalidArgument("bude nposes must be divisible by ppwi");
  }
  if (deck.ligand.size() != 4 * std::size_t{deck.natlig} ||
      deck.protein.size() != 4 * std::size_t{deck.natpro}) {
    throw InvalidArgument("bude atom arrays must hold 4 floats per atom");
  }
  for (const auto& p : deck.poses) {
    if (p.size() != deck.nposes) throw InvalidArgument("bude pose arrays must hold nposes entries");
  }
  const auto check_classes = [](const std::vector<float>& atoms) {
    for (std::size_t n = 3; n < atoms.size(); n += 4) {
      const float c = atoms[n];
      if (!(c >= 0.0f && c < static_cast<float>(kBudeClasses)) || c != std::floor(c)) {
        throw InvalidArgument("bude atom class must be an integer in [0, 64)");
      }
    }
  };
  check_classes(deck.ligand);
  check_classes(deck.protein);
  for (const float s : deck.fs) {
    if (!(s > 0.0f)) throw InvalidArgument("bude forcefield scales must be > 0");
  }
}

Transform3x4 bude_transform(float rx, float ry, float rz, float tx, float ty, float tz) {
  const float sx = std::sin(rx), cx = std::cos(rx);
  const float sy = std::sin(ry), cy = std::cos(ry);
  const float sz = std::sin(rz), cz = std::cos(rz);
  Transform3x4 t;
  t[0] = {cy * cz, sx * sy * cz - cx * sz, cx * sy * cz + sx * sz, tx};
  t[1] = {cy * sz, sx * sy * sz + cx * cz, cx * sy * sz - sx * cz, ty};
  t[2] = {-sy, sx * cy, cx * cy, tz};
  return t;
}

FastenResult fasten_kernel(const BudeDeck& deck, const exec::Backend& backend) {
  validate(deck);
  static const exec::Kernel kernel = make_fasten();

  // Device copies of the deck.
  const auto upload = [](const std::string& name, const float* src, std::size_t n) {
    exec::Buffer b(name, n, exec::ElemType::f32, 0.0);
    std::copy(src, src + n, b.data<float>().begin());
    return b;
  };
  exec::Buffer protein = upload("protein", deck.protein.data(), deck.protein.size());
  exec::Buffer ligand = upload("ligand", deck.ligand.data(), deck.ligand.size());
  std::array<exec::Buffer, 6> t = {
      upload("transforms_0", deck.poses[0].data(), deck.nposes),
      upload("transforms_1", deck.poses[1].data(), deck.nposes),
      upload("transforms_2", deck.poses[2].data(), deck.nposes),
      upload("transforms_3", deck.poses[3].data(), deck.nposes),
      upload("transforms_4", deck.poses[4].data(), deck.nposes),
      upload("transforms_5", deck.poses[5].data(), deck.nposes)};
  exec::Buffer forcefield = upload("forcefield", deck.fs.data(), deck.fs.size());
  exec::Buffer etotals("etotals", deck.nposes, exec::ElemType::f32, 0.0);

  const std::uint64_t per_block = std::uint64_t{deck.wg} * deck.ppwi;
  const auto blocks = static_cast<std::uint32_t>((deck.nposes + per_block - 1) / per_block);
  const exec::LaunchConfig lc{exec::Dim3{blocks, 1, 1}, exec::Dim3{deck.wg, 1, 1}};
  const double seconds = exec::launch(
      kernel, lc, backend,
      {protein, ligand, t[0], t[1], t[2], t[3], t[4], t[5], etotals, forcefield,
       static_cast<std::int64_t>(deck.natlig), static_cast<std::int64_t>(deck.natpro),
       static_cast<std::int64_t>(deck.nposes), static_cast<std::int64_t>(deck.ppwi)});
  return {std::move(etotals), seconds};
}

std::vector<float> fasten_reference(const BudeDeck& deck) {
  validate(deck);
  std::vector<float> out(deck.nposes);
  for (std::size_t p = 0; p < deck.nposes; ++p) {
    const Transform3x4 tr = bude_transform(deck.poses[0][p], deck.poses[1][p], deck.poses[2][p],
                                           deck.poses[3][p], deck.poses[4][p], deck.poses[5][p]);
    float etot = 0.0f;
    for (std::size_t l = 0; l < deck.natlig; ++l) {
      const Atom la = load_atom(deck.ligand.data(), l);
      const Vec3 pos = transform_point(tr, la);
      const float lscale = deck.fs[static_cast<std::size_t>(la.cls)];
      for (std::size_t q = 0; q < deck.natpro; ++q) {
        const Atom pa = load_atom(deck.protein.data(), q);
        etot += pair_energy(pos, pa, lscale * deck.fs[static_cast<std::size_t>(pa.cls)]);
      }
    }
    out[p] = etot * 0.5f;
  }
  return out;
}

}  // namespace spmdbench::kernels
