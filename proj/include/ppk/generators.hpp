#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppk/algebra.hpp"
#include "ppk/endo.hpp"

namespace ppk {

/// Deterministic 64-bit generator (splitmix64). The stream depends only on
/// the seed, never on the platform.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return next() % n; }

  bool chance(double fraction) {
    if (fraction <= 0.0) return false;
    if (fraction >= 1.0) return true;
    return static_cast<double>(next() >> 11) * 0x1.0p-53 < fraction;
  }
};

/// Zero with probability `sparsity`, otherwise a uniform nonzero value;
/// rationals draw from the small integers {-2, -1, 1, 2}.
template <class S>
S random_scalar(SplitMix64& rng, const FieldDescriptor& field, double sparsity);

template <>
inline Rational random_scalar<Rational>(SplitMix64& rng, const FieldDescriptor&, double sparsity) {
  if (rng.chance(sparsity)) return Rational{};
  static const long vals[] = {-2, -1, 1, 2};
  return Rational::from_int(vals[rng.below(4)]);
}

template <>
inline Fp random_scalar<Fp>(SplitMix64& rng, const FieldDescriptor& field, double sparsity) {
  if (field.kind != FieldKind::prime) throw Error("Fp generator needs a prime field");
  if (rng.chance(sparsity)) return Fp{};
  return Fp::make(1 + static_cast<long>(rng.below(field.modulus - 1)), field.modulus);
}

template <class S>
Vec<S> random_vec(SplitMix64& rng, const FieldDescriptor& field, std::size_t n, double sparsity) {
  Vec<S> v(n);
  for (auto& x : v) x = random_scalar<S>(rng, field, sparsity);
  return v;
}

template <class S>
Matrix<S> random_matrix(SplitMix64& rng, const FieldDescriptor& field, std::size_t rows,
                        std::size_t cols, double sparsity) {
  Matrix<S> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar<S>(rng, field, sparsity);
  return m;
}

template <class S>
Tensor3<S> random_tensor3(SplitMix64& rng, const FieldDescriptor& field, std::size_t d0,
                          std::size_t d1, std::size_t d2, double sparsity) {
  Tensor3<S> t(d0, d1, d2);
  for (std::size_t i = 0; i < d0; ++i)
    for (std::size_t j = 0; j < d1; ++j)
      for (std::size_t k = 0; k < d2; ++k) t(i, j, k) = random_scalar<S>(rng, field, sparsity);
  return t;
}

template <class S>
EndoFamily<S> random_endo_family(SplitMix64& rng, const FieldDescriptor& field,
                                 std::size_t base_dim, std::size_t rep_dim, double sparsity) {
  EndoFamily<S> f(base_dim, rep_dim);
  for (auto& m : f.mats) m = random_matrix<S>(rng, field, rep_dim, rep_dim, sparsity);
  return f;
}

/// Reproducible instance stream description: identical specs produce
/// bit-identical streams.
struct InstanceGeneratorSpec {
  std::uint64_t seed = 0;
  FieldDescriptor field;
  std::size_t dim = 2;
  double sparsity = 0.5;
  std::size_t count = 1;
  std::vector<std::string> tables = {"zinbiel", "prelie"};
};

template <class S>
std::vector<Algebra<S>> generate_instances(const InstanceGeneratorSpec& spec) {
  SplitMix64 rng(spec.seed);
  std::vector<Algebra<S>> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    Algebra<S> a(spec.dim, spec.field);
    for (const auto& name : spec.tables)
      a.set_table(name, random_tensor3<S>(rng, spec.field, spec.dim, spec.dim, spec.dim,
                                          spec.sparsity));
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace ppk
