#pragma once

#include <vector>

#include "ppk/linalg.hpp"

namespace ppk {

/// A linear map A -> End(V): one rep_dim × rep_dim matrix per basis vector
/// of the domain. Matrices act on column vectors.
template <class S>
struct EndoFamily {
  std::size_t base_dim = 0;
  std::size_t rep_dim = 0;
  std::vector<Matrix<S>> mats;

  EndoFamily() = default;
  EndoFamily(std::size_t base, std::size_t rep)
      : base_dim(base), rep_dim(rep), mats(base, Matrix<S>(rep, rep)) {}

  const Matrix<S>& at(std::size_t i) const { return mats[i]; }
  Matrix<S>& at(std::size_t i) { return mats[i]; }

  /// Matrix of the map at an arbitrary element a = Σ a_i e_i.
  Matrix<S> eval(const Vec<S>& a) const {
    if (a.size() != base_dim) throw Error("endo family eval shape mismatch");
    Matrix<S> m(rep_dim, rep_dim);
    for (std::size_t i = 0; i < base_dim; ++i)
      if (!a[i].is_zero()) m = m + a[i] * mats[i];
    return m;
  }

  /// F(e_i) v for a basis element of the domain.
  Vec<S> act(std::size_t i, const Vec<S>& v) const { return mats[i].apply(v); }
  /// F(a) v for arbitrary a.
  Vec<S> act(const Vec<S>& a, const Vec<S>& v) const { return eval(a).apply(v); }

  bool is_zero() const {
    for (const auto& m : mats)
      if (!m.is_zero()) return false;
    return true;
  }

  bool operator==(const EndoFamily&) const = default;

  friend EndoFamily operator+(const EndoFamily& a, const EndoFamily& b) {
    EndoFamily r = a;
    for (std::size_t i = 0; i < r.mats.size(); ++i) r.mats[i] = r.mats[i] + b.mats[i];
    return r;
  }
  friend EndoFamily operator-(const EndoFamily& a, const EndoFamily& b) {
    EndoFamily r = a;
    for (std::size_t i = 0; i < r.mats.size(); ++i) r.mats[i] = r.mats[i] - b.mats[i];
    return r;
  }
  EndoFamily operator-() const {
    EndoFamily r = *this;
    for (auto& m : r.mats) m = -m;
    return r;
  }
};

/// f*(x) on V* with <f*(x)u*, v> = -<u*, f(x)v>: the negated transpose of
/// each matrix, in the dual basis.
template <class S>
EndoFamily<S> dualize_endo_family(const EndoFamily<S>& f) {
  EndoFamily<S> r(f.base_dim, f.rep_dim);
  for (std::size_t i = 0; i < f.base_dim; ++i) r.mats[i] = -f.mats[i].transposed();
  return r;
}

}  // namespace ppk
