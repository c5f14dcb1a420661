#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "walland/matrix.hpp"

namespace walland {

/// Bounded cochain complex of Q-vector spaces in degrees [lo, lo + dims.size() - 1]
/// with d^i : C^i -> C^{i+1}.
class MatrixComplex {
 public:
  /// diffs[j] is d^{lo + j}; throws if shapes disagree or d^{i+1} d^i != 0.
  MatrixComplex(int lo, std::vector<std::size_t> dims, std::vector<Matrix> diffs);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  const std::vector<std::size_t> &dims() const { return dims_; }
  const std::vector<Matrix> &diffs() const { return diffs_; }

  /// 0 outside [lo, hi].
  std::size_t dim(int i) const;
  /// d^i, the zero map outside the stored range.
  Matrix diff(int i) const;

  friend bool operator==(const MatrixComplex &a, const MatrixComplex &b) {
    return a.lo_ == b.lo_ && a.dims_ == b.dims_ && a.diffs_ == b.diffs_;
  }

 private:
  int lo_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> diffs_;
};

using ComplexRef = std::shared_ptr<const MatrixComplex>;

/// Degree-k element of Hom^k(S, T): maps f^i : S^i -> T^{i+k} for i in
/// [S.lo, S.hi].
class HomCochain {
 public:
  static HomCochain zero(ComplexRef source, ComplexRef target, int degree);
  static HomCochain identity(ComplexRef c);
  /// maps[j] is f^{source.lo + j}.
  HomCochain(ComplexRef source, ComplexRef target, int degree, std::vector<Matrix> maps);

  const ComplexRef &source() const { return source_; }
  const ComplexRef &target() const { return target_; }
  int degree() const { return degree_; }
  const std::vector<Matrix> &maps() const { return maps_; }
  /// f^i (a zero map with empty source outside the source range).
  Matrix map(int i) const;

  bool is_zero() const;
  bool is_endomorphism() const { return *source_ == *target_; }

  /// Coordinates in the flattened basis of Hom^k(S, T), and back.
  std::vector<Rational> flatten() const;
  static HomCochain unflatten(ComplexRef source, ComplexRef target, int degree, const std::vector<Rational> &x);
  static std::size_t hom_dim(const MatrixComplex &s, const MatrixComplex &t, int degree);

  friend HomCochain operator+(const HomCochain &a, const HomCochain &b);
  friend HomCochain operator-(const HomCochain &a, const HomCochain &b);
  friend HomCochain operator*(const Rational &k, const HomCochain &a);
  friend bool operator==(const HomCochain &a, const HomCochain &b);

 private:
  ComplexRef source_, target_;
  int degree_;
  std::vector<Matrix> maps_;
};

/// D(f)^i = d_T^{i+k} f^i - (-1)^k f^{i+1} d_S^i.
HomCochain hom_differential(const HomCochain &f);

/// (a o b)^i = a^{i + deg b} b^i; requires b.target == a.source.
HomCochain compose(const HomCochain &a, const HomCochain &b);

/// sum_i (-1)^i tr(f^i) for a degree-0 endomorphism; zero for any other
/// degree of an endomorphism.
Rational supertrace(const HomCochain &f);

/// Matrix of D on the flattened Hom^k(S, T).
Matrix hom_differential_matrix(const ComplexRef &source, const ComplexRef &target, int degree);

struct Cohomology {
  int degree;
  std::vector<HomCochain> cocycles;      ///< basis of ker D
  std::vector<HomCochain> coboundaries;  ///< basis of im D
  std::vector<HomCochain> classes;       ///< cocycles completing the coboundaries; one per Ext class
  std::size_t dim() const { return classes.size(); }
};

Cohomology cohomology(const ComplexRef &source, const ComplexRef &target, int degree);

/// Hom-cochains with coefficients in the exterior algebra on two odd
/// generators e1, e2 (a local model of (0, q)-forms). part[m] is the
/// coefficient of the monomial with bitmask m (1, e1, e2, e1e2); its
/// Hom-degree is total_degree - popcount(m).
class FormCochain {
 public:
  FormCochain(ComplexRef c, int total_degree, std::array<HomCochain, 4> parts);
  static FormCochain zero(ComplexRef c, int total_degree);
  /// h placed on the monomial `mask`.
  static FormCochain single(const HomCochain &h, unsigned mask);

  const ComplexRef &complex() const { return c_; }
  int total_degree() const { return total_; }
  const HomCochain &part(unsigned mask) const { return parts_[mask]; }

  friend FormCochain operator+(const FormCochain &a, const FormCochain &b);
  friend FormCochain operator*(const Rational &k, const FormCochain &a);

 private:
  ComplexRef c_;
  int total_;
  std::array<HomCochain, 4> parts_;
};

/// Differential acting on the Hom factor of each part.
FormCochain form_differential(const FormCochain &f);

/// (f w)(g h) = (-1)^{|w||g|} (f o g)(w h).
FormCochain form_product(const FormCochain &a, const FormCochain &b);

/// Supertrace of the top-form (e1e2) part.
Rational form_trace(const FormCochain &f);

/// A total-degree-1 cohomology class: a representative cocycle.
struct CohomClass {
  FormCochain rep;
  explicit CohomClass(FormCochain r);
};

/// Tr(a . b) for two degree-1 classes on the same complex.
Rational theta_pairing(const CohomClass &a, const CohomClass &b);

/// Random complex: up to max_length terms, dims <= max_dim, d^2 = 0 by
/// construction (conjugated rank normal forms).
MatrixComplex random_complex(std::mt19937_64 &rng, int max_length = 5, std::size_t max_dim = 4);

/// Random cochain with entries in [-bound, bound].
HomCochain random_cochain(std::mt19937_64 &rng, const ComplexRef &source, const ComplexRef &target, int degree,
                          int bound = 3);

/// Random cocycle of the given degree: an integer combination of a cocycle
/// basis (zero when the cocycle space is trivial).
HomCochain random_cocycle(std::mt19937_64 &rng, const ComplexRef &c, int degree, int bound = 3);

struct FuzzReport {
  std::uint64_t seed;
  std::size_t instances;
  std::size_t checks;
  std::size_t violations;
  /// Instance indices that failed (replayable through fuzz_instance_rng).
  std::vector<std::size_t> failing_instances;
};

/// The generator for instance `index` of a run with `seed`.
std::mt19937_64 fuzz_instance_rng(std::uint64_t seed, std::size_t index);

/// Per instance: theta antisymmetry, theta(a, a) = 0, theta vanishing on
/// coboundaries, the supertrace commutator identity and D o D = 0.
FuzzReport supertrace_fuzz(std::size_t n, std::uint64_t seed);

}  // namespace walland
