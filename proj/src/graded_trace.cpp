#include "walland/graded_trace.hpp"

#include <bit>
#include <stdexcept>

#include "walland/error.hpp"

namespace walland {

namespace {

int parity_sign(long n) { return n % 2 == 0 ? 1 : -1; }

void check_shape(const Matrix &m, std::size_t rows, std::size_t cols, const char *what) {
  if (m.rows() != rows || m.cols() != cols) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

// Sign of e_a e_b = +- e_{a|b} for disjoint bitmasks (inversions counted).
int monomial_sign(unsigned a, unsigned b) {
  int inversions = 0;
  for (unsigned i = 0; i < 2; ++i) {
    if (!(a & (1u << i))) continue;
    for (unsigned j = 0; j < i; ++j) {
      if (b & (1u << j)) ++inversions;
    }
  }
  return parity_sign(inversions);
}

int form_degree(unsigned mask) { return std::popcount(mask); }

Matrix pick_columns(const Matrix &m, const std::vector<std::size_t> &cols) {
  Matrix out(m.rows(), cols.size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(i, cols[j]);
  }
  return out;
}

std::vector<Rational> column(const Matrix &m, std::size_t j) {
  std::vector<Rational> v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

long uniform(std::mt19937_64 &rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Random unimodular integer matrix together with its inverse.
std::pair<Matrix, Matrix> random_unimodular(std::mt19937_64 &rng, std::size_t n) {
  Matrix g = Matrix::identity(n), ginv = Matrix::identity(n);
  if (n < 2) return {g, ginv};
  const int steps = static_cast<int>(2 * n);
  for (int s = 0; s < steps; ++s) {
    std::size_t a = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    std::size_t b = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
    if (b >= a) ++b;
    Rational c = uniform(rng, 0, 1) ? 1 : -1;
    // g <- (I + c e_ab) g, ginv <- ginv (I - c e_ab)
    for (std::size_t j = 0; j < n; ++j) g(a, j) += c * g(b, j);
    for (std::size_t i = 0; i < n; ++i) ginv(i, b) -= c * ginv(i, a);
  }
  return {g, ginv};
}

}  // namespace

MatrixComplex::MatrixComplex(int lo, std::vector<std::size_t> dims, std::vector<Matrix> diffs)
    : lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)) {
  if (dims_.empty()) throw std::invalid_argument("complex needs at least one degree");
  if (diffs_.size() != dims_.size() - 1) throw std::invalid_argument("complex needs one differential per gap");
  for (std::size_t j = 0; j < diffs_.size(); ++j) check_shape(diffs_[j], dims_[j + 1], dims_[j], "differential");
  for (std::size_t j = 0; j + 1 < diffs_.size(); ++j) {
    if (!(diffs_[j + 1] * diffs_[j]).is_zero()) throw PreconditionError("differentials do not square to zero");
  }
}

std::size_t MatrixComplex::dim(int i) const { return (i < lo_ || i > hi()) ? 0 : dims_[i - lo_]; }

Matrix MatrixComplex::diff(int i) const {
  if (i >= lo_ && i < hi()) return diffs_[i - lo_];
  return Matrix(dim(i + 1), dim(i));
}

HomCochain::HomCochain(ComplexRef source, ComplexRef target, int degree, std::vector<Matrix> maps)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), maps_(std::move(maps)) {
  if (!source_ || !target_) throw std::invalid_argument("cochain needs source and target complexes");
  if (maps_.size() != source_->dims().size()) throw std::invalid_argument("cochain needs one map per source degree");
  for (int i = source_->lo(); i <= source_->hi(); ++i) {
    check_shape(maps_[i - source_->lo()], target_->dim(i + degree_), source_->dim(i), "cochain map");
  }
}

HomCochain HomCochain::zero(ComplexRef source, ComplexRef target, int degree) {
  std::vector<Matrix> maps;
  for (int i = source->lo(); i <= source->hi(); ++i) maps.emplace_back(target->dim(i + degree), source->dim(i));
  return HomCochain(std::move(source), std::move(target), degree, std::move(maps));
}

HomCochain HomCochain::identity(ComplexRef c) {
  std::vector<Matrix> maps;
  for (auto d : c->dims()) maps.push_back(Matrix::identity(d));
  return HomCochain(c, c, 0, std::move(maps));
}

Matrix HomCochain::map(int i) const {
  if (i < source_->lo() || i > source_->hi()) return Matrix(target_->dim(i + degree_), 0);
  return maps_[i - source_->lo()];
}

bool HomCochain::is_zero() const {
  for (const auto &m : maps_) {
    if (!m.is_zero()) return false;
  }
  return true;
}

std::vector<Rational> HomCochain::flatten() const {
  std::vector<Rational> x;
  for (const auto &m : maps_) x.insert(x.end(), m.entries().begin(), m.entries().end());
  return x;
}

std::size_t HomCochain::hom_dim(const MatrixComplex &s, const MatrixComplex &t, int degree) {
  std::size_t n = 0;
  for (int i = s.lo(); i <= s.hi(); ++i) n += t.dim(i + degree) * s.dim(i);
  return n;
}

HomCochain HomCochain::unflatten(ComplexRef source, ComplexRef target, int degree, const std::vector<Rational> &x) {
  if (x.size() != hom_dim(*source, *target, degree)) throw std::invalid_argument("flattened cochain length mismatch");
  std::vector<Matrix> maps;
  std::size_t at = 0;
  for (int i = source->lo(); i <= source->hi(); ++i) {
    std::size_t r = target->dim(i + degree), c = source->dim(i);
    maps.emplace_back(r, c, std::vector<Rational>(x.begin() + at, x.begin() + at + r * c));
    at += r * c;
  }
  return HomCochain(std::move(source), std::move(target), degree, std::move(maps));
}

namespace {

void check_same_type(const HomCochain &a, const HomCochain &b) {
  if (a.degree() != b.degree() || !(*a.source() == *b.source()) || !(*a.target() == *b.target())) {
    throw std::invalid_argument("cochains of different type");
  }
}

}  // namespace

HomCochain operator+(const HomCochain &a, const HomCochain &b) {
  check_same_type(a, b);
  std::vector<Matrix> maps;
  for (std::size_t j = 0; j < a.maps_.size(); ++j) maps.push_back(a.maps_[j] + b.maps_[j]);
  return HomCochain(a.source_, a.target_, a.degree_, std::move(maps));
}

HomCochain operator-(const HomCochain &a, const HomCochain &b) { return a + Rational(-1) * b; }

HomCochain operator*(const Rational &k, const HomCochain &a) {
  std::vector<Matrix> maps;
  for (const auto &m : a.maps_) maps.push_back(k * m);
  return HomCochain(a.source_, a.target_, a.degree_, std::move(maps));
}

bool operator==(const HomCochain &a, const HomCochain &b) {
  return a.degree_ == b.degree_ && *a.source_ == *b.source_ && *a.target_ == *b.target_ && a.maps_ == b.maps_;
}

HomCochain hom_differential(const HomCochain &f) {
  const auto &S = *f.source();
  const auto &T = *f.target();
  const int k = f.degree();
  std::vector<Matrix> maps;
  for (int i = S.lo(); i <= S.hi(); ++i) {
    Matrix m = T.diff(i + k) * f.map(i);
    Matrix tail = f.map(i + 1) * S.diff(i);
    maps.push_back(parity_sign(k) > 0 ? m - tail : m + tail);
  }
  return HomCochain(f.source(), f.target(), k + 1, std::move(maps));
}

HomCochain compose(const HomCochain &a, const HomCochain &b) {
  if (!(*b.target() == *a.source())) throw std::invalid_argument("compose: b's target is not a's source");
  std::vector<Matrix> maps;
  for (int i = b.source()->lo(); i <= b.source()->hi(); ++i) maps.push_back(a.map(i + b.degree()) * b.map(i));
  return HomCochain(b.source(), a.target(), a.degree() + b.degree(), std::move(maps));
}

Rational supertrace(const HomCochain &f) {
  if (!f.is_endomorphism()) throw PreconditionError("supertrace of a map between different complexes");
  if (f.degree() != 0) return 0;
  Rational t = 0;
  for (int i = f.source()->lo(); i <= f.source()->hi(); ++i) t += parity_sign(i) * f.map(i).trace();
  return t;
}

Matrix hom_differential_matrix(const ComplexRef &source, const ComplexRef &target, int degree) {
  const std::size_t n = HomCochain::hom_dim(*source, *target, degree);
  const std::size_t m = HomCochain::hom_dim(*source, *target, degree + 1);
  Matrix D(m, n);
  std::vector<Rational> e(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1;
    auto image = hom_differential(HomCochain::unflatten(source, target, degree, e)).flatten();
    for (std::size_t i = 0; i < m; ++i) D(i, j) = image[i];
    e[j] = 0;
  }
  return D;
}

Cohomology cohomology(const ComplexRef &source, const ComplexRef &target, int degree) {
  Cohomology out{degree, {}, {}, {}};
  Matrix Z = kernel_basis(hom_differential_matrix(source, target, degree));
  Matrix Dprev = hom_differential_matrix(source, target, degree - 1);
  std::vector<std::size_t> pivots;
  rref(Dprev, &pivots);
  Matrix B = pick_columns(Dprev, pivots);
  for (std::size_t j = 0; j < Z.cols(); ++j) {
    out.cocycles.push_back(HomCochain::unflatten(source, target, degree, column(Z, j)));
  }
  for (std::size_t j = 0; j < B.cols(); ++j) {
    out.coboundaries.push_back(HomCochain::unflatten(source, target, degree, column(B, j)));
  }
  // Pivots of [B | Z] past B's columns pick cocycles independent modulo B.
  std::vector<std::size_t> joint;
  rref(hcat(B, Z), &joint);
  for (auto p : joint) {
    if (p >= B.cols()) out.classes.push_back(out.cocycles[p - B.cols()]);
  }
  return out;
}

FormCochain::FormCochain(ComplexRef c, int total_degree, std::array<HomCochain, 4> parts)
    : c_(std::move(c)), total_(total_degree), parts_(std::move(parts)) {
  for (unsigned m = 0; m < 4; ++m) {
    const auto &p = parts_[m];
    if (!(*p.source() == *c_) || !(*p.target() == *c_) || p.degree() != total_ - form_degree(m)) {
      throw std::invalid_argument("form cochain part has the wrong type");
    }
  }
}

FormCochain FormCochain::zero(ComplexRef c, int total_degree) {
  auto z = [&](unsigned m) { return HomCochain::zero(c, c, total_degree - form_degree(m)); };
  return FormCochain(c, total_degree, {z(0), z(1), z(2), z(3)});
}

FormCochain FormCochain::single(const HomCochain &h, unsigned mask) {
  if (!h.is_endomorphism()) throw std::invalid_argument("form cochains are endomorphisms");
  FormCochain f = zero(h.source(), h.degree() + form_degree(mask));
  f.parts_[mask] = h;
  return f;
}

FormCochain operator+(const FormCochain &a, const FormCochain &b) {
  if (a.total_ != b.total_) throw std::invalid_argument("sum of form cochains of different degree");
  return FormCochain(a.c_, a.total_,
                     {a.parts_[0] + b.parts_[0], a.parts_[1] + b.parts_[1], a.parts_[2] + b.parts_[2],
                      a.parts_[3] + b.parts_[3]});
}

FormCochain operator*(const Rational &k, const FormCochain &a) {
  return FormCochain(a.c_, a.total_, {k * a.parts_[0], k * a.parts_[1], k * a.parts_[2], k * a.parts_[3]});
}

FormCochain form_differential(const FormCochain &f) {
  return FormCochain(f.complex(), f.total_degree() + 1,
                     {hom_differential(f.part(0)), hom_differential(f.part(1)), hom_differential(f.part(2)),
                      hom_differential(f.part(3))});
}

FormCochain form_product(const FormCochain &a, const FormCochain &b) {
  if (!(*a.complex() == *b.complex())) throw std::invalid_argument("product of form cochains on different complexes");
  FormCochain out = FormCochain::zero(a.complex(), a.total_degree() + b.total_degree());
  for (unsigned ma = 0; ma < 4; ++ma) {
    for (unsigned mb = 0; mb < 4; ++mb) {
      if (ma & mb) continue;
      const HomCochain &g = b.part(mb);
      const int sign = monomial_sign(ma, mb) * parity_sign(static_cast<long>(form_degree(ma)) * g.degree());
      out = out + FormCochain::single(Rational(sign) * compose(a.part(ma), g), ma | mb);
    }
  }
  return out;
}

Rational form_trace(const FormCochain &f) { return supertrace(f.part(3)); }

CohomClass::CohomClass(FormCochain r) : rep(std::move(r)) {
  if (rep.total_degree() != 1) throw PreconditionError("theta pairing classes have total degree 1");
  for (unsigned m = 0; m < 4; ++m) {
    if (!hom_differential(rep.part(m)).is_zero()) throw PreconditionError("class representative is not a cocycle");
  }
}

Rational theta_pairing(const CohomClass &a, const CohomClass &b) {
  if (!(*a.rep.complex() == *b.rep.complex())) throw PreconditionError("theta pairing of classes on different complexes");
  return form_trace(form_product(a.rep, b.rep));
}

MatrixComplex random_complex(std::mt19937_64 &rng, int max_length, std::size_t max_dim) {
  const int length = static_cast<int>(uniform(rng, 1, max_length));
  const int lo = static_cast<int>(uniform(rng, -1, 1));
  std::vector<std::size_t> dims(length);
  for (auto &d : dims) d = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_dim)));
  // ranks[j] = rank d^{lo+j}; im d^{j-1} and a complement of ker d^j share C^j.
  std::vector<std::size_t> ranks(length > 1 ? length - 1 : 0);
  std::size_t incoming = 0;
  for (std::size_t j = 0; j < ranks.size(); ++j) {
    std::size_t cap = std::min(dims[j] - incoming, dims[j + 1]);
    ranks[j] = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(cap)));
    incoming = ranks[j];
  }
  std::vector<std::pair<Matrix, Matrix>> frames;
  for (auto d : dims) frames.push_back(random_unimodular(rng, d));
  std::vector<Matrix> diffs;
  incoming = 0;
  for (std::size_t j = 0; j < ranks.size(); ++j) {
    Matrix N(dims[j + 1], dims[j]);
    for (std::size_t t = 0; t < ranks[j]; ++t) N(t, incoming + t) = 1;
    diffs.push_back(frames[j + 1].first * N * frames[j].second);
    incoming = ranks[j];
  }
  return MatrixComplex(lo, std::move(dims), std::move(diffs));
}

HomCochain random_cochain(std::mt19937_64 &rng, const ComplexRef &source, const ComplexRef &target, int degree,
                          int bound) {
  std::vector<Rational> x(HomCochain::hom_dim(*source, *target, degree));
  for (auto &v : x) v = uniform(rng, -bound, bound);
  return HomCochain::unflatten(source, target, degree, x);
}

HomCochain random_cocycle(std::mt19937_64 &rng, const ComplexRef &c, int degree, int bound) {
  Matrix Z = kernel_basis(hom_differential_matrix(c, c, degree));
  std::vector<Rational> x(Z.rows(), Rational(0));
  for (std::size_t j = 0; j < Z.cols(); ++j) {
    Rational k = uniform(rng, -bound, bound);
    for (std::size_t i = 0; i < Z.rows(); ++i) x[i] += k * Z(i, j);
  }
  return HomCochain::unflatten(c, c, degree, x);
}

std::mt19937_64 fuzz_instance_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

FuzzReport supertrace_fuzz(std::size_t n, std::uint64_t seed) {
  FuzzReport report{seed, n, 0, 0, {}};
  for (std::size_t idx = 0; idx < n; ++idx) {
    auto rng = fuzz_instance_rng(seed, idx);
    auto c = std::make_shared<const MatrixComplex>(random_complex(rng));
    std::size_t before = report.violations;
    auto check = [&](bool ok) {
      ++report.checks;
      if (!ok) ++report.violations;
    };

    auto random_class = [&]() {
      FormCochain f = FormCochain::zero(c, 1);
      for (unsigned m = 0; m < 4; ++m) f = f + FormCochain::single(random_cocycle(rng, c, 1 - form_degree(m)), m);
      return CohomClass(f);
    };
    CohomClass a = random_class();
    CohomClass b = random_class();
    check(theta_pairing(a, b) + theta_pairing(b, a) == 0);
    check(sgn(theta_pairing(a, a)) == 0);

    FormCochain g = FormCochain::zero(c, 0);
    for (unsigned m = 0; m < 4; ++m) g = g + FormCochain::single(random_cochain(rng, c, c, -form_degree(m)), m);
    CohomClass boundary(form_differential(g));
    check(sgn(theta_pairing(boundary, b)) == 0);
    check(sgn(theta_pairing(b, boundary)) == 0);
    CohomClass shifted(a.rep + boundary.rep);
    check(theta_pairing(shifted, b) == theta_pairing(a, b));

    const int k = static_cast<int>(uniform(rng, -2, 2));
    HomCochain x = random_cochain(rng, c, c, k);
    HomCochain y = random_cochain(rng, c, c, -k);
    check(supertrace(compose(x, y)) == parity_sign(static_cast<long>(k) * k) * supertrace(compose(y, x)));
    HomCochain h = random_cochain(rng, c, c, -1);
    check(sgn(supertrace(hom_differential(h))) == 0);
    check(hom_differential(hom_differential(random_cochain(rng, c, c, 1))).is_zero());

    if (report.violations != before) report.failing_instances.push_back(idx);
  }
  return report;
}

}  // namespace walland
