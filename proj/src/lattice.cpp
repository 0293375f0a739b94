#include "torusq/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace torusq {

namespace {

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Floor division for positive divisors.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

Integer positive_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

// Extended gcd on nonnegative inputs: returns (g, x, y) with a x + b y = g.
std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  return {old_r, old_s, old_t};
}

Integer modular_inverse(const Integer& a, const Integer& m) {
  auto [g, x, y] = extended_gcd(positive_mod(a, m), m);
  if (g != 1) throw Error("residue is not invertible");
  return positive_mod(x, m);
}

LatticeVector add_scaled(const LatticeVector& a, const LatticeVector& b, const Integer& t) {
  LatticeVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * b[i];
  return out;
}

LatticeVector negated(const LatticeVector& a) {
  LatticeVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

// Coordinates of v in the basis given by the rows of `basis`.
LatticeVector coordinates_in(const IntegerMatrix& basis, const LatticeVector& v) {
  auto x = solve_integer(basis.transpose(), v);
  if (!x) throw Error("vector is not in the lattice");
  return *x;
}

IntegerMatrix stack_rows(const LatticeVector& a, const LatticeVector& b) {
  const LatticeVector rows[] = {a, b};
  return IntegerMatrix::from_rows(rows, a.size());
}

}  // namespace

LatticeVector make_vector(std::initializer_list<long long> entries) {
  LatticeVector v;
  v.reserve(entries.size());
  for (long long e : entries) v.emplace_back(e);
  return v;
}

std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// IntegerMatrix

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("ragged matrix literal");
    for (long long e : r) data_.emplace_back(e);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(std::span<const LatticeVector> rows, std::size_t cols) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error("row length does not match ambient rank");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

LatticeVector IntegerMatrix::row(std::size_t i) const {
  return LatticeVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

LatticeVector IntegerMatrix::col(std::size_t j) const {
  LatticeVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntegerMatrix IntegerMatrix::row_block(std::size_t begin, std::size_t end) const {
  IntegerMatrix b(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < cols_; ++j) b(i - begin, j) = (*this)(i, j);
  return b;
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntegerMatrix::add_row_multiple(std::size_t target, std::size_t source,
                                     const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Integer& s = (*this)(source, j);
    if (s != 0) (*this)(target, j) += factor * s;
  }
}

void IntegerMatrix::add_col_multiple(std::size_t target, std::size_t source,
                                     const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Integer& s = (*this)(i, source);
    if (s != 0) (*this)(i, target) += factor * s;
  }
}

void IntegerMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix shape mismatch in product");
  IntegerMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Integer& x = a(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += x * b(l, j);
    }
  return c;
}

LatticeVector operator*(const IntegerMatrix& a, const LatticeVector& v) {
  if (a.cols() != v.size()) throw Error("matrix shape mismatch in product");
  LatticeVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

std::string to_string(const IntegerMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) os << (i ? "," : "") << to_string(m.row(i));
  os << ']';
  return os.str();
}

// Fraction-free Bareiss elimination.
Integer determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntegerMatrix& m) {
  IntegerMatrix a = m;
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j)
        a(i, j) = (a(i, j) * a(r, c) - a(i, c) * a(r, j)) / prev;
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Smith normal form

std::vector<Integer> SNFResult::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
    if (S(i, i) != 0) out.push_back(S(i, i));
  return out;
}

SNFResult snf(const IntegerMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SNFResult r{a, IntegerMatrix::identity(m), IntegerMatrix::identity(n)};
  IntegerMatrix& S = r.S;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      std::size_t bi = m, bj = n;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (S(i, j) == 0) continue;
          Integer v = abs_value(S(i, j));
          if (bi == m || v < best) {
            best = v;
            bi = i;
            bj = j;
          }
        }
      if (bi == m) return r;  // remaining block is zero

      S.swap_rows(t, bi);
      r.U.swap_rows(t, bi);
      S.swap_cols(t, bj);
      r.V.swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Integer q = S(i, t) / S(t, t);
        S.add_row_multiple(i, t, -q);
        r.U.add_row_multiple(i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Integer q = S(t, j) / S(t, t);
        S.add_col_multiple(j, t, -q);
        r.V.add_col_multiple(j, t, -q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            S.add_row_multiple(t, i, 1);
            r.U.add_row_multiple(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      r.U.negate_row(t);
    }
  }
  return r;
}

IntegerMatrix hermite_normal_form(const IntegerMatrix& rows) {
  IntegerMatrix h = rows;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < h.cols() && pivot_row < h.rows(); ++c) {
    for (;;) {
      std::size_t best = h.rows();
      for (std::size_t r = pivot_row; r < h.rows(); ++r)
        if (h(r, c) != 0 && (best == h.rows() || abs_value(h(r, c)) < abs_value(h(best, c))))
          best = r;
      if (best == h.rows()) break;
      h.swap_rows(pivot_row, best);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < h.rows(); ++r) {
        if (h(r, c) == 0) continue;
        h.add_row_multiple(r, pivot_row, -(h(r, c) / h(pivot_row, c)));
        if (h(r, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(pivot_row, c) == 0) continue;
    if (h(pivot_row, c) < 0) h.negate_row(pivot_row);
    for (std::size_t r = 0; r < pivot_row; ++r)
      h.add_row_multiple(r, pivot_row, -floor_div(h(r, c), h(pivot_row, c)));
    ++pivot_row;
  }
  return h.row_block(0, pivot_row);
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse of a non-square matrix");
  SNFResult r = snf(m);
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (r.S(i, i) != 1) throw Error("matrix is not unimodular");
  return r.V * r.U;
}

std::optional<LatticeVector> solve_integer(const IntegerMatrix& a, const LatticeVector& b) {
  if (a.rows() != b.size()) throw Error("right-hand side has the wrong length");
  SNFResult r = snf(a);
  LatticeVector c = r.U * b;
  LatticeVector y(a.cols());
  const std::size_t diag = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Integer pivot = i < diag ? r.S(i, i) : Integer(0);
    if (pivot == 0) {
      if (c[i] != 0) return std::nullopt;
      continue;
    }
    if (c[i] % pivot != 0) return std::nullopt;
    y[i] = c[i] / pivot;
  }
  return r.V * y;
}

// ---------------------------------------------------------------------------
// Primitive vectors and weights

Integer content(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& e : v) g = boost::multiprecision::gcd(g, abs_value(e));
  return g;
}

bool is_primitive(const LatticeVector& v) {
  Integer g = content(v);
  if (g == 0) throw Error("zero vector has no primitivity class");
  return g == 1;
}

RealWeight::RealWeight(LatticeVector v) : rep_(std::move(v)) {
  if (rep_.empty()) throw Error("weight in a rank-0 lattice");
  if (!is_primitive(rep_)) throw Error("weight " + to_string(rep_) + " is not primitive");
  auto first = std::find_if(rep_.begin(), rep_.end(), [](const Integer& e) { return e != 0; });
  if (*first < 0)
    for (auto& e : rep_) e = -e;
}

RealWeight::RealWeight(std::initializer_list<long long> entries)
    : RealWeight(make_vector(entries)) {}

RealWeight apply(const IntegerMatrix& g, const RealWeight& w) { return RealWeight(g * w.rep()); }

// ---------------------------------------------------------------------------
// Subtori and sublattices

Subtorus::Subtorus(std::size_t ambient_rank)
    : ambient_rank_(ambient_rank), basis_(0, ambient_rank) {}

Subtorus Subtorus::from_basis(const IntegerMatrix& basis) {
  if (basis.rows() == 0) return Subtorus(basis.cols());
  if (!is_extendable(basis)) throw Error("subtorus basis is dependent or not saturated");
  return Subtorus(basis.cols(), hermite_normal_form(basis));
}

bool Subtorus::contains(const LatticeVector& v) const {
  if (v.size() != ambient_rank_) throw Error("ambient rank mismatch");
  if (rank() == 0) return std::all_of(v.begin(), v.end(), [](const Integer& e) { return e == 0; });
  return solve_integer(basis_.transpose(), v).has_value();
}

bool Subtorus::contains(const Subtorus& other) const {
  for (std::size_t i = 0; i < other.rank(); ++i)
    if (!contains(other.basis().row(i))) return false;
  return true;
}

bool is_extendable(const IntegerMatrix& rows) {
  const std::size_t k = rows.rows();
  if (k == 0) return true;
  if (k > rows.cols()) return false;
  SNFResult r = snf(rows);
  for (std::size_t i = 0; i < k; ++i)
    if (r.S(i, i) != 1) return false;
  return true;
}

IntegerMatrix extend_to_basis(const IntegerMatrix& rows) {
  const std::size_t k = rows.rows();
  const std::size_t d = rows.cols();
  if (k == 0) return IntegerMatrix::identity(d);
  if (k > d || rank(rows) < k) throw Error("dependent rows");
  SNFResult r = snf(rows);
  for (std::size_t i = 0; i < k; ++i)
    if (r.S(i, i) != 1) throw Error("not extendable");
  // rows = U^-1 [I 0] V^-1
  IntegerMatrix block = IntegerMatrix::identity(d);
  IntegerMatrix u_inv = unimodular_inverse(r.U);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) block(i, j) = u_inv(i, j);
  return block * unimodular_inverse(r.V);
}

Subtorus saturation(const IntegerMatrix& rows) {
  const std::size_t k = rows.rows();
  if (k == 0) return Subtorus(rows.cols());
  if (k > rows.cols() || rank(rows) < k) throw Error("dependent rows");
  SNFResult r = snf(rows);
  return Subtorus::from_basis(unimodular_inverse(r.V).row_block(0, k));
}

Integer sublattice_index(const IntegerMatrix& sub, const IntegerMatrix& ambient) {
  if (sub.cols() != ambient.cols()) throw Error("ambient rank mismatch");
  if (sub.rows() != ambient.rows() || rank(sub) != sub.rows() || rank(ambient) != ambient.rows())
    throw Error("sublattice index needs two full-rank bases of equal rank");
  IntegerMatrix coords(sub.rows(), ambient.rows());
  const IntegerMatrix at = ambient.transpose();
  for (std::size_t i = 0; i < sub.rows(); ++i) {
    auto x = solve_integer(at, sub.row(i));
    if (!x) throw Error("not a sublattice");
    for (std::size_t j = 0; j < x->size(); ++j) coords(i, j) = (*x)[j];
  }
  return abs_value(determinant(coords));
}

Subtorus kernel_subtorus(const IntegerMatrix& lambda) {
  const std::size_t m = lambda.cols();
  SNFResult r = snf(lambda);
  const std::size_t rk = r.invariant_factors().size();
  IntegerMatrix basis(m - rk, m);
  for (std::size_t c = rk; c < m; ++c)
    for (std::size_t i = 0; i < m; ++i) basis(c - rk, i) = r.V(i, c);
  return Subtorus::from_basis(basis);
}

// ---------------------------------------------------------------------------
// Pairs of primitive vectors

std::string to_string(PairCase c) {
  switch (c) {
    case PairCase::EqualLine: return "EqualLine";
    case PairCase::UnimodularPair: return "UnimodularPair";
    case PairCase::IndexPair: return "IndexPair";
  }
  return "?";
}

TrichotomyResult classify_primitive_pair(const RealWeight& a1, const RealWeight& a2) {
  const std::size_t d = a1.ambient_rank();
  if (a2.ambient_rank() != d) throw Error("weights live in different lattices");
  const LatticeVector& a = a1.rep();
  const LatticeVector& b = a2.rep();
  TrichotomyResult out;

  if (a == b) {
    const LatticeVector rows[] = {a};
    out.pair_case = PairCase::EqualLine;
    out.witness = unimodular_inverse(extend_to_basis(IntegerMatrix::from_rows(rows, d)).transpose());
    return out;
  }

  const IntegerMatrix pair = stack_rows(a, b);
  const Subtorus span = saturation(pair);
  const LatticeVector ca = coordinates_in(span.basis(), a);
  const LatticeVector cb = coordinates_in(span.basis(), b);
  const Integer k = abs_value(ca[0] * cb[1] - ca[1] * cb[0]);

  if (k == 1) {
    out.pair_case = PairCase::UnimodularPair;
    out.witness = unimodular_inverse(extend_to_basis(pair).transpose());
    return out;
  }

  // Complete a to a basis (a, v) of the saturated plane, then shear v so
  // that b = -w a + k v with 1 <= w < k.
  const LatticeVector coord_rows[] = {ca};
  const IntegerMatrix ext = extend_to_basis(IntegerMatrix::from_rows(coord_rows, 2));
  LatticeVector v = add_scaled(LatticeVector(d), span.basis().row(0), ext(1, 0));
  v = add_scaled(v, span.basis().row(1), ext(1, 1));
  LatticeVector ab = coordinates_in(stack_rows(a, v), b);
  if (ab[1] < 0) {
    v = negated(v);
    ab[1] = -ab[1];
  }
  Integer w = positive_mod(-ab[0], k);
  v = add_scaled(v, a, (ab[0] + w) / k);

  out.pair_case = PairCase::IndexPair;
  out.k = k;
  out.witness = unimodular_inverse(extend_to_basis(stack_rows(a, v)).transpose());
  if (k - w < w) {
    // (x, y) -> (x + y, -y) on the first two coordinates, with b negated.
    IntegerMatrix flip = IntegerMatrix::identity(d);
    flip(0, 1) = 1;
    flip(1, 1) = -1;
    out.witness = flip * out.witness;
    out.sign2 = -1;
    w = k - w;
  }
  out.w = w;
  return out;
}

TrichotomyResult canonical_pair_form(const RealWeight& a1, const RealWeight& a2, bool allow_swap) {
  TrichotomyResult direct = classify_primitive_pair(a1, a2);
  if (!allow_swap || direct.pair_case != PairCase::IndexPair) return direct;
  TrichotomyResult reversed = classify_primitive_pair(a2, a1);
  if (reversed.w < direct.w) {
    reversed.swapped = true;
    return reversed;
  }
  return direct;
}

std::vector<Integer> lens_parameter_orbit(const Integer& k, const Integer& w, bool allow_swap) {
  if (k < 1) throw Error("lens order must be positive");
  std::vector<Integer> residues = {positive_mod(w, k), positive_mod(-w, k)};
  if (allow_swap && k > 1) {
    Integer inv = modular_inverse(w, k);
    residues.push_back(inv);
    residues.push_back(positive_mod(-inv, k));
  }
  for (auto& r : residues)
    if (r == 0) r = k;
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  return residues;
}

}  // namespace torusq
