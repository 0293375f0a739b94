// Exact integer lattice algebra over Z^d.
//
// Everything here works on arbitrary-precision integers. Vectors are rows;
// a k x d matrix whose rows are lattice vectors describes a sublattice of
// Z^d. Weights and integral vectors share Z^d under the dot pairing.
#pragma once

#include "torusq/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace torusq {

using Integer = boost::multiprecision::cpp_int;
using LatticeVector = std::vector<Integer>;

LatticeVector make_vector(std::initializer_list<long long> entries);
std::string to_string(const LatticeVector& v);

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntegerMatrix identity(std::size_t n);
  // `cols` is needed when `rows` is empty.
  static IntegerMatrix from_rows(std::span<const LatticeVector> rows,
                                 std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  LatticeVector row(std::size_t i) const;
  LatticeVector col(std::size_t j) const;
  IntegerMatrix transpose() const;
  // Rows [begin, end).
  IntegerMatrix row_block(std::size_t begin, std::size_t end) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void negate_row(std::size_t i);

  bool operator==(const IntegerMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
// Matrix times column vector.
LatticeVector operator*(const IntegerMatrix& a, const LatticeVector& v);
std::string to_string(const IntegerMatrix& m);

Integer determinant(const IntegerMatrix& m);
std::size_t rank(const IntegerMatrix& m);

// Smith normal form: U * A * V = S with S diagonal, nonnegative and
// S(i,i) | S(i+1,i+1). Pivots are chosen by smallest absolute value, ties
// broken by lowest (row, col), so the transforms are reproducible.
struct SNFResult {
  IntegerMatrix S;
  IntegerMatrix U;
  IntegerMatrix V;

  // Nonzero diagonal entries of S.
  std::vector<Integer> invariant_factors() const;
};

SNFResult snf(const IntegerMatrix& a);

// Row-style Hermite normal form of a full-row-rank matrix; a canonical
// basis of the row lattice.
IntegerMatrix hermite_normal_form(const IntegerMatrix& rows);

// Inverse of a matrix with determinant +-1. Throws otherwise.
IntegerMatrix unimodular_inverse(const IntegerMatrix& m);

// An integer solution of A x = b, if one exists.
std::optional<LatticeVector> solve_integer(const IntegerMatrix& a, const LatticeVector& b);

bool is_primitive(const LatticeVector& v);
Integer content(const LatticeVector& v);  // gcd of entries, nonnegative

// Primitive lattice vector modulo sign; the stored representative has its
// first nonzero entry positive.
class RealWeight {
 public:
  explicit RealWeight(LatticeVector v);
  RealWeight(std::initializer_list<long long> entries);

  const LatticeVector& rep() const { return rep_; }
  std::size_t ambient_rank() const { return rep_.size(); }

  auto operator<=>(const RealWeight&) const = default;

 private:
  LatticeVector rep_;
};

// g * v for each weight, re-canonicalized.
RealWeight apply(const IntegerMatrix& g, const RealWeight& w);

// Saturated sublattice of Z^d. The basis is kept in Hermite normal form, so
// equal subtori compare equal.
class Subtorus {
 public:
  // Trivial subtorus of T^d.
  explicit Subtorus(std::size_t ambient_rank);
  // `basis` must have independent rows spanning a saturated sublattice.
  static Subtorus from_basis(const IntegerMatrix& basis);

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntegerMatrix& basis() const { return basis_; }

  bool contains(const LatticeVector& v) const;
  bool contains(const Subtorus& other) const;

  bool operator==(const Subtorus&) const = default;

 private:
  Subtorus(std::size_t ambient_rank, IntegerMatrix basis)
      : ambient_rank_(ambient_rank), basis_(std::move(basis)) {}

  std::size_t ambient_rank_;
  IntegerMatrix basis_;
};

// Completes k independent rows to a unimodular d x d matrix whose first k
// rows are the input. Throws "dependent rows" or "not extendable".
IntegerMatrix extend_to_basis(const IntegerMatrix& rows);
// Same test without building the completion.
bool is_extendable(const IntegerMatrix& rows);

// Z^d intersected with the rational span of the rows.
Subtorus saturation(const IntegerMatrix& rows);

// Index of the row lattice of `sub` inside that of `ambient`.
Integer sublattice_index(const IntegerMatrix& sub, const IntegerMatrix& ambient);

// Saturated integer kernel {v : lambda v = 0} of an n x m matrix.
Subtorus kernel_subtorus(const IntegerMatrix& lambda);

enum class PairCase { EqualLine, UnimodularPair, IndexPair };
std::string to_string(PairCase c);

// Normal form of a pair of primitive vectors. The witness W is unimodular
// with W (sign1 a) = e1 and W (sign2 b) = e2 (UnimodularPair) or
// W (sign2 b) = -w e1 + k e2 (IndexPair), where (a, b) is the input pair,
// or the swapped pair when `swapped` is set. For EqualLine only the first
// condition holds, and k = 1, w = 0.
struct TrichotomyResult {
  PairCase pair_case = PairCase::EqualLine;
  Integer k = 1;
  Integer w = 0;
  IntegerMatrix witness;
  int sign1 = 1;
  int sign2 = 1;
  bool swapped = false;
};

// Decides which of the three cases holds. For IndexPair the reported w is
// min(w, k - w), the smallest value reachable by sign changes.
TrichotomyResult classify_primitive_pair(const RealWeight& a1, const RealWeight& a2);

// Minimal (case, k, w) over signs, GL(d,Z) and, when allowed, the exchange
// of a1 and a2.
TrichotomyResult canonical_pair_form(const RealWeight& a1, const RealWeight& a2,
                                     bool allow_swap);

// Residues {w, -w, w^-1, -w^-1} mod k (the last two only with `allow_swap`),
// reported in 1..k. Describes the lens parameters identified with w.
std::vector<Integer> lens_parameter_orbit(const Integer& k, const Integer& w,
                                          bool allow_swap);

}  // namespace torusq
