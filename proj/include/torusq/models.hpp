// Local models C^n x T^l x R^m, the quotient map theta, the cutting map
// c^std, and numeric checks for equivariant maps between models given by
// the data (rho, A_j, x'_j).
//
// Indices are 0-based throughout: z_0..z_{n-1}, and the first k
// coordinates are the ones allowed to vanish.
#pragma once

#include "torusq/error.hpp"
#include "torusq/expr.hpp"
#include "torusq/lattice.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace torusq {

using Complex = std::complex<double>;

struct ModelShape {
  std::size_t n = 0, l = 0, m = 0;
  std::size_t n2 = 0, l2 = 0, m2 = 0;  // target n', l', m'
  std::size_t k = 0;

  std::size_t d() const { return n + l; }
  std::string to_string() const;
  bool operator==(const ModelShape&) const = default;
};

// A point (s, x) of the quotient R_{>=0}^n x R^m.
struct QuotientPoint {
  std::vector<double> s;
  std::vector<double> x;
};

// A point (z, c, x) of C^n x T^l x R^m.
struct ModelPoint {
  std::vector<Complex> z;
  std::vector<Complex> c;
  std::vector<double> x;
};

// A point (s, x, tau) of the cut-side model O x T^d.
struct CutPoint {
  std::vector<double> s;
  std::vector<double> x;
  std::vector<Complex> tau;
};

struct ModelMapSpec {
  ModelShape shape;
  // rho(t)_j = prod_i t_i^rho(j, i). Must fix T^k x {1}: column i < k is e_i.
  IntegerMatrix rho;
  std::vector<Expr> A;        // d entries
  std::vector<Expr> x_prime;  // m' entries, real valued

  // Replaces (A, x') in f only, leaving G and g alone. Used to build
  // negative controls whose squares do not commute.
  struct Override {
    std::vector<Expr> A;
    std::vector<Expr> x_prime;
  };
  std::optional<Override> f_override;

  // Extra quotient points always included in the Hadamard check.
  std::vector<QuotientPoint> probes;
};

// Evaluation left the domain of the spec: a required-nonzero A_j vanished
// or an x'_j came out complex.
class ModelDomainError : public Error {
 public:
  using Error::Error;
};

// Throws Error on shape or rho violations and out-of-range variables.
void validate(const ModelMapSpec& spec);

QuotientPoint eval_theta(const ModelPoint& p);
// Throws on negative s.
ModelPoint eval_cstd(const CutPoint& p);
QuotientPoint project(const CutPoint& p);

using ModelMap = std::function<ModelPoint(const ModelPoint&)>;
using CutMap = std::function<CutPoint(const CutPoint&)>;
using QuotientMap = std::function<QuotientPoint(const QuotientPoint&)>;

ModelMap assemble_f(const ModelMapSpec& spec);
CutMap induce_G(const ModelMapSpec& spec);
QuotientMap descend_g(const ModelMapSpec& spec);
// f recovered from G: p -> c^std(G(theta(p), phases of p)).
ModelMap f_from_G(const ModelMapSpec& spec);

// t . p for t in T^d, acting on the source (or, with `target`, the target).
ModelPoint act(const ModelShape& shape, const std::vector<Complex>& t, const ModelPoint& p,
               bool target = false);
std::vector<Complex> apply_rho(const IntegerMatrix& rho, const std::vector<Complex>& t);

struct SampleDomain {
  double s_min = 0.1, s_max = 10.0;
  double x_min = -1.0, x_max = 1.0;
  double facet_probability = 0.25;  // chance that s_j = 0 for each j < k
};

ModelPoint sample_model_point(const ModelShape& shape, std::mt19937_64& rng,
                              const SampleDomain& domain = {}, bool interior = false);
CutPoint sample_cut_point(const ModelShape& shape, std::mt19937_64& rng,
                          const SampleDomain& domain = {}, bool interior = false);
std::vector<Complex> sample_torus(std::size_t d, std::mt19937_64& rng);

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  double tol = 1e-9;
  double unit_tol = 1e-12;
  double fd_step = 1e-6;
  double min_singular_value = 1e-6;
  SampleDomain domain;
};

// Residuals are max over samples of |a - b| / max(1, |b|) per component.
struct DescentReport {
  std::size_t samples = 0;
  double cut_square = 0;       // c^std o G vs f o c^std
  double quotient_square = 0;  // theta o f vs g o theta
  double projection = 0;       // theta o c^std vs projection
  double equivariance = 0;     // f(t.p) vs rho(t).f(p)
  double round_trip = 0;       // f_from_G vs f
  double unit_drift = 0;       // ||c| - 1| over torus outputs
  std::vector<std::string> failures;

  double max_residual() const;
  bool passed() const { return failures.empty(); }
};

DescentReport verify_descent(const ModelMapSpec& spec, const VerifyOptions& options = {});

struct HadamardReport {
  std::size_t j = 0;
  std::size_t evaluated = 0;
  double min_estimate = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

// For j < k: h_j = s'_j / s_j off the facet, d s'_j / d s_j by central
// differences on it. Every estimate must be positive.
HadamardReport hadamard_positivity(const ModelMapSpec& spec, std::size_t j,
                                   const VerifyOptions& options = {});

struct JacobianReport {
  std::size_t evaluated = 0;
  double min_singular_value = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

// Finite-difference Jacobian of G in (s, x, angle) coordinates at interior
// points; its smallest singular value must exceed the threshold.
JacobianReport jacobian_check(const ModelMapSpec& spec, const VerifyOptions& options = {});

// All shapes with every entry in 0..2, n+l = n'+l' >= 1, n+m = n'+m' and
// k <= min(n, n').
std::vector<ModelShape> all_model_shapes();

// f = identity. Needs k = n = n', l = l', m = m'.
ModelMapSpec identity_spec(const ModelShape& shape);

// A random spec of the given shape: small perturbations of a map that pairs
// the remaining quotient coordinates monotonically.
ModelMapSpec random_model_spec(const ModelShape& shape, std::uint64_t seed);

// Same spec with A_j negated inside f only.
ModelMapSpec corrupt_spec(const ModelMapSpec& spec, std::size_t j);

}  // namespace torusq
