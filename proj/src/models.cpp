#include "torusq/models.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace torusq {

namespace {

constexpr double kVanishing = 1e-12;

struct Exponents {
  std::vector<std::vector<long long>> r;  // r[j][i] = rho(j, i)
};

Exponents exponents(const IntegerMatrix& rho) {
  Exponents e;
  e.r.assign(rho.rows(), std::vector<long long>(rho.cols()));
  for (std::size_t j = 0; j < rho.rows(); ++j)
    for (std::size_t i = 0; i < rho.cols(); ++i) e.r[j][i] = static_cast<long long>(rho(j, i));
  return e;
}

// rho_j(b) where b holds the coordinates k..d-1.
Complex rho_j(const Exponents& e, std::size_t j, std::size_t k, const std::vector<Complex>& b) {
  double angle = 0;
  for (std::size_t i = k; i < e.r[j].size(); ++i)
    if (e.r[j][i] != 0) angle += static_cast<double>(e.r[j][i]) * std::arg(b[i - k]);
  return std::polar(1.0, angle);
}

Complex unit(Complex a, std::size_t j) {
  const double r = std::abs(a);
  if (r < kVanishing) throw ModelDomainError("A_" + std::to_string(j) + " vanishes");
  return a / r;
}

double real_part(Complex a, std::size_t j) {
  if (std::abs(a.imag()) > 1e-9 * std::max(1.0, std::abs(a.real())))
    throw ModelDomainError("x'_" + std::to_string(j) + " is not real");
  return a.real();
}

struct Evaluated {
  std::vector<Complex> A;
  std::vector<double> x_prime;
};

Evaluated evaluate(const std::vector<Expr>& A, const std::vector<Expr>& x_prime,
                   const std::vector<double>& s, const std::vector<double>& x) {
  Evaluated out;
  for (const auto& a : A) out.A.push_back(a.eval(s, x));
  for (std::size_t j = 0; j < x_prime.size(); ++j)
    out.x_prime.push_back(real_part(x_prime[j].eval(s, x), j));
  return out;
}

double scaled(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

template <typename T>
double residual(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return INFINITY;
  double r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, scaled(a[i], b[i]));
  return r;
}

double residual(const ModelPoint& a, const ModelPoint& b) {
  return std::max({residual(a.z, b.z), residual(a.c, b.c), residual(a.x, b.x)});
}

double residual(const QuotientPoint& a, const QuotientPoint& b) {
  return std::max(residual(a.s, b.s), residual(a.x, b.x));
}

double drift(const std::vector<Complex>& v) {
  double r = 0;
  for (auto c : v) r = std::max(r, std::abs(std::abs(c) - 1.0));
  return r;
}

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::string ModelShape::to_string() const {
  return "(n,l,m)=(" + std::to_string(n) + "," + std::to_string(l) + "," + std::to_string(m) +
         ") -> (" + std::to_string(n2) + "," + std::to_string(l2) + "," + std::to_string(m2) +
         "), k=" + std::to_string(k);
}

void validate(const ModelMapSpec& spec) {
  const ModelShape& sh = spec.shape;
  const std::size_t d = sh.d();
  if (d == 0) throw Error("model of dimension 0");
  if (sh.n2 + sh.l2 != d) throw Error("n + l must equal n' + l'");
  if (sh.n + sh.m != sh.n2 + sh.m2) throw Error("n + m must equal n' + m'");
  if (sh.k > std::min(sh.n, sh.n2)) throw Error("k exceeds min(n, n')");
  if (spec.rho.rows() != d || spec.rho.cols() != d) throw Error("rho must be d x d");
  const Integer det = determinant(spec.rho);
  if (det != 1 && det != -1) throw Error("rho is not invertible over Z");
  for (std::size_t i = 0; i < sh.k; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (spec.rho(j, i) != (i == j ? 1 : 0)) throw Error("rho does not fix the first k circles");
  auto check_exprs = [&](const std::vector<Expr>& A, const std::vector<Expr>& xp) {
    if (A.size() != d) throw Error("expected " + std::to_string(d) + " functions A_j");
    if (xp.size() != sh.m2) throw Error("expected " + std::to_string(sh.m2) + " functions x'_j");
    for (const auto* list : {&A, &xp})
      for (const auto& e : *list)
        if (e.s_arity() > sh.n || e.x_arity() > sh.m) throw Error("expression uses a missing variable");
  };
  check_exprs(spec.A, spec.x_prime);
  if (spec.f_override) check_exprs(spec.f_override->A, spec.f_override->x_prime);
  for (const auto& p : spec.probes) {
    if (p.s.size() != sh.n || p.x.size() != sh.m) throw Error("probe has the wrong shape");
    for (double v : p.s)
      if (v < 0) throw Error("probe has negative s");
  }
}

QuotientPoint eval_theta(const ModelPoint& p) {
  QuotientPoint q;
  for (auto z : p.z) q.s.push_back(std::norm(z));
  q.x = p.x;
  return q;
}

ModelPoint eval_cstd(const CutPoint& p) {
  if (p.tau.size() < p.s.size()) throw Error("cut point has too few torus coordinates");
  ModelPoint out;
  for (std::size_t j = 0; j < p.s.size(); ++j) {
    if (p.s[j] < 0) throw Error("negative s coordinate");
    out.z.push_back(std::sqrt(p.s[j]) * p.tau[j]);
  }
  out.c.assign(p.tau.begin() + static_cast<std::ptrdiff_t>(p.s.size()), p.tau.end());
  out.x = p.x;
  return out;
}

QuotientPoint project(const CutPoint& p) { return {p.s, p.x}; }

ModelMap assemble_f(const ModelMapSpec& spec) {
  validate(spec);
  const ModelShape sh = spec.shape;
  const Exponents e = exponents(spec.rho);
  const auto& A = spec.f_override ? spec.f_override->A : spec.A;
  const auto& xp = spec.f_override ? spec.f_override->x_prime : spec.x_prime;
  return [sh, e, A, xp](const ModelPoint& p) {
    const QuotientPoint q = eval_theta(p);
    std::vector<Complex> b;
    for (std::size_t i = sh.k; i < sh.n; ++i) {
      if (std::abs(p.z[i]) == 0) throw ModelDomainError("z_" + std::to_string(i) + " vanishes");
      b.push_back(p.z[i] / std::abs(p.z[i]));
    }
    b.insert(b.end(), p.c.begin(), p.c.end());
    const Evaluated v = evaluate(A, xp, q.s, q.x);
    ModelPoint out;
    for (std::size_t j = 0; j < sh.d(); ++j) {
      const Complex r = rho_j(e, j, sh.k, b);
      if (j < sh.k) {
        out.z.push_back(p.z[j] * r * v.A[j]);
      } else if (j < sh.n2) {
        if (std::abs(v.A[j]) < kVanishing) throw ModelDomainError("A_" + std::to_string(j) + " vanishes");
        out.z.push_back(r * v.A[j]);
      } else {
        out.c.push_back(r * unit(v.A[j], j));
      }
    }
    out.x = v.x_prime;
    return out;
  };
}

CutMap induce_G(const ModelMapSpec& spec) {
  validate(spec);
  const ModelShape sh = spec.shape;
  const Exponents e = exponents(spec.rho);
  const auto A = spec.A;
  const auto xp = spec.x_prime;
  return [sh, e, A, xp](const CutPoint& p) {
    const std::vector<Complex> b(p.tau.begin() + static_cast<std::ptrdiff_t>(sh.k), p.tau.end());
    const Evaluated v = evaluate(A, xp, p.s, p.x);
    CutPoint out;
    for (std::size_t j = 0; j < sh.d(); ++j) {
      const Complex phase = rho_j(e, j, sh.k, b) * unit(v.A[j], j);
      if (j < sh.k) {
        out.s.push_back(p.s[j] * std::norm(v.A[j]));
        out.tau.push_back(p.tau[j] * phase);
      } else {
        if (j < sh.n2) out.s.push_back(std::norm(v.A[j]));
        out.tau.push_back(phase);
      }
    }
    out.x = v.x_prime;
    return out;
  };
}

QuotientMap descend_g(const ModelMapSpec& spec) {
  validate(spec);
  const ModelShape sh = spec.shape;
  const auto A = spec.A;
  const auto xp = spec.x_prime;
  return [sh, A, xp](const QuotientPoint& p) {
    const Evaluated v = evaluate(A, xp, p.s, p.x);
    QuotientPoint out;
    for (std::size_t j = 0; j < sh.n2; ++j)
      out.s.push_back(j < sh.k ? p.s[j] * std::norm(v.A[j]) : std::norm(v.A[j]));
    out.x = v.x_prime;
    return out;
  };
}

ModelMap f_from_G(const ModelMapSpec& spec) {
  const CutMap G = induce_G(spec);
  return [G](const ModelPoint& p) {
    CutPoint q;
    q.x = p.x;
    for (auto z : p.z) {
      q.s.push_back(std::norm(z));
      q.tau.push_back(std::abs(z) == 0 ? Complex(1) : z / std::abs(z));
    }
    q.tau.insert(q.tau.end(), p.c.begin(), p.c.end());
    return eval_cstd(G(q));
  };
}

std::vector<Complex> apply_rho(const IntegerMatrix& rho, const std::vector<Complex>& t) {
  const Exponents e = exponents(rho);
  std::vector<Complex> out;
  for (std::size_t j = 0; j < t.size(); ++j) out.push_back(rho_j(e, j, 0, t));
  return out;
}

ModelPoint act(const ModelShape& shape, const std::vector<Complex>& t, const ModelPoint& p,
               bool target) {
  const std::size_t n = target ? shape.n2 : shape.n;
  ModelPoint out = p;
  for (std::size_t j = 0; j < out.z.size(); ++j) out.z[j] *= t[j];
  for (std::size_t j = 0; j < out.c.size(); ++j) out.c[j] *= t[n + j];
  return out;
}

std::vector<Complex> sample_torus(std::size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::vector<Complex> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back(std::polar(1.0, angle(rng)));
  return out;
}

CutPoint sample_cut_point(const ModelShape& shape, std::mt19937_64& rng,
                          const SampleDomain& domain, bool interior) {
  std::uniform_real_distribution<double> s_dist(domain.s_min, domain.s_max);
  std::uniform_real_distribution<double> x_dist(domain.x_min, domain.x_max);
  std::bernoulli_distribution facet(domain.facet_probability);
  CutPoint p;
  for (std::size_t j = 0; j < shape.n; ++j) {
    const bool on_facet = j < shape.k && !interior && facet(rng);
    const double s = s_dist(rng);
    p.s.push_back(on_facet ? 0.0 : s);
  }
  for (std::size_t j = 0; j < shape.m; ++j) p.x.push_back(x_dist(rng));
  p.tau = sample_torus(shape.d(), rng);
  return p;
}

ModelPoint sample_model_point(const ModelShape& shape, std::mt19937_64& rng,
                              const SampleDomain& domain, bool interior) {
  return eval_cstd(sample_cut_point(shape, rng, domain, interior));
}

double DescentReport::max_residual() const {
  return std::max({cut_square, quotient_square, projection, equivariance, round_trip});
}

DescentReport verify_descent(const ModelMapSpec& spec, const VerifyOptions& options) {
  const ModelMap f = assemble_f(spec);
  const CutMap G = induce_G(spec);
  const QuotientMap g = descend_g(spec);
  const ModelMap f2 = f_from_G(spec);
  const ModelShape& sh = spec.shape;
  std::mt19937_64 rng(options.seed);

  DescentReport r;
  for (std::size_t i = 0; i < options.samples; ++i) {
    const CutPoint q = sample_cut_point(sh, rng, options.domain);
    const ModelPoint p = eval_cstd(q);
    const ModelPoint fp = f(p);
    const CutPoint Gq = G(q);

    r.projection = std::max(r.projection, residual(eval_theta(p), project(q)));
    r.cut_square = std::max(r.cut_square, residual(eval_cstd(Gq), fp));
    r.quotient_square = std::max(r.quotient_square, residual(eval_theta(fp), g(project(q))));
    const auto t = sample_torus(sh.d(), rng);
    r.equivariance = std::max(
        r.equivariance, residual(f(act(sh, t, p)), act(sh, apply_rho(spec.rho, t), fp, true)));
    r.round_trip = std::max(r.round_trip, residual(f2(p), fp));
    r.unit_drift = std::max({r.unit_drift, drift(Gq.tau), drift(fp.c)});
    ++r.samples;
  }
  auto check = [&](double value, double tol, const std::string& what) {
    if (!(value <= tol)) r.failures.push_back(what + " residual " + format(value));
  };
  check(r.projection, options.unit_tol, "theta o c^std vs projection");
  check(r.cut_square, options.tol, "c^std o G vs f o c^std");
  check(r.quotient_square, options.tol, "theta o f vs g o theta");
  check(r.equivariance, options.tol, "equivariance");
  check(r.round_trip, options.tol, "f from G vs f");
  check(r.unit_drift, options.unit_tol, "unit circle drift");
  return r;
}

HadamardReport hadamard_positivity(const ModelMapSpec& spec, std::size_t j,
                                   const VerifyOptions& options) {
  if (j >= spec.shape.k) throw Error("Hadamard check needs j < k");
  const QuotientMap g = descend_g(spec);
  std::mt19937_64 rng(options.seed + 0x9e3779b97f4a7c15ULL * (j + 1));
  std::vector<QuotientPoint> points = spec.probes;
  for (std::size_t i = 0; i < options.samples; ++i) {
    QuotientPoint q = project(sample_cut_point(spec.shape, rng, options.domain, true));
    if (i % 2 == 0) q.s[j] = 0;
    points.push_back(std::move(q));
  }
  HadamardReport r;
  r.j = j;
  r.min_estimate = INFINITY;
  const double h = options.fd_step;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const QuotientPoint& q = points[i];
    double estimate;
    if (q.s[j] == 0) {
      QuotientPoint plus = q, minus = q;
      plus.s[j] = h;
      minus.s[j] = -h;
      estimate = (g(plus).s[j] - g(minus).s[j]) / (2 * h);
    } else {
      estimate = g(q).s[j] / q.s[j];
    }
    ++r.evaluated;
    r.min_estimate = std::min(r.min_estimate, estimate);
    if (!(estimate > 0) && r.failures.size() < 10)
      r.failures.push_back("h_" + std::to_string(j) + " = " + format(estimate) + " at point " +
                           std::to_string(i));
  }
  return r;
}

JacobianReport jacobian_check(const ModelMapSpec& spec, const VerifyOptions& options) {
  const CutMap G = induce_G(spec);
  const ModelShape& sh = spec.shape;
  const std::size_t d = sh.d();
  const std::size_t in_dim = sh.n + sh.m + d;
  const std::size_t out_dim = sh.n2 + sh.m2 + d;
  std::mt19937_64 rng(options.seed + 1);
  const double h = options.fd_step;

  auto perturbed = [&](const CutPoint& p, std::size_t coord, double delta) {
    CutPoint q = p;
    if (coord < sh.n)
      q.s[coord] += delta;
    else if (coord < sh.n + sh.m)
      q.x[coord - sh.n] += delta;
    else
      q.tau[coord - sh.n - sh.m] *= std::polar(1.0, delta);
    return G(q);
  };

  JacobianReport r;
  r.min_singular_value = INFINITY;
  const std::size_t points = std::min<std::size_t>(options.samples, 200);
  for (std::size_t i = 0; i < points; ++i) {
    const CutPoint p = sample_cut_point(sh, rng, options.domain, true);
    Eigen::MatrixXd J(out_dim, in_dim);
    for (std::size_t c = 0; c < in_dim; ++c) {
      const CutPoint plus = perturbed(p, c, h);
      const CutPoint minus = perturbed(p, c, -h);
      std::size_t row = 0;
      for (std::size_t j = 0; j < plus.s.size(); ++j) J(row++, c) = (plus.s[j] - minus.s[j]) / (2 * h);
      for (std::size_t j = 0; j < plus.x.size(); ++j) J(row++, c) = (plus.x[j] - minus.x[j]) / (2 * h);
      for (std::size_t j = 0; j < plus.tau.size(); ++j)
        J(row++, c) = std::arg(plus.tau[j] / minus.tau[j]) / (2 * h);
    }
    const double smallest = Eigen::JacobiSVD<Eigen::MatrixXd>(J).singularValues().minCoeff();
    ++r.evaluated;
    r.min_singular_value = std::min(r.min_singular_value, smallest);
    if (!(smallest > options.min_singular_value) && r.failures.size() < 10)
      r.failures.push_back("smallest singular value " + format(smallest) + " at point " +
                           std::to_string(i));
  }
  return r;
}

std::vector<ModelShape> all_model_shapes() {
  std::vector<ModelShape> out;
  for (std::size_t n = 0; n <= 2; ++n)
    for (std::size_t l = 0; l <= 2; ++l)
      for (std::size_t m = 0; m <= 2; ++m)
        for (std::size_t n2 = 0; n2 <= 2; ++n2)
          for (std::size_t l2 = 0; l2 <= 2; ++l2)
            for (std::size_t m2 = 0; m2 <= 2; ++m2) {
              if (n + l == 0 || n + l != n2 + l2 || n + m != n2 + m2) continue;
              for (std::size_t k = 0; k <= std::min(n, n2); ++k)
                out.push_back({n, l, m, n2, l2, m2, k});
            }
  return out;
}

ModelMapSpec identity_spec(const ModelShape& shape) {
  if (shape.k != shape.n || shape.n != shape.n2 || shape.l != shape.l2 || shape.m != shape.m2)
    throw Error("identity spec needs k = n = n', l = l', m = m'");
  ModelMapSpec spec;
  spec.shape = shape;
  spec.rho = IntegerMatrix::identity(shape.d());
  spec.A.assign(shape.d(), Expr::constant(1.0));
  for (std::size_t j = 0; j < shape.m; ++j) spec.x_prime.push_back(Expr::x(j));
  return spec;
}

namespace {

struct SpecBuilder {
  const ModelShape& shape;
  std::mt19937_64 rng;

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  std::vector<Expr> variables() const {
    std::vector<Expr> v;
    for (std::size_t i = 0; i < shape.n; ++i) v.push_back(Expr::s(i));
    for (std::size_t i = 0; i < shape.m; ++i) v.push_back(Expr::x(i));
    return v;
  }

  Expr linear() {
    std::vector<Expr> terms{Expr::constant(uniform(-1, 1))};
    for (auto& v : variables()) terms.push_back(Expr::constant(uniform(-1, 1)) * v);
    return Expr::add(std::move(terms));
  }

  Expr quadratic() {
    const auto vars = variables();
    std::vector<Expr> terms{linear()};
    for (std::size_t a = 0; a < vars.size(); ++a)
      for (std::size_t b = a; b < vars.size(); ++b)
        terms.push_back(Expr::mul({Expr::constant(uniform(-0.5, 0.5)), vars[a], vars[b]}));
    return Expr::add(std::move(terms));
  }

  // exp(eps q + i p) times an optional extra exponent.
  Expr perturbation(std::optional<Expr> extra = std::nullopt) {
    constexpr double eps = 0.01;
    std::vector<Expr> terms{Expr::constant(eps) * linear(), Expr::constant({0, 1}) * quadratic()};
    if (extra) terms.push_back(*extra);
    return Expr::exp(Expr::add(std::move(terms)));
  }

  IntegerMatrix rho() {
    const std::size_t d = shape.d(), k = shape.k;
    IntegerMatrix r = IntegerMatrix::identity(d);
    std::uniform_int_distribution<int> entry(-2, 2);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = k; i < d; ++i) r(j, i) = entry(rng);
    const std::size_t rest = d - k;
    if (rest == 0) return r;
    std::uniform_int_distribution<std::size_t> pick(k, d - 1);
    for (std::size_t step = 0; step < 2 * rest; ++step) {
      const std::size_t a = pick(rng), b = pick(rng);
      if (a == b) {
        r.negate_row(a);
      } else {
        const Integer factor = (rng() & 1) ? 1 : -1;
        r.add_row_multiple(a, b, factor);
        for (std::size_t i = 0; i < d; ++i)
          if (abs(r(a, i)) > 3) {
            r.add_row_multiple(a, b, -factor);  // keep entries small
            break;
          }
      }
    }
    return r;
  }
};

}  // namespace

ModelMapSpec random_model_spec(const ModelShape& shape, std::uint64_t seed) {
  if (shape.d() == 0 || shape.n + shape.l != shape.n2 + shape.l2 ||
      shape.n + shape.m != shape.n2 + shape.m2 || shape.k > std::min(shape.n, shape.n2))
    throw Error("invalid model shape " + shape.to_string());
  SpecBuilder build{shape, std::mt19937_64(seed)};
  ModelMapSpec spec;
  spec.shape = shape;
  spec.rho = build.rho();
  spec.A.resize(shape.d());
  spec.x_prime.resize(shape.m2);

  for (std::size_t j = 0; j < shape.k; ++j)
    spec.A[j] = Expr::constant(build.uniform(0.5, 2.0)) * build.perturbation();

  // Remaining source coordinates, paired in order with the remaining target ones.
  std::vector<Expr> sources;
  for (std::size_t i = shape.k; i < shape.n; ++i) sources.push_back(Expr::s(i));
  for (std::size_t i = 0; i < shape.m; ++i) sources.push_back(Expr::x(i));
  std::size_t next = 0;
  for (std::size_t j = shape.k; j < shape.n2; ++j, ++next) {
    const Expr& src = sources[next];
    if (src.op() == Expr::Op::VarS)
      spec.A[j] = src * build.perturbation();
    else
      spec.A[j] = build.perturbation(Expr::constant(0.5) * src);
  }
  for (std::size_t j = 0; j < shape.m2; ++j, ++next)
    spec.x_prime[j] = sources[next] + Expr::constant(0.01) * build.linear();
  for (std::size_t j = shape.n2; j < shape.d(); ++j)
    spec.A[j] = Expr::exp(Expr::constant({0, 1}) * build.quadratic());
  validate(spec);
  return spec;
}

ModelMapSpec corrupt_spec(const ModelMapSpec& spec, std::size_t j) {
  if (j >= spec.A.size()) throw Error("no A_" + std::to_string(j) + " to corrupt");
  ModelMapSpec out = spec;
  out.f_override = ModelMapSpec::Override{spec.A, spec.x_prime};
  out.f_override->A[j] = Expr::neg(spec.A[j]);
  return out;
}

}  // namespace torusq
