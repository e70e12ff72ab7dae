#include "propint/residue.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "propint/errors.hpp"
#include "propint/geometry.hpp"

namespace propint {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr std::size_t kRadialGrid = 256;
constexpr double kRadialFloor = 1e-9;
constexpr std::size_t kBlock = 64;
constexpr int kShifts = 4;
constexpr std::uint32_t kMaxDegree = 64;

// Floating-point copy of a polynomial in one or two variables.
class ComplexPoly {
 public:
  explicit ComplexPoly(const Polynomial& p) : arity_(p.ring().arity()) {
    for (const auto& t : p.terms()) {
      terms_.push_back({t.coeff.get_d(), t.monomial[0], arity_ > 1 ? t.monomial[1] : 0u});
      max_degree_ = std::max({max_degree_, terms_.back().e0, terms_.back().e1});
    }
    if (max_degree_ >= kMaxDegree) throw MathError("residue oracle supports degrees below 64");
  }
  cplx operator()(cplx u, cplx v = 0) const {
    std::array<cplx, kMaxDegree> pu, pv;
    pu[0] = pv[0] = 1;
    for (std::uint32_t k = 1; k <= max_degree_; ++k) {
      pu[k] = pu[k - 1] * u;
      pv[k] = pv[k - 1] * v;
    }
    cplx out = 0;
    for (const auto& t : terms_) out += t.c * pu[t.e0] * pv[t.e1];
    return out;
  }

 private:
  struct T {
    double c;
    std::uint32_t e0, e1;
  };
  std::size_t arity_;
  std::vector<T> terms_;
  std::uint32_t max_degree_ = 0;
};

double smoothstep5(double t) { return t * t * t * (10 - 15 * t + 6 * t * t); }

// Radial test function: 1 on [0, 1/2], 0 from 1 on.
double bump(double r) {
  if (r <= 0.5) return 1;
  if (r >= 1) return 0;
  return 1 - smoothstep5(2 * r - 1);
}

double unit_double(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

double radical_inverse(std::uint64_t k, unsigned base) {
  double inv = 1.0 / base, f = inv, out = 0;
  while (k) {
    out += static_cast<double>(k % base) * f;
    k /= base;
    f *= inv;
  }
  return out;
}

// Log-spaced radii in [kRadialFloor, 1].
const std::vector<double>& radial_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g(kRadialGrid);
    for (std::size_t i = 0; i < kRadialGrid; ++i)
      g[i] = std::exp(std::log(kRadialFloor) * (1.0 - static_cast<double>(i) / (kRadialGrid - 1)));
    return g;
  }();
  return grid;
}

// ∫_0^1 g(r) dr where g vanishes unless s(r) ∈ [ε, 2ε]; s is sampled on the
// radial grid to locate the support, which is then integrated adaptively.
double radial_integral(const std::vector<double>& s, double eps, const std::function<double(double)>& g,
                       double& error) {
  const auto& grid = radial_grid();
  std::vector<char> active(kRadialGrid - 1, 0);
  for (std::size_t i = 0; i + 1 < kRadialGrid; ++i) {
    const double lo = std::min(s[i], s[i + 1]), hi = std::max(s[i], s[i + 1]);
    if (hi >= eps && lo <= 2 * eps) {
      active[i] = 1;
      if (i > 0) active[i - 1] = 1;
      if (i + 2 < kRadialGrid) active[i + 1] = 1;
    }
  }
  double total = 0;
  for (std::size_t i = 0; i + 1 < kRadialGrid;) {
    if (!active[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < kRadialGrid - 1 && active[j + 1]) ++j;
    double err = 0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, grid[i], grid[j + 1], 2, 1e-6, &err);
    error += err;
    i = j + 1;
  }
  return total;
}

// Runs body(index) for every index in [0, n), in fixed blocks so that the
// per-block partial sums do not depend on the thread count.
std::vector<std::vector<double>> run_blocks(std::size_t n, unsigned threads, std::size_t width,
                                            const std::function<void(std::size_t, std::vector<double>&)>& body) {
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> partial(blocks, std::vector<double>(width, 0.0));
  auto work = [&](unsigned t, unsigned count) {
    for (std::size_t b = t; b < blocks; b += count)
      for (std::size_t i = b * kBlock; i < std::min(n, (b + 1) * kBlock); ++i) body(i, partial[b]);
  };
  const unsigned count = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(work, t, count);
  work(0, count);
  for (auto& th : pool) th.join();
  return partial;
}

void check_schedule(const std::vector<double>& eps) {
  if (eps.size() < 3) throw MathError("the epsilon schedule needs at least three values");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0)) throw MathError("epsilon values must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw MathError("the epsilon schedule must be strictly decreasing");
  }
}

std::uint32_t order_at_zero(const Polynomial& f) {
  std::uint32_t m = UINT32_MAX;
  for (const auto& t : f.terms()) m = std::min(m, t.monomial[0]);
  return m;
}

Polynomial leading_form(const Polynomial& p) {
  std::uint64_t low = UINT64_MAX;
  for (const auto& t : p.terms()) low = std::min(low, t.monomial.degree());
  std::vector<Term> keep;
  for (const auto& t : p.terms())
    if (t.monomial.degree() == low) keep.push_back(t);
  return Polynomial::from_terms(p.ring(), std::move(keep));
}

int permutation_sign(int a, int b, int c, int d) {
  const int p[4] = {a, b, c, d};
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

}  // namespace

double cutoff_value(Cutoff c, double s) {
  if (s <= 1) return 0;
  if (s >= 2) return 1;
  const double t = s - 1;
  if (c == Cutoff::quintic) return smoothstep5(t);
  const double a = std::exp(-1 / t), b = std::exp(-1 / (1 - t));
  return a / (a + b);
}

double cutoff_derivative(Cutoff c, double s) {
  if (s <= 1 || s >= 2) return 0;
  const double t = s - 1;
  if (c == Cutoff::quintic) return 30 * t * t * (1 - t) * (1 - t);
  const double a = std::exp(-1 / t), b = std::exp(-1 / (1 - t));
  const double da = a / (t * t), db = -b / ((1 - t) * (1 - t));
  return (da * b - a * db) / ((a + b) * (a + b));
}

MassEstimate extrapolate(const std::vector<std::pair<double, double>>& per_epsilon, double quadrature_error) {
  MassEstimate est;
  est.per_epsilon = per_epsilon;
  const std::size_t n = per_epsilon.size();
  if (n < 3) throw MathError("extrapolation needs three schedule points");
  const auto [e1, m1] = per_epsilon[n - 3];
  const auto [e2, m2] = per_epsilon[n - 2];
  const auto [e3, m3] = per_epsilon[n - 1];
  const double d1 = m1 - m2, d2 = m2 - m3;
  const double spread = std::max({m1, m2, m3}) - std::min({m1, m2, m3});
  const double tiny = std::max(1e-9 * std::max(1.0, std::abs(m3)), quadrature_error);
  est.extrapolated = m3;
  if (std::abs(d1) <= tiny || std::abs(d2) <= tiny) {
    est.notes.push_back("per-epsilon masses are stable; no order fit");
  } else if (d1 * d2 < 0) {
    est.notes.push_back("per-epsilon masses are not monotone; no order fit");
  } else {
    const double rho = d1 / d2;
    auto ratio = [&](double p) { return (std::pow(e1, p) - std::pow(e2, p)) / (std::pow(e2, p) - std::pow(e3, p)); };
    double lo = 0.05, hi = 6.0;
    if (rho < ratio(lo) || rho > ratio(hi)) {
      est.notes.push_back("convergence order outside [0.05, 6]; no order fit");
    } else {
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ratio(mid) < rho ? lo : hi) = mid;
      }
      const double p = 0.5 * (lo + hi);
      const double c = d2 / (std::pow(e2, p) - std::pow(e3, p));
      est.fitted_order = p;
      est.extrapolated = m3 - c * std::pow(e3, p);
    }
  }
  const double shift = std::abs(est.extrapolated - m3);
  est.error_bar = std::max(shift, spread) + quadrature_error;
  est.notes.push_back("extrapolation order is an empirical fit; the limit has no proven rate");
  if (shift > 0.1 * std::max(1.0, std::abs(est.extrapolated)) || (std::abs(d2) > std::abs(d1) && std::abs(d2) > tiny)) {
    est.converged = false;
    est.notes.push_back("masses do not settle across the schedule");
  }
  if (est.converged && est.error_bar > 0.05 * std::max(1.0, std::abs(est.extrapolated))) {
    est.converged = false;
    est.notes.push_back("error bar exceeds 5% of the estimate");
  }
  return est;
}

MassEstimate lelong_mass_1d(const RegularizationJob& job, Context& ctx) {
  if (job.kappa != 1 || job.tuple.size() != 1 || job.tuple[0].ring().arity() != 1)
    throw MathError("lelong_mass_1d expects one polynomial in one variable");
  check_schedule(job.epsilons);
  const Polynomial& fp = job.tuple[0];
  if (fp.is_zero() || fp.constant_term() != 0) throw MathError("f must vanish at the origin");
  const std::uint32_t m = order_at_zero(fp);
  const ComplexPoly f(fp), df(derivative(fp, 0));

  // Argument principle on the unit circle: no zeros besides the origin.
  {
    const std::size_t n = 8192;
    double winding = 0, min_abs = INFINITY;
    cplx prev = f(1.0);
    for (std::size_t k = 1; k <= n; ++k) {
      const cplx cur = f(std::polar(1.0, 2 * kPi * static_cast<double>(k) / n));
      winding += std::arg(cur / prev);
      min_abs = std::min(min_abs, std::abs(cur));
      prev = cur;
    }
    if (min_abs < 1e-12) throw MathError("f vanishes on the unit circle");
    if (std::lround(winding / (2 * kPi)) != static_cast<long>(m))
      throw MathError("f has zeros in the unit disc other than the origin");
  }

  const std::size_t n = job.samples ? job.samples : 1024;
  std::mt19937_64 gen(job.seed);
  const double shift = unit_double(gen);
  ctx.certify("lelong_mass_1d: seed " + std::to_string(job.seed) + ", " + std::to_string(n) + " angles");
  const std::size_t ne = job.epsilons.size();
  const auto& grid = radial_grid();
  // Columns: full-grid sums, even-index sums, quadrature error.
  const auto partial = run_blocks(n, job.threads, 3 * ne, [&](std::size_t k, std::vector<double>& acc) {
    const cplx dir = std::polar(1.0, 2 * kPi * (static_cast<double>(k) + shift) / static_cast<double>(n));
    std::vector<double> s(kRadialGrid);
    for (std::size_t i = 0; i < kRadialGrid; ++i) s[i] = std::norm(f(grid[i] * dir));
    for (std::size_t e = 0; e < ne; ++e) {
      const double eps = job.epsilons[e];
      auto g = [&](double r) {
        const cplx z = r * dir;
        return cutoff_derivative(job.cutoff, std::norm(f(z)) / eps) / eps * std::norm(df(z)) * bump(r) * r;
      };
      double err = 0;
      const double v = radial_integral(s, eps, g, err) * 2 * kPi / static_cast<double>(n) / kPi;
      acc[e] += v;
      if (k % 2 == 0) acc[ne + e] += 2 * v;
      acc[2 * ne + e] += err * 2 / static_cast<double>(n);
    }
  });
  std::vector<double> full(ne, 0), half(ne, 0), quad(ne, 0);
  for (const auto& b : partial)
    for (std::size_t e = 0; e < ne; ++e) {
      full[e] += b[e];
      half[e] += b[ne + e];
      quad[e] += b[2 * ne + e];
    }
  std::vector<std::pair<double, double>> per;
  double qerr = 0;
  for (std::size_t e = 0; e < ne; ++e) {
    per.emplace_back(job.epsilons[e], full[e]);
    qerr = std::max(qerr, quad[e] + std::abs(full[e] - half[e]));
  }
  return extrapolate(per, qerr);
}

MassEstimate lelong_mass_2d(const RegularizationJob& job, Context& ctx) {
  if (job.kappa != 2 || job.tuple.size() < 2 || job.tuple.size() > 3)
    throw MathError("lelong_mass_2d expects two or three polynomials");
  for (const auto& p : job.tuple)
    if (p.ring().arity() != 2 || !(p.ring() == job.tuple[0].ring()))
      throw MathError("lelong_mass_2d expects polynomials in the same two variables");
  check_schedule(job.epsilons);
  const PolyRing& ring = job.tuple[0].ring();
  const Ideal ideal(ring, job.tuple);
  const PointSpec origin{0, 0};
  const std::uint64_t length = local_length(ideal, origin, ctx);
  if (length == 0) throw MathError("the tuple does not vanish at the origin");
  const Ideal rest = saturation(ideal, point_ideal(ring, origin), ctx);
  if (!is_unit_ideal(rest, ctx)) {
    if (dimension(rest, ctx) != 0) throw MathError("the tuple has a positive-dimensional zero set");
    const RationalPoints pts = rational_points(rest, ctx);
    for (const auto& p : pts.points)
      if (p[0] * p[0] + p[1] * p[1] <= 1) throw MathError("the tuple has another common zero in the unit ball");
    if (!pts.complete) ctx.caveat("other common zeros are irrational and were not located");
  }
  // When the leading forms share a tangent line the mass concentrates in a
  // shrinking cone of directions, which uniform direction sampling resolves poorly.
  std::vector<Polynomial> leads;
  for (const auto& p : job.tuple) leads.push_back(leading_form(p));
  const bool tangential = dimension(Ideal(ring, std::move(leads)), ctx) > 0;

  std::vector<ComplexPoly> sig, du, dv;
  for (const auto& p : job.tuple) {
    sig.emplace_back(p);
    du.emplace_back(derivative(p, 0));
    dv.emplace_back(derivative(p, 1));
  }
  // ∂̄s∧∂s∧∂∂̄s as a multiple of dV, with basis e0 = du, e1 = dū, e2 = dv, e3 = dv̄
  // and du∧dū∧dv∧dv̄ = -4 dV.
  auto density = [&](cplx u, cplx v, double eps, double& s_out) {
    double s = 0;
    cplx a[2] = {0, 0};
    cplx h[2][2] = {{0, 0}, {0, 0}};
    for (std::size_t j = 0; j < sig.size(); ++j) {
      const cplx sj = sig[j](u, v), g[2] = {du[j](u, v), dv[j](u, v)};
      s += std::norm(sj);
      for (int k = 0; k < 2; ++k) {
        a[k] += std::conj(sj) * g[k];
        for (int l = 0; l < 2; ++l) h[k][l] += g[k] * std::conj(g[l]);
      }
    }
    s_out = s;
    const double chi = cutoff_derivative(job.cutoff, s / eps);
    if (chi == 0) return 0.0;
    const cplx alpha[4] = {0, std::conj(a[0]), 0, std::conj(a[1])};
    const cplx beta[4] = {a[0], 0, a[1], 0};
    cplx coef = 0;
    for (int i : {1, 3})
      for (int j : {0, 2})
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) {
            const int p = 2 * k, q = 2 * l + 1;
            if (i == p || i == q || j == p || j == q) continue;
            coef += static_cast<double>(permutation_sign(i, j, p, q)) * alpha[i] * beta[j] * h[k][l];
          }
    return -chi * coef.real() / (eps * kPi * kPi * s * s);
  };

  const std::size_t n = job.samples ? job.samples : 8192;
  const std::size_t per_shift = std::max<std::size_t>(1, n / kShifts);
  std::mt19937_64 gen(job.seed);
  double shifts[kShifts][3];
  for (auto& sh : shifts)
    for (double& x : sh) x = unit_double(gen);
  ctx.certify("lelong_mass_2d: seed " + std::to_string(job.seed) + ", " + std::to_string(kShifts) + " shifts of " +
              std::to_string(per_shift) + " Halton directions");
  const std::size_t ne = job.epsilons.size();
  const auto& grid = radial_grid();
  // Columns: per shift and epsilon sums, then quadrature error per epsilon.
  const auto partial =
      run_blocks(per_shift * kShifts, job.threads, (kShifts + 1) * ne, [&](std::size_t idx, std::vector<double>& acc) {
        const std::size_t shift = idx / per_shift, k = idx % per_shift + 1;
        double u3[3] = {radical_inverse(k, 2), radical_inverse(k, 3), radical_inverse(k, 5)};
        for (int c = 0; c < 3; ++c) u3[c] = std::fmod(u3[c] + shifts[shift][c], 1.0);
        const double ch = std::sqrt(1 - u3[0]), sh = std::sqrt(u3[0]);
        const cplx w0 = std::polar(ch, 2 * kPi * u3[1]), w1 = std::polar(sh, 2 * kPi * u3[2]);
        std::vector<double> s(kRadialGrid);
        for (std::size_t i = 0; i < kRadialGrid; ++i) {
          double si = 0;
          for (const auto& p : sig) si += std::norm(p(grid[i] * w0, grid[i] * w1));
          s[i] = si;
        }
        for (std::size_t e = 0; e < ne; ++e) {
          const double eps = job.epsilons[e];
          auto g = [&](double r) {
            double unused;
            return density(r * w0, r * w1, eps, unused) * bump(r) * r * r * r;
          };
          double err = 0;
          const double v = radial_integral(s, eps, g, err) * 2 * kPi * kPi / static_cast<double>(per_shift);
          acc[shift * ne + e] += v;
          acc[kShifts * ne + e] += err * 2 * kPi * kPi / static_cast<double>(per_shift * kShifts);
        }
      });
  std::vector<std::pair<double, double>> per;
  double qerr = 0;
  for (std::size_t e = 0; e < ne; ++e) {
    double vals[kShifts] = {0, 0, 0, 0}, quad = 0;
    for (const auto& b : partial) {
      for (int sft = 0; sft < kShifts; ++sft) vals[sft] += b[sft * ne + e];
      quad += b[kShifts * ne + e];
    }
    double mean = 0;
    for (double v : vals) mean += v / kShifts;
    double var = 0;
    for (double v : vals) var += (v - mean) * (v - mean) / (kShifts - 1);
    per.emplace_back(job.epsilons[e], mean);
    qerr = std::max(qerr, quad + std::sqrt(var / kShifts));
  }
  MassEstimate est = extrapolate(per, qerr);
  if (tangential)
    est.notes.push_back("leading forms share a tangent direction; direction sampling error may exceed the error bar");
  return est;
}

}  // namespace propint
