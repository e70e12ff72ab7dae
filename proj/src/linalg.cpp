#include "propint/linalg.hpp"

#include <algorithm>

#include "propint/errors.hpp"

namespace propint {

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, Vector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  Matrix out(a.size(), Vector(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (b[k][j] != 0) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon(Matrix& m, std::size_t columns) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t j = col; j < columns; ++j) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(Matrix m) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  return echelon(m, cols).size();
}

std::vector<Vector> nullspace(Matrix m, std::size_t columns) {
  auto pivots = echelon(m, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> out;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    Vector v(columns, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

Matrix stable_power(Matrix b) {
  std::size_t r = rank(b);
  while (r > 0) {
    Matrix sq = multiply(b, b);
    const std::size_t r2 = rank(sq);
    if (r2 == r) break;
    b = std::move(sq);
    r = r2;
  }
  return b;
}

// ---------------------------------------------------------------- univariate

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const UPoly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] != 0) return static_cast<int>(i);
  return -1;
}

Rational evaluate(const UPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  const int db = degree(b);
  if (db < 0) throw MathError("division by the zero polynomial");
  UPoly r = a;
  trim(r);
  UPoly q(std::max<int>(0, degree(r) - db + 1), 0);
  while (degree(r) >= db) {
    const int dr = degree(r);
    const Rational c = r[dr] / b[db];
    q[dr - db] = c;
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= c * b[i];
    trim(r);
  }
  trim(q);
  return {q, r};
}

UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  Integer k;
  mpz_fdiv_q(k.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(k) == lo) return Rational(k);
  if (Rational(k + 1) <= hi) return Rational(k + 1);
  Rational inner = simplest_between(1 / (hi - k), 1 / (lo - k));
  return Rational(k) + 1 / inner;
}

namespace {

int sign_changes(const std::vector<UPoly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    const int s = sgn(evaluate(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

std::vector<Rational> rational_roots(const UPoly& input) {
  UPoly p = input;
  trim(p);
  if (degree(p) <= 0) return {};
  // Square-free part with integer coefficients.
  UPoly g = gcd(p, derivative(p));
  if (degree(g) > 0) p = divmod(p, g).first;
  Integer den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  for (auto& c : p) c *= den;
  Integer content = 0;
  for (const auto& c : p) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num_mpz_t());
  for (auto& c : p) c /= content;

  const Integer lc = abs(p.back().get_num());
  // Two distinct rationals with denominators dividing lc are at least 1/lc^2 apart.
  const Rational width = Rational(1) / (2 * lc * lc);
  Rational bound = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, Rational(abs(p[i] / p.back())));
  bound += 1;

  std::vector<UPoly> chain{p, derivative(p)};
  while (degree(chain.back()) > 0) {
    UPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }

  std::vector<Rational> roots;
  auto check = [&](const Rational& x) {
    if (evaluate(p, x) == 0) roots.push_back(x);
  };
  // Intervals are half-open (lo, hi].
  std::vector<std::pair<Rational, Rational>> work{{-bound, bound}};
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    const int count = sign_changes(chain, lo) - sign_changes(chain, hi);
    if (count == 0) continue;
    if (count == 1 && hi - lo < width) {
      check(hi);
      Rational c = simplest_between(lo, hi);
      if (c != hi && c > lo) check(c);
      continue;
    }
    Rational mid = (lo + hi) / 2;
    work.push_back({mid, hi});
    work.push_back({lo, mid});
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace propint
