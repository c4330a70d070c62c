// genreps: rebuilds the matrix-representation fixtures (*.mat) and their
// companion permutation-group fixtures (*.pg) from first principles.
//
// Sources of the groups:
//   2O, 2I        unit quaternions mapped into SU(2),
//   Sigma(216phi) the Hessian generators (cyclic shift, scaled Fourier
//                 matrix, diagonal of ninth roots),
//   Sigma(72phi)  the derived subgroup of Sigma(216phi),
//   Delta(6n^2)   torus diag(z, 1, 1/z) with a cyclic shift and a signed
//                 transposition, for n = 6 and n = 9,
//   Sigma(360phi) icosahedral rotations extended by an intertwiner solved
//                 from a twisted outer automorphism of a tetrahedral
//                 subgroup.
//
// Everything is computed with exact cyclotomic arithmetic, closed by
// breadth-first products, and checked (unitarity, group order, expected
// structure) before any file is written.  The program is deterministic, so
// regenerated fixtures are byte-identical.
//
// Usage: genreps [output-dir]     (default: fixtures)

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "twirl/ctbl_io.hpp"
#include "twirl/cyclotomic.hpp"
#include "twirl/errors.hpp"
#include "twirl/permgroup.hpp"
#include "twirl/rational.hpp"

using twirl::Cyclotomic;
using twirl::Integer;
using twirl::Rational;

namespace {

using Mat = std::vector<std::vector<Cyclotomic>>;

Mat identity(int d) {
  Mat m(d, std::vector<Cyclotomic>(d));
  for (int i = 0; i < d; ++i) m[i][i] = Cyclotomic(1);
  return m;
}

Mat mul(const Mat& a, const Mat& b) {
  int n = static_cast<int>(a.size());
  Mat c(n, std::vector<Cyclotomic>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (b[k][j].is_zero()) continue;
        c[i][j] += a[i][k] * b[k][j];
      }
    }
  return c;
}

Mat dagger(const Mat& a) {
  int n = static_cast<int>(a.size());
  Mat c(n, std::vector<Cyclotomic>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[i][j] = a[j][i].conj();
  return c;
}

Mat scale(const Cyclotomic& s, const Mat& a) {
  Mat c = a;
  for (auto& row : c)
    for (auto& v : row) v = s * v;
  return c;
}

bool mat_eq(const Mat& a, const Mat& b) { return a == b; }

bool is_identity(const Mat& a) {
  int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j ? a[i][j] != Cyclotomic(1) : !a[i][j].is_zero()) return false;
    }
  return true;
}

bool is_unitary(const Mat& a) { return is_identity(mul(a, dagger(a))); }

int element_order(const Mat& a, int limit = 256) {
  Mat p = a;
  for (int k = 1; k <= limit; ++k) {
    if (is_identity(p)) return k;
    p = mul(p, a);
  }
  return -1;
}

Cyclotomic det3(const Mat& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

struct MatLess {
  bool operator()(const Mat& a, const Mat& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) {
        int c = Cyclotomic::compare(a[i][j], b[i][j]);
        if (c != 0) return c < 0;
      }
    return false;
  }
};

// Breadth-first closure under exact products.  Returns all elements in a
// deterministic order (identity first); throws when the cap is hit.
struct Expansion {
  std::vector<Mat> els;
  std::map<Mat, int, MatLess> index;

  bool contains(const Mat& m) const { return index.count(m) != 0; }
};

Expansion close(const std::vector<Mat>& gens, int cap) {
  Expansion e;
  int d = static_cast<int>(gens.at(0).size());
  Mat id = identity(d);
  e.els.push_back(id);
  e.index.emplace(id, 0);
  for (std::size_t qi = 0; qi < e.els.size(); ++qi) {
    for (const Mat& g : gens) {
      Mat p = mul(e.els[qi], g);
      if (e.index.emplace(p, static_cast<int>(e.els.size())).second) {
        e.els.push_back(std::move(p));
        if (static_cast<int>(e.els.size()) > cap)
          throw twirl::CapExceeded("closure exceeded cap");
      }
    }
  }
  return e;
}

// Derived subgroup: normal closure of the generator commutators.
Expansion derived_subgroup(const std::vector<Mat>& group_gens, int cap) {
  std::vector<Mat> seeds;
  for (const Mat& a : group_gens)
    for (const Mat& b : group_gens) {
      Mat c = mul(mul(a, b), dagger(mul(b, a)));  // a b a^-1 b^-1 for unitary a, b
      if (!is_identity(c)) seeds.push_back(c);
    }
  Expansion e;
  int d = static_cast<int>(group_gens.at(0).size());
  Mat id = identity(d);
  e.els.push_back(id);
  e.index.emplace(id, 0);
  std::vector<Mat> dgens = seeds;
  auto add = [&](Mat m) -> bool {
    if (e.index.emplace(m, static_cast<int>(e.els.size())).second) {
      e.els.push_back(std::move(m));
      if (static_cast<int>(e.els.size()) > cap)
        throw twirl::CapExceeded("derived subgroup exceeded cap");
      return true;
    }
    return false;
  };
  for (const Mat& s : seeds) add(s);
  for (std::size_t qi = 0; qi < e.els.size(); ++qi) {
    // Close under multiplication by the current generating set.
    for (std::size_t gi = 0; gi < dgens.size(); ++gi) add(mul(e.els[qi], dgens[gi]));
    // Close under conjugation by the whole group's generators; conjugates
    // that are new also extend the generating set (normal closure).
    for (const Mat& g : group_gens) {
      Mat c = mul(mul(dagger(g), e.els[qi]), g);
      if (!e.contains(c)) {
        dgens.push_back(c);
        add(std::move(c));
        qi = static_cast<std::size_t>(-1);  // restart sweep with the larger set
        break;
      }
    }
  }
  return e;
}

// Small generating set for an expansion: tries pairs of elements in
// deterministic order, then extends the best pair to triples.
std::vector<Mat> find_generators(const Expansion& e) {
  int want = static_cast<int>(e.els.size());
  std::size_t lim = std::min<std::size_t>(e.els.size(), 72);
  std::vector<Mat> best;
  int best_size = 0;
  for (std::size_t i = 1; i < lim; ++i)
    for (std::size_t j = i + 1; j < lim; ++j) {
      int got = static_cast<int>(close({e.els[i], e.els[j]}, want).els.size());
      if (got == want) return {e.els[i], e.els[j]};
      if (got > best_size) {
        best_size = got;
        best = {e.els[i], e.els[j]};
      }
    }
  for (std::size_t k = 1; k < e.els.size(); ++k) {
    std::vector<Mat> cand = best;
    cand.push_back(e.els[k]);
    if (static_cast<int>(close(cand, want).els.size()) == want) return cand;
  }
  throw twirl::Error("no small generating set found");
}

// ---------------------------------------------------------------------------
// Field helpers.

Cyclotomic half() { return Cyclotomic(Rational(1, 2)); }

Cyclotomic sqrt5() {
  using C = Cyclotomic;
  return C::zeta(5, 1) - C::zeta(5, 2) - C::zeta(5, 3) + C::zeta(5, 4);
}

Cyclotomic golden() {  // (1 + sqrt 5) / 2 = -zeta5^2 - zeta5^3
  return -(Cyclotomic::zeta(5, 2) + Cyclotomic::zeta(5, 3));
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  Integer num = r.get_num(), den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  return Rational(sqrt(num), sqrt(den));
}

// Square root of a totally real element a + b*sqrt5 of Q(sqrt 5), if one
// exists in Q(sqrt 5) itself.
std::optional<Cyclotomic> sqrt_in_q5(const Cyclotomic& r) {
  Cyclotomic sigma = r.order() == 1 ? r : r.galois(2);  // sqrt5 -> -sqrt5
  Cyclotomic apart = (r + sigma) * half();
  Cyclotomic bpart = (r - sigma) * half() * sqrt5() * Cyclotomic(Rational(1, 5));
  if (!apart.is_rational() || !bpart.is_rational()) return std::nullopt;
  Rational a = *apart.rational_value(), b = *bpart.rational_value();
  auto check = [&](const Cyclotomic& c) -> std::optional<Cyclotomic> {
    if (c * c == r) return c;
    return std::nullopt;
  };
  if (b == 0) {
    if (auto x = rational_sqrt(a)) return check(Cyclotomic(*x));
    if (auto x = rational_sqrt(a / 5)) return check(Cyclotomic(*x) * sqrt5());
    return std::nullopt;
  }
  auto disc = rational_sqrt(a * a - 5 * b * b);
  if (!disc) return std::nullopt;
  for (int sign : {+1, -1}) {
    Rational z = (a + (sign > 0 ? *disc : -*disc)) / 2;
    auto x = rational_sqrt(z);
    if (!x || *x == 0) continue;
    Rational y = b / (2 * (*x));
    if (auto c = check(Cyclotomic(*x) + Cyclotomic(y) * sqrt5())) return c;
  }
  return std::nullopt;
}

// Nullspace basis of an r x c matrix over the cyclotomic field.
std::vector<std::vector<Cyclotomic>> nullspace(std::vector<std::vector<Cyclotomic>> m,
                                               int cols) {
  int rows = static_cast<int>(m.size());
  std::vector<int> pivot_of_col(cols, -1);
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (!m[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    Cyclotomic inv = m[rank][c].inverse();
    for (int j = c; j < cols; ++j) m[rank][j] = inv * m[rank][j];
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      Cyclotomic f = m[r][c];
      for (int j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    pivot_of_col[c] = rank;
    ++rank;
  }
  std::vector<std::vector<Cyclotomic>> basis;
  for (int c = 0; c < cols; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<Cyclotomic> v(cols);
    v[c] = Cyclotomic(1);
    for (int cc = 0; cc < cols; ++cc)
      if (pivot_of_col[cc] >= 0) v[cc] = -m[pivot_of_col[cc]][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Specific groups.

// Quaternion a + b i + c j + d k as an element of SU(2).
Mat su2(const Cyclotomic& a, const Cyclotomic& b, const Cyclotomic& c,
        const Cyclotomic& d) {
  Cyclotomic i = Cyclotomic::zeta(4, 1);
  return {{a + b * i, c + d * i}, {-c + d * i, a - b * i}};
}

std::vector<Mat> binary_octahedral_gens() {
  // (1 + i)/sqrt2 and (1 + i + j + k)/2.
  Cyclotomic r = (Cyclotomic::zeta(8, 1) - Cyclotomic::zeta(8, 3)) * half();  // 1/sqrt2
  Cyclotomic h = half(), z;
  return {su2(r, r, z, z), su2(h, h, h, h)};
}

std::vector<Mat> binary_icosahedral_gens() {
  // (1 + i + j + k)/2 and (phi + i/phi + j)/2.
  Cyclotomic h = half(), z;
  Cyclotomic phi = golden();
  Cyclotomic phi_inv = phi - Cyclotomic(1);
  return {su2(h, h, h, h), su2(phi * half(), phi_inv * half(), h, z)};
}

std::vector<Mat> hessian_gens() {
  using C = Cyclotomic;
  C w = C::zeta(3, 1), w2 = C::zeta(3, 2);
  C zero, one(1);
  Mat e = {{zero, one, zero}, {zero, zero, one}, {one, zero, zero}};
  // (1/sqrt(-3)) times the character table of Z3; 1/sqrt(-3) = (w^2 - w)/3.
  C s = (w2 - w) * C(Rational(1, 3));
  Mat v = {{s, s, s}, {s, s * w, s * w2}, {s, s * w2, s * w}};
  Mat u = {{C::zeta(9, 2), zero, zero}, {zero, C::zeta(9, 2), zero}, {zero, zero, C::zeta(9, 5)}};
  return {e, v, u};
}

std::vector<Mat> delta_gens(int n) {
  using C = Cyclotomic;
  C zero, one(1);
  Mat e = {{zero, one, zero}, {zero, zero, one}, {one, zero, zero}};
  Mat b = {{zero, zero, -one}, {zero, -one, zero}, {-one, zero, zero}};
  Mat t = {{C::zeta(n, 1), zero, zero}, {zero, one, zero}, {zero, zero, C::zeta(n, n - 1)}};
  return {e, b, t};
}

// Exact icosahedral rotation group: coordinate cycle plus an order-5
// rotation about the axis through vertex (0, 1, phi), solved from vertex
// images.
std::vector<Mat> icosahedral_gens() {
  using C = Cyclotomic;
  C zero, one(1);
  C phi = golden();
  Mat r3 = {{zero, zero, one}, {one, zero, zero}, {zero, one, zero}};

  auto col = [](const Cyclotomic& x, const Cyclotomic& y, const Cyclotomic& z) {
    return std::vector<Cyclotomic>{x, y, z};
  };
  // Frame columns: the fixed vertex, then two consecutive neighbors in the
  // cycle (0,-1,phi) -> (-phi,0,1) -> (-1,phi,0) around it; the rotation
  // advances the cycle by one step.
  std::vector<std::vector<Cyclotomic>> from = {col(zero, one, phi), col(zero, -one, phi),
                                               col(-phi, zero, one)};
  std::vector<std::vector<Cyclotomic>> to = {col(zero, one, phi), col(-phi, zero, one),
                                             col(-one, phi, zero)};
  auto cols_to_mat = [](const std::vector<std::vector<Cyclotomic>>& cs) {
    Mat m(3, std::vector<Cyclotomic>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = cs[j][i];
    return m;
  };
  Mat a = cols_to_mat(from), b = cols_to_mat(to);
  // Invert a by solving; 3x3 over the field via adjugate-free elimination.
  // Build [a | I] and reduce.
  std::vector<std::vector<Cyclotomic>> aug(3, std::vector<Cyclotomic>(6));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) aug[i][j] = a[i][j];
    aug[i][3 + i] = one;
  }
  for (int c = 0; c < 3; ++c) {
    int piv = -1;
    for (int r = c; r < 3; ++r)
      if (!aug[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw twirl::Error("icosahedral frame is singular");
    std::swap(aug[c], aug[piv]);
    Cyclotomic inv = aug[c][c].inverse();
    for (int j = 0; j < 6; ++j) aug[c][j] = inv * aug[c][j];
    for (int r = 0; r < 3; ++r) {
      if (r == c || aug[r][c].is_zero()) continue;
      Cyclotomic f = aug[r][c];
      for (int j = 0; j < 6; ++j) aug[r][j] -= f * aug[c][j];
    }
  }
  Mat ainv(3, std::vector<Cyclotomic>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ainv[i][j] = aug[i][3 + j];
  Mat r5 = mul(b, ainv);

  if (!is_unitary(r5) || element_order(r5) != 5)
    throw twirl::Error("icosahedral order-5 rotation failed its checks");
  return {r3, r5};
}

// The order-12 tetrahedral subgroup of an icosahedral expansion, as element
// indices: a commuting pair of involutions plus an order-3 element.
std::vector<Mat> tetrahedral_subgroup(const Expansion& a5) {
  std::vector<int> invol, order3;
  for (std::size_t i = 1; i < a5.els.size(); ++i) {
    int o = element_order(a5.els[i]);
    if (o == 2) invol.push_back(static_cast<int>(i));
    if (o == 3) order3.push_back(static_cast<int>(i));
  }
  for (int xi : invol)
    for (int yi : invol) {
      if (yi <= xi) continue;
      const Mat &x = a5.els[xi], &y = a5.els[yi];
      if (!mat_eq(mul(x, y), mul(y, x))) continue;
      for (int ti : order3) {
        std::vector<Mat> cand = {x, y, a5.els[ti]};
        Expansion sub = close(cand, 80);
        if (sub.els.size() == 12) return sub.els;
      }
    }
  throw twirl::Error("no tetrahedral subgroup found");
}

// All automorphisms of a 12-element tetrahedral group, each returned as an
// index permutation of its element list.
std::vector<std::vector<int>> tetra_automorphisms(const std::vector<Mat>& a4) {
  int n = static_cast<int>(a4.size());
  std::map<Mat, int, MatLess> idx;
  for (int i = 0; i < n; ++i) idx.emplace(a4[i], i);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i][j] = idx.at(mul(a4[i], a4[j]));

  int xg = -1, tg = -1;  // generator indices: an involution and an order-3
  std::vector<int> invol, order3;
  for (int i = 1; i < n; ++i) {
    int o = element_order(a4[i]);
    if (o == 2) invol.push_back(i);
    if (o == 3) order3.push_back(i);
  }
  xg = invol.at(0);
  tg = order3.at(0);

  std::vector<std::vector<int>> autos;
  for (int xi : invol)
    for (int ti : order3) {
      std::vector<int> f(n, -1);
      f[0] = 0;
      f[xg] = xi;
      f[tg] = ti;
      // Extend multiplicatively over words in the generators.
      std::vector<int> work = {0, xg, tg};
      bool ok = true;
      for (std::size_t w = 0; w < work.size() && ok; ++w) {
        for (int g : {xg, tg}) {
          int u = table[work[w]][g];
          int fu = table[f[work[w]]][f[g]];
          if (f[u] < 0) {
            f[u] = fu;
            work.push_back(u);
          } else if (f[u] != fu) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
      std::vector<bool> hit(n, false);
      for (int v : f) {
        if (v < 0) {
          ok = false;
          break;
        }
        if (hit[v]) {
          ok = false;
          break;
        }
        hit[v] = true;
      }
      if (ok) autos.push_back(std::move(f));
    }
  return autos;
}

bool automorphism_is_inner(const std::vector<Mat>& a4, const std::vector<int>& f) {
  int n = static_cast<int>(a4.size());
  for (int a = 0; a < n; ++a) {
    bool all = true;
    for (int u = 0; u < n && all; ++u)
      all = mat_eq(a4[f[u]], mul(mul(a4[a], a4[u]), dagger(a4[a])));
    if (all) return true;
  }
  return false;
}

// The ternary icosahedral extension: icosahedral rotations plus a solved
// intertwiner implementing an outer tetrahedral automorphism twisted by a
// cubic character.  Returns generators whose closure has order 1080.
std::vector<Mat> ternary_icosahedral_gens() {
  using C = Cyclotomic;
  std::vector<Mat> a5g = icosahedral_gens();
  Expansion a5 = close(a5g, 100);
  if (a5.els.size() != 60) throw twirl::Error("icosahedral closure is not 60");

  std::vector<Mat> a4 = tetrahedral_subgroup(a5);
  auto autos = tetra_automorphisms(a4);
  if (autos.size() != 24) throw twirl::Error("tetrahedral automorphism count mismatch");

  int xg = -1, tg = -1;
  for (int i = 1; i < static_cast<int>(a4.size()); ++i) {
    int o = element_order(a4[i]);
    if (xg < 0 && o == 2) xg = i;
    if (tg < 0 && o == 3) tg = i;
  }

  C omega = C::zeta(3, 1);
  for (const auto& f : autos) {
    if (automorphism_is_inner(a4, f)) continue;
    for (int chi_pow : {1, 2}) {
      C chi_t = C::zeta(3, chi_pow);
      // Solve W * rho(h) = chi(h) * rho(f(h)) * W for h in {x, t};
      // chi is trivial on involutions.
      std::vector<std::vector<Cyclotomic>> sys;
      auto add_equations = [&](const Mat& h, const Mat& hi, const C& chi_h) {
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            std::vector<Cyclotomic> row(9);
            for (int a = 0; a < 3; ++a)
              for (int b = 0; b < 3; ++b) {
                Cyclotomic coef;
                if (a == i) coef += h[b][j];
                if (b == j) coef -= chi_h * hi[i][a];
                if (!coef.is_zero()) row[a * 3 + b] = coef;
              }
            sys.push_back(std::move(row));
          }
      };
      add_equations(a4[xg], a4[f[xg]], C(1));
      add_equations(a4[tg], a4[f[tg]], chi_t);
      auto basis = nullspace(sys, 9);
      if (basis.size() != 1) continue;
      Mat w(3, std::vector<Cyclotomic>(3));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) w[i][j] = basis[0][i * 3 + j];

      // Normalize to a unitary matrix: W^H W is a positive scalar r.
      Mat gram = mul(dagger(w), w);
      Cyclotomic r = gram[0][0];
      bool scalar = true;
      for (int i = 0; i < 3 && scalar; ++i)
        for (int j = 0; j < 3 && scalar; ++j)
          scalar = (i == j) ? gram[i][j] == r : gram[i][j].is_zero();
      if (!scalar) continue;
      auto c = sqrt_in_q5(r);
      if (!c) continue;
      Mat w0 = scale(c->inverse(), w);
      if (!is_unitary(w0)) continue;

      // Fix the determinant to 1 with a root-of-unity scalar when possible.
      Cyclotomic d = det3(w0);
      Mat w1 = w0;
      if (d != C(1)) {
        for (int j = 0; j < 90; ++j) {
          C s = C::zeta(90, j);
          if (s * s * s * d == C(1)) {
            w1 = scale(s, w0);
            break;
          }
        }
      }

      int wo = element_order(w1, 40);
      if (wo < 0) continue;
      try {
        std::vector<Mat> gens = {a5g[0], a5g[1], w1};
        Expansion g = close(gens, 4000);
        if (g.els.size() == 1080) {
          // The closure must contain the central scalar omega * I.
          Mat zc = scale(omega, identity(3));
          if (!g.contains(zc)) continue;
          return gens;
        }
      } catch (const twirl::CapExceeded&) {
      }
    }
  }
  throw twirl::Error("no intertwiner produced a closure of order 1080");
}

// ---------------------------------------------------------------------------
// Output.

twirl::MatRep make_rep(const std::string& name, const std::vector<Mat>& gens,
                       const Expansion& e) {
  twirl::MatRep rep;
  rep.name = name;
  rep.dim = static_cast<int>(gens.at(0).size());
  rep.order = Integer(static_cast<long>(e.els.size()));
  for (const Mat& g : gens) rep.generators.push_back(g);
  return rep;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw twirl::Error("cannot write " + path);
  out << text;
}

twirl::PermGroup regular_action(const Expansion& e, const std::vector<Mat>& gens,
                                const std::string& name) {
  int n = static_cast<int>(e.els.size());
  std::vector<twirl::Permutation> perms;
  for (const Mat& g : gens) {
    std::vector<std::uint16_t> img(n);
    for (int i = 0; i < n; ++i)
      img[i] = static_cast<std::uint16_t>(e.index.at(mul(g, e.els[i])));
    perms.emplace_back(std::move(img));
  }
  return twirl::PermGroup(n, std::move(perms), name);
}

struct Job {
  std::string slug;
  std::string name;
  std::vector<Mat> gens;
  int expect = 0;
  bool with_perm = false;
};

}  // namespace

int main(int argc, char** argv) {
  std::string outdir = argc > 1 ? argv[1] : "fixtures";
  try {
    std::vector<Job> jobs;
    jobs.push_back({"2o", "2O", binary_octahedral_gens(), 48, false});
    jobs.push_back({"2i", "2I", binary_icosahedral_gens(), 120, false});

    std::vector<Mat> hess = hessian_gens();
    jobs.push_back({"sigma216phi", "Sigma(216phi)", hess, 648, true});

    Expansion hessian = close(hess, 1000);
    Expansion derived = derived_subgroup(hess, 1000);
    std::cout << "hessian order " << hessian.els.size() << ", derived order "
              << derived.els.size() << "\n";
    if (derived.els.size() != 216)
      throw twirl::Error("derived subgroup of the Hessian group is not 216");
    jobs.push_back({"sigma72phi", "Sigma(72phi)", find_generators(derived), 216, true});

    jobs.push_back({"delta66", "Delta(6x6^2)", delta_gens(6), 216, true});
    jobs.push_back({"delta99", "Delta(6x9^2)", delta_gens(9), 486, true});
    jobs.push_back({"sigma360phi", "Sigma(360phi)", ternary_icosahedral_gens(), 1080, false});

    for (const Job& job : jobs) {
      for (const Mat& g : job.gens)
        if (!is_unitary(g)) throw twirl::Error(job.slug + ": generator is not unitary");
      Expansion e = close(job.gens, job.expect + 1);
      if (static_cast<int>(e.els.size()) != job.expect)
        throw twirl::Error(job.slug + ": closure order " + std::to_string(e.els.size()) +
                           ", expected " + std::to_string(job.expect));
      twirl::MatRep rep = make_rep(job.name, job.gens, e);
      std::string text = twirl::write_matrep(rep);
      twirl::MatRep back = twirl::parse_matrep(text);
      if (back.generators != rep.generators || back.dim != rep.dim ||
          back.order != rep.order)
        throw twirl::Error(job.slug + ": matrix file does not round-trip");
      write_file(outdir + "/" + job.slug + ".mat", text);
      std::cout << job.slug << ".mat  dim " << rep.dim << "  order " << e.els.size();
      if (job.with_perm) {
        twirl::PermGroup pg = regular_action(e, job.gens, job.name);
        if (pg.order() != Integer(job.expect))
          throw twirl::Error(job.slug + ": regular action order mismatch");
        write_file(outdir + "/" + job.slug + ".pg", twirl::write_permgroup(pg));
        std::cout << "  (+ regular action on " << pg.degree() << " points)";
      }
      std::cout << "\n";
    }
    std::cout << "all fixtures written to " << outdir << "/\n";
  } catch (const std::exception& ex) {
    std::cerr << "genreps: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
