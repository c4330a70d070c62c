#include "twirl/chartab.hpp"

#include <algorithm>
#include <numeric>

#include "twirl/errors.hpp"

namespace twirl {

namespace {

using std::int64_t;

int64_t mulmod(int64_t a, int64_t b, int64_t p) {
  return static_cast<int64_t>(static_cast<__int128>(a) * b % p);
}

int64_t powmod(int64_t a, int64_t e, int64_t p) {
  int64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

int64_t invmod(int64_t a, int64_t p) { return powmod(((a % p) + p) % p, p - 2, p); }

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<int64_t> prime_factors(int64_t n) {
  std::vector<int64_t> ps;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

int64_t primitive_root(int64_t p) {
  std::vector<int64_t> qs = prime_factors(p - 1);
  for (int64_t z = 2; z < p; ++z) {
    bool ok = true;
    for (int64_t q : qs) {
      if (powmod(z, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return z;
  }
  throw InternalSplitFailure("no primitive root found");
}

using Vec = std::vector<int64_t>;  // vector over F_p
using Mat = std::vector<Vec>;      // row-major matrix over F_p

// Reduced row echelon form in place; returns pivot column list.
std::vector<int> rref(Mat& m, int64_t p) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i) {
      if (m[i][c] != 0) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(m[r], m[sel]);
    int64_t f = invmod(m[r][c], p);
    for (int j = 0; j < cols; ++j) m[r][j] = mulmod(m[r][j], f, p);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      int64_t g = m[i][c];
      for (int j = 0; j < cols; ++j) {
        m[i][j] = (m[i][j] - mulmod(g, m[r][j], p) % p + p) % p;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(pivots.size());
  return pivots;
}

// Kernel basis of a square matrix mod p (vectors as rows).
Mat kernel_basis(Mat m, int64_t p) {
  int n = static_cast<int>(m.size());
  std::vector<int> pivots = rref(m, p);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  Mat basis;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    Vec v(n, 0);
    v[c] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      v[pivots[r]] = (p - m[r][c]) % p;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Characteristic polynomial det(xI - M) mod p via Hessenberg reduction;
// returns coefficients lowest-first, monic of degree n.
Vec charpoly(Mat h, int64_t p) {
  int n = static_cast<int>(h.size());
  // Similarity-reduce to upper Hessenberg.
  for (int c = 0; c + 2 < n; ++c) {
    int sel = -1;
    for (int r = c + 1; r < n; ++r) {
      if (h[r][c] != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != c + 1) {
      std::swap(h[sel], h[c + 1]);
      for (int r = 0; r < n; ++r) std::swap(h[r][sel], h[r][c + 1]);
    }
    int64_t d = invmod(h[c + 1][c], p);
    for (int r = c + 2; r < n; ++r) {
      if (h[r][c] == 0) continue;
      int64_t f = mulmod(h[r][c], d, p);
      for (int j = 0; j < n; ++j) {
        h[r][j] = (h[r][j] - mulmod(f, h[c + 1][j], p) % p + p) % p;
      }
      for (int i = 0; i < n; ++i) {
        h[i][c + 1] = (h[i][c + 1] + mulmod(f, h[i][r], p)) % p;
      }
    }
  }
  // p_k = charpoly of the leading k x k block.
  std::vector<Vec> polys(n + 1);
  polys[0] = {1};
  for (int k = 1; k <= n; ++k) {
    Vec pk(k + 1, 0);
    // (x - h[k-1][k-1]) * p_{k-1}
    const Vec& prev = polys[k - 1];
    for (int i = 0; i < k; ++i) {
      pk[i + 1] = (pk[i + 1] + prev[i]) % p;
      pk[i] = (pk[i] - mulmod(h[k - 1][k - 1], prev[i], p) % p + p) % p;
    }
    // - sum over subdiagonal products
    int64_t prod = 1;
    for (int m = 1; m < k; ++m) {
      prod = mulmod(prod, h[k - m][k - m - 1], p);
      if (prod == 0) break;
      int64_t coeff = mulmod(h[k - 1 - m][k - 1], prod, p);
      const Vec& pm = polys[k - 1 - m];
      for (std::size_t i = 0; i < pm.size(); ++i) {
        pk[i] = (pk[i] - mulmod(coeff, pm[i], p) % p + p) % p;
      }
    }
    polys[k] = std::move(pk);
  }
  return polys[n];
}

int64_t poly_eval(const Vec& poly, int64_t x, int64_t p) {
  int64_t acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;) {
    acc = (mulmod(acc, x, p) + poly[i]) % p;
  }
  return acc;
}

struct Subspace {
  Mat basis;               // RREF rows, ambient coordinates
  std::vector<int> pivots;
};

}  // namespace

Integer CharacterTable::degree(int i) const {
  auto v = characters[i][0].nonneg_integer();
  if (!v) throw ValidationError("character degree is not a nonnegative integer");
  return *v;
}

std::vector<Integer> CharacterTable::degrees() const {
  std::vector<Integer> out;
  for (int i = 0; i < num_characters(); ++i) out.push_back(degree(i));
  return out;
}

void CharacterTable::validate() const {
  int nc = num_classes();
  if (num_characters() != nc) throw ValidationError("table is not square");
  if (static_cast<int>(element_orders.size()) != nc ||
      static_cast<int>(inverse_map.size()) != nc) {
    throw ValidationError("class metadata sizes disagree");
  }
  Integer total = 0;
  for (int64_t s : class_sizes) total += static_cast<long>(s);
  if (total != order) throw ValidationError("class sizes do not sum to the group order");
  for (const auto& row : characters) {
    if (static_cast<int>(row.size()) != nc) throw ValidationError("ragged character row");
    for (const Cyclotomic& v : row) {
      if (!v.is_algebraic_integer()) {
        throw ValidationError("character value is not an algebraic integer");
      }
      if (v.order() > 1 && exponent % v.order() != 0) {
        throw ValidationError("character value lies outside Q(zeta_exponent)");
      }
    }
  }
  // Degrees: positive integers, squares summing to the order, each dividing it.
  Integer sq = 0;
  for (int i = 0; i < nc; ++i) {
    Integer d = degree(i);
    if (d == 0) throw ValidationError("zero character degree");
    if (!mpz_divisible_p(order.get_mpz_t(), d.get_mpz_t())) {
      throw ValidationError("character degree does not divide the group order");
    }
    sq += d * d;
  }
  if (sq != order) throw ValidationError("sum of squared degrees misses the group order");
  // Trivial character.
  bool have_trivial = false;
  for (const auto& row : characters) {
    bool triv = true;
    for (const Cyclotomic& v : row) triv = triv && v == Cyclotomic(1);
    have_trivial = have_trivial || triv;
  }
  if (!have_trivial) throw ValidationError("trivial character missing");
  // First orthogonality, exactly: sum_c |C_c| chi_i(c) chi_j(inv c) = delta * order.
  Cyclotomic ord_c{Rational(order)};
  for (int i = 0; i < nc; ++i) {
    for (int j = i; j < nc; ++j) {
      Cyclotomic acc;
      for (int c = 0; c < nc; ++c) {
        acc += Cyclotomic(Rational(static_cast<long>(class_sizes[c]))) * characters[i][c] *
               characters[j][inverse_map[c]];
      }
      Cyclotomic want = (i == j) ? ord_c : Cyclotomic(0);
      if (acc != want) {
        throw ValidationError("row orthogonality violated at rows (" + std::to_string(i + 1) +
                              "," + std::to_string(j + 1) + ")");
      }
    }
  }
  // Second orthogonality at column pairs.
  for (int c = 0; c < nc; ++c) {
    for (int c2 = c; c2 < nc; ++c2) {
      Cyclotomic acc;
      for (int i = 0; i < nc; ++i) {
        acc += characters[i][c] * characters[i][inverse_map[c2]];
      }
      Cyclotomic want;
      if (c == c2) {
        Integer cz = order / static_cast<long>(class_sizes[c]);
        want = Cyclotomic(Rational(cz));
      }
      if (acc != want) {
        throw ValidationError("column orthogonality violated at columns (" +
                              std::to_string(c + 1) + "," + std::to_string(c2 + 1) + ")");
      }
    }
  }
}

std::vector<ClassMatrix> class_matrices(const PermGroup& g) {
  const ClassData& cd = g.classes();
  const auto& els = g.elements();
  const int nc = cd.num_classes();
  std::vector<ClassMatrix> out(nc);
  for (int i = 0; i < nc; ++i) {
    out[i].index = i;
    out[i].entries.assign(nc, std::vector<int64_t>(nc, 0));
  }
  for (const Permutation& x : els) {
    int i = g.class_index(x);
    Permutation xi = x.inverse();
    for (int k = 0; k < nc; ++k) {
      int j = g.class_index(xi * cd.class_reps[k]);
      ++out[i].entries[j][k];
    }
  }
  return out;
}

int64_t dixon_prime(const Integer& order, std::int64_t exponent) {
  Integer four_n = order * 4;
  for (int64_t c = exponent + 1;; c += exponent) {
    if (!is_prime(c)) continue;
    if (Integer(static_cast<long>(c)) * static_cast<long>(c) > four_n) return c;
  }
}

CharacterTable compute_table(const PermGroup& g) {
  const ClassData& cd = g.classes();
  const int nc = cd.num_classes();
  const Integer& order = g.order();
  const std::vector<ClassMatrix> mats = class_matrices(g);
  const int64_t p = dixon_prime(order, cd.exponent);

  // Class matrices mod p.
  std::vector<Mat> B(nc, Mat(nc, Vec(nc, 0)));
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < nc; ++j) {
      for (int k = 0; k < nc; ++k) B[i][j][k] = mats[i].entries[j][k] % p;
    }
  }

  // Split F_p^nc into common eigenspaces of the class matrices.  The target
  // vectors w_i(c) = |C_c| chi_i(c) / chi_i(1) are exactly the common
  // eigenvectors, each spanning its own 1-dimensional intersection.
  std::vector<Subspace> spaces;
  {
    Subspace full;
    full.basis = Mat(nc, Vec(nc, 0));
    for (int i = 0; i < nc; ++i) full.basis[i][i] = 1;
    full.pivots.resize(nc);
    std::iota(full.pivots.begin(), full.pivots.end(), 0);
    spaces.push_back(std::move(full));
  }
  for (int mi = 1; mi < nc; ++mi) {
    bool all_split = true;
    for (const Subspace& s : spaces) all_split = all_split && s.basis.size() == 1;
    if (all_split) break;
    std::vector<Subspace> next;
    for (Subspace& s : spaces) {
      const int d = static_cast<int>(s.basis.size());
      if (d == 1) {
        next.push_back(std::move(s));
        continue;
      }
      // Restrict B[mi] to the subspace: column j = coordinates of B*v_j.
      Mat restricted(d, Vec(d, 0));
      for (int j = 0; j < d; ++j) {
        Vec bv(nc, 0);
        for (int r = 0; r < nc; ++r) {
          int64_t acc = 0;
          for (int c = 0; c < nc; ++c) acc = (acc + mulmod(B[mi][r][c], s.basis[j][c], p)) % p;
          bv[r] = acc;
        }
        for (int t = 0; t < d; ++t) restricted[t][j] = bv[s.pivots[t]];
        // Invariance check: the coordinates must reconstruct B*v_j exactly.
        for (int r = 0; r < nc; ++r) {
          int64_t acc = 0;
          for (int t = 0; t < d; ++t) acc = (acc + mulmod(restricted[t][j], s.basis[t][r], p)) % p;
          if (acc != bv[r]) {
            throw InternalSplitFailure("class matrix does not preserve a split subspace");
          }
        }
      }
      Vec cp = charpoly(restricted, p);
      int split_total = 0;
      for (int64_t lam = 0; lam < p; ++lam) {
        if (poly_eval(cp, lam, p) != 0) continue;
        Mat shifted = restricted;
        for (int t = 0; t < d; ++t) shifted[t][t] = (shifted[t][t] - lam % p + p) % p;
        Mat ker = kernel_basis(std::move(shifted), p);
        if (ker.empty()) continue;
        Subspace sub;
        sub.basis.reserve(ker.size());
        for (const Vec& coords : ker) {
          Vec ambient(nc, 0);
          for (int t = 0; t < d; ++t) {
            for (int c = 0; c < nc; ++c) {
              ambient[c] = (ambient[c] + mulmod(coords[t], s.basis[t][c], p)) % p;
            }
          }
          sub.basis.push_back(std::move(ambient));
        }
        sub.pivots = rref(sub.basis, p);
        split_total += static_cast<int>(sub.basis.size());
        next.push_back(std::move(sub));
      }
      if (split_total != d) {
        throw InternalSplitFailure("eigenspaces of a class matrix do not fill a subspace");
      }
    }
    spaces = std::move(next);
  }
  for (const Subspace& s : spaces) {
    if (s.basis.size() != 1) {
      throw InternalSplitFailure("eigenspace splitting stalled before one dimension");
    }
  }
  if (static_cast<int>(spaces.size()) != nc) {
    throw InternalSplitFailure("wrong number of common eigenvectors");
  }

  // Normalize w(identity) = 1.
  std::vector<Vec> w(nc);
  for (int i = 0; i < nc; ++i) {
    Vec v = spaces[i].basis[0];
    if (v[0] == 0) throw InternalSplitFailure("eigenvector vanishes on the identity class");
    int64_t f = invmod(v[0], p);
    for (int c = 0; c < nc; ++c) v[c] = mulmod(v[c], f, p);
    w[i] = std::move(v);
  }

  // Degrees from 1/d^2 = sum_c w(c) w(c^-1) / (|C_c| |G|) mod p.
  const int64_t order_mod = static_cast<int64_t>(mpz_fdiv_ui(order.get_mpz_t(), p));
  std::vector<int64_t> size_inv(nc);
  for (int c = 0; c < nc; ++c) size_inv[c] = invmod(cd.class_sizes[c] % p, p);
  std::vector<int64_t> degree_of(nc);
  for (int i = 0; i < nc; ++i) {
    int64_t s = 0;
    for (int c = 0; c < nc; ++c) {
      s = (s + mulmod(mulmod(w[i][c], w[i][cd.inverse_map[c]], p), size_inv[c], p)) % p;
    }
    if (s == 0) throw InternalSplitFailure("degree sum vanished mod p");
    int64_t target = mulmod(order_mod, invmod(s, p), p);
    Integer bound = sqrt(order);
    int64_t dmax = bound.get_si();
    int64_t found = 0;
    for (int64_t d = 1; d <= dmax; ++d) {
      if (mulmod(d, d, p) == target) {
        if (found) throw InternalSplitFailure("ambiguous character degree");
        found = d;
      }
    }
    if (!found) throw InternalSplitFailure("no character degree matches mod p");
    degree_of[i] = found;
  }

  // chi mod p on every class.
  std::vector<Vec> theta(nc, Vec(nc, 0));
  for (int i = 0; i < nc; ++i) {
    for (int c = 0; c < nc; ++c) {
      theta[i][c] = mulmod(degree_of[i] % p, mulmod(w[i][c], size_inv[c], p), p);
    }
  }

  // Power-class tables: for class c, the class of rep^l for l = 0..o-1.
  std::vector<std::vector<int>> powclass(nc);
  for (int c = 0; c < nc; ++c) {
    int64_t o = cd.element_orders[c];
    powclass[c].resize(o);
    Permutation q = Permutation::identity(g.degree());
    for (int64_t l = 0; l < o; ++l) {
      powclass[c][l] = g.class_index(q);
      q = cd.class_reps[c] * q;
    }
  }

  // Exact lift: chi(c) = sum_j m_j zeta_o^j with eigenvalue multiplicities
  // m_j = (1/o) sum_l theta(c^l) eps^{-jl} where eps has order o mod p.
  const int64_t z = primitive_root(p);
  CharacterTable t;
  t.name = g.name();
  t.order = order;
  t.exponent = cd.exponent;
  t.class_sizes = cd.class_sizes;
  t.element_orders = cd.element_orders;
  t.power_maps = cd.power_maps;
  t.inverse_map = cd.inverse_map;
  t.characters.assign(nc, std::vector<Cyclotomic>(nc));
  for (int i = 0; i < nc; ++i) {
    for (int c = 0; c < nc; ++c) {
      const int64_t o = cd.element_orders[c];
      const int64_t eps = powmod(z, (p - 1) / o, p);
      std::vector<int64_t> eps_pow(o);
      eps_pow[0] = 1;
      for (int64_t l = 1; l < o; ++l) eps_pow[l] = mulmod(eps_pow[l - 1], eps, p);
      const int64_t o_inv = invmod(o % p, p);
      std::vector<std::pair<int64_t, Rational>> terms;
      int64_t msum = 0;
      for (int64_t j = 0; j < o; ++j) {
        int64_t acc = 0;
        for (int64_t l = 0; l < o; ++l) {
          int64_t e = (o - (j * l) % o) % o;  // eps^{-jl}
          acc = (acc + mulmod(theta[i][powclass[c][l]], eps_pow[e], p)) % p;
        }
        int64_t mj = mulmod(acc, o_inv, p);
        msum += mj;
        if (mj != 0) terms.emplace_back(j, Rational(static_cast<long>(mj)));
      }
      if (msum != degree_of[i]) {
        throw InternalSplitFailure("eigenvalue multiplicities do not sum to the degree");
      }
      t.characters[i][c] = Cyclotomic::from_terms(o, terms);
    }
  }

  std::sort(t.characters.begin(), t.characters.end(),
            [](const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b) {
              auto da = a[0].nonneg_integer(), db = b[0].nonneg_integer();
              if (*da != *db) return *da < *db;
              for (std::size_t c = 0; c < a.size(); ++c) {
                int cmp = Cyclotomic::compare(a[c], b[c]);
                if (cmp != 0) return cmp < 0;
              }
              return false;
            });

  try {
    t.validate();
  } catch (const ValidationError& e) {
    throw InternalSplitFailure(std::string("computed table failed validation: ") + e.what());
  }
  return t;
}

}  // namespace twirl
