#include "twirl/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twirl/errors.hpp"

namespace twirl {
namespace {

using std::int64_t;

// Hard ceiling on conductors: keeps factorization by trial division cheap
// and rules out int64 overflow when conductors combine (1e8 * 1e8 fits).
constexpr int64_t kMaxOrder = 100000000;

int64_t checked_lcm(int64_t a, int64_t b) {
  __int128 l = static_cast<__int128>(a) / std::gcd(a, b) * b;
  if (l > kMaxOrder) throw Error("cyclotomic conductor too large");
  return static_cast<int64_t>(l);
}

struct PrimePower {
  int64_t p;   // prime
  int64_t q;   // p^nu
  int nu;
};

std::vector<PrimePower> factorize(int64_t n) {
  std::vector<PrimePower> out;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      PrimePower pp{p, 1, 0};
      while (n % p == 0) {
        n /= p;
        pp.q *= p;
        ++pp.nu;
      }
      out.push_back(pp);
    }
  }
  if (n > 1) out.push_back({n, n, 1});
  return out;
}

int64_t mulmod(int64_t a, int64_t b, int64_t m) {
  return static_cast<int64_t>(static_cast<__int128>(a) * b % m);
}

// Inverse of a mod m; requires gcd(a, m) = 1.
int64_t modinv(int64_t a, int64_t m) {
  a = ((a % m) + m) % m;
  int64_t r0 = m, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  return ((s0 % m) + m) % m;
}

using CoeffMap = std::map<int64_t, Rational>;

void add_term(CoeffMap& m, int64_t e, const Rational& c) {
  auto it = m.find(e);
  if (it == m.end()) {
    if (c != 0) m.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

// Rewrite an exponent->coefficient map over Q(zeta_n) (n a valid stored
// order: 1, or >= 3 with n % 4 != 2) onto the Zumbroich basis.
// Basis characterization, per prime power q = p^nu dividing n, applied to the
// component c = i * (n/q)^{-1} mod q of the exponent i:
//   p = 2 : c in [0, q/2)
//   p odd: c = a*p^{nu-1} + b with |b| <= (p^{nu-1}-1)/2 and a % p != 0
// Out-of-range components are eliminated with the vanishing sums
//   1 + zeta_p + ... + zeta_p^{p-1} = 0   (p odd)
//   zeta_q^c = -zeta_q^{c - q/2}          (p = 2)
// one prime at a time; rewrites at one prime leave every other component
// unchanged, so a single pass over the primes suffices.
void to_basis(int64_t n, CoeffMap& m) {
  if (n == 1) return;
  for (const PrimePower& pp : factorize(n)) {
    const int64_t p = pp.p, q = pp.q;
    const int64_t step = n / q;  // adding `step` to i adds 1 to the q-component
    const int64_t aq = modinv(step % q, q);
    CoeffMap next;
    if (p == 2) {
      const int64_t hq = q / 2;
      for (const auto& [i, c] : m) {
        int64_t comp = mulmod(i % q, aq, q);
        if (comp < hq) {
          add_term(next, i, c);
        } else {
          add_term(next, (i + hq * step) % n, -c);
        }
      }
    } else {
      const int64_t pk1 = q / p;
      const int64_t half = (pk1 - 1) / 2;
      for (const auto& [i, c] : m) {
        int64_t comp = mulmod(i % q, aq, q);
        int64_t a = (comp + half) / pk1;
        if (a % p != 0) {
          add_term(next, i, c);
        } else {
          Rational nc = -c;
          for (int64_t t = 1; t < p; ++t) {
            add_term(next, (i + t * pk1 % q * step) % n, nc);
          }
        }
      }
    }
    m = std::move(next);
  }
}

// Reduce a basis-reduced (n, coeffs) pair to the true conductor by stripping
// one prime layer at a time until no reduction applies.
//
// An exponent i mod n is the assembly of per-prime-power components:
// zeta_n^i = prod_q zeta_q^{c_q} with c_q = (i mod q) * (n/q)^{-1} mod q and,
// conversely, i = sum_q c_q * (n/q) mod n.  Relabeling across a change of n
// must preserve components, so every reduction below extracts components
// w.r.t. the old n and reassembles w.r.t. the new one.
void reduce_conductor(int64_t& n, CoeffMap& m) {
  if (m.empty()) {
    n = 1;
    return;
  }
  bool changed = true;
  while (changed && n > 1) {
    changed = false;
    const std::vector<PrimePower> facs = factorize(n);
    for (const PrimePower& pp : facs) {
      const int64_t p = pp.p, q = pp.q;
      const int64_t aq = modinv((n / q) % q, q);
      // Assembled exponent over n2 of i's components away from q.
      auto rest_of = [&](int64_t i, int64_t n2) {
        int64_t j = 0;
        for (const PrimePower& f : facs) {
          if (f.q == q) continue;
          int64_t a = modinv((n / f.q) % f.q, f.q);
          int64_t c = mulmod(i % f.q, a, f.q);
          j = (j + mulmod(c, n2 / f.q, n2)) % n2;
        }
        return j;
      };
      if (pp.p == 2 ? pp.nu == 2 : pp.nu == 1) {
        // Candidate: drop prime p entirely (a 2-part of 4 drops straight to
        // 1: valid conductors cannot carry a 2-part of 2).
        const int64_t n2 = n / q;
        if (p == 2) {
          // Requires every 2-component to be 0.
          bool ok = true;
          for (const auto& [i, c] : m) {
            if (mulmod(i % q, aq, q) != 0) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          CoeffMap next;
          for (const auto& [i, c] : m) add_term(next, rest_of(i, n2), c);
          m = std::move(next);
          n = n2;
        } else {
          // Requires, per group of exponents agreeing away from p, all p-1
          // components 1..p-1 with a common coefficient c; each group then
          // collapses to -c (vanishing sum 1 + zeta_p + ... + zeta_p^{p-1}).
          std::map<int64_t, std::pair<Rational, int64_t>> groups;
          bool ok = true;
          for (const auto& [i, c] : m) {
            int64_t s = rest_of(i, n2);
            auto it = groups.find(s);
            if (it == groups.end()) {
              groups.emplace(s, std::make_pair(c, int64_t{1}));
            } else if (it->second.first == c) {
              ++it->second.second;
            } else {
              ok = false;
              break;
            }
          }
          if (ok) {
            for (const auto& [s, cc] : groups) {
              if (cc.second != p - 1) {
                ok = false;
                break;
              }
            }
          }
          if (!ok) continue;
          CoeffMap next;
          for (const auto& [s, cc] : groups) add_term(next, s, -cc.first);
          m = std::move(next);
          n = n2;
        }
      } else {
        // Candidate: q = p^nu -> p^{nu-1}.  Requires every p-component to be
        // divisible by p; then relabel, coefficients unchanged.
        bool ok = true;
        for (const auto& [i, c] : m) {
          if (mulmod(i % q, aq, q) % p != 0) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        const int64_t q2 = q / p;
        const int64_t n2 = (n / q) * q2;
        CoeffMap next;
        for (const auto& [i, c] : m) {
          int64_t comp = mulmod(i % q, aq, q) / p;
          int64_t j = (rest_of(i, n2) + mulmod(comp, n2 / q2, n2)) % n2;
          add_term(next, j, c);
        }
        m = std::move(next);
        n = n2;
      }
      changed = true;
      break;  // n changed; refactorize
    }
  }
  if (m.empty()) n = 1;
}

}  // namespace

Cyclotomic::Cyclotomic(const Rational& r) {
  // mpq arithmetic assumes canonical form; normalize at the API boundary.
  Rational rr = r;
  rr.canonicalize();
  if (rr != 0) coeffs_.emplace(0, rr);
}

Cyclotomic Cyclotomic::from_terms(
    int64_t order, const std::vector<std::pair<int64_t, Rational>>& terms) {
  if (order <= 0) throw Error("cyclotomic order must be positive");
  if (order > kMaxOrder) throw Error("cyclotomic conductor too large");
  Cyclotomic z;
  CoeffMap m;
  if (order % 4 == 2) {
    // zeta_{2u}^i = (-1)^i * zeta_u^{i(u+1)/2 mod u} for odd u.
    const int64_t u = order / 2;
    const int64_t h = (u + 1) / 2;
    for (const auto& [e, c] : terms) {
      int64_t i = ((e % order) + order) % order;
      Rational cc = (i % 2 == 0) ? c : Rational(-c);
      cc.canonicalize();
      add_term(m, mulmod(i % u, h, u), cc);
    }
    order = u;
  } else {
    for (const auto& [e, c] : terms) {
      Rational cc = c;
      cc.canonicalize();
      add_term(m, ((e % order) + order) % order, cc);
    }
  }
  to_basis(order, m);
  reduce_conductor(order, m);
  z.order_ = order;
  z.coeffs_ = std::move(m);
  return z;
}

Cyclotomic Cyclotomic::zeta(int64_t n, int64_t k) {
  if (n <= 0) throw Error("cyclotomic order must be positive");
  k = ((k % n) + n) % n;
  int64_t g = std::gcd(k, n);
  return from_terms(n / g, {{k / g, Rational(1)}});
}

std::optional<Rational> Cyclotomic::rational_value() const {
  if (order_ != 1) return std::nullopt;
  if (coeffs_.empty()) return Rational(0);
  return coeffs_.begin()->second;
}

std::optional<Integer> Cyclotomic::nonneg_integer() const {
  auto r = rational_value();
  if (!r || r->get_den() != 1 || *r < 0) return std::nullopt;
  return r->get_num();
}

bool Cyclotomic::is_algebraic_integer() const {
  for (const auto& [e, c] : coeffs_) {
    if (c.get_den() != 1) return false;
  }
  return true;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic z(*this);
  for (auto& [e, c] : z.coeffs_) c = -c;
  return z;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (order_ == o.order_) {
    for (const auto& [e, c] : o.coeffs_) add_term(coeffs_, e, c);
    reduce_conductor(order_, coeffs_);
    return *this;
  }
  int64_t big = checked_lcm(order_, o.order_);
  CoeffMap m;
  for (const auto& [e, c] : coeffs_) add_term(m, e * (big / order_), c);
  for (const auto& [e, c] : o.coeffs_) add_term(m, e * (big / o.order_), c);
  to_basis(big, m);
  reduce_conductor(big, m);
  order_ = big;
  coeffs_ = std::move(m);
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return Cyclotomic();
  int64_t big = checked_lcm(a.order_, b.order_);
  int64_t fa = big / a.order_, fb = big / b.order_;
  CoeffMap m;
  for (const auto& [ea, ca] : a.coeffs_) {
    int64_t sa = ea * fa;
    for (const auto& [eb, cb] : b.coeffs_) {
      add_term(m, (sa + eb * fb) % big, ca * cb);
    }
  }
  to_basis(big, m);
  reduce_conductor(big, m);
  Cyclotomic z;
  z.order_ = big;
  z.coeffs_ = std::move(m);
  return z;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  *this = *this * o;
  return *this;
}

int Cyclotomic::compare(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ != b.order_) return a.order_ < b.order_ ? -1 : 1;
  auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin();
  for (; ia != a.coeffs_.end() && ib != b.coeffs_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    int c = cmp(ia->second, ib->second);
    if (c != 0) return c;
  }
  if (ia != a.coeffs_.end()) return 1;
  if (ib != b.coeffs_.end()) return -1;
  return 0;
}

Cyclotomic Cyclotomic::galois(int64_t k) const {
  int64_t kk = ((k % order_) + order_) % order_;
  if (std::gcd(kk, order_) != 1) {
    throw Error("galois automorphism requires k coprime to the conductor");
  }
  if (order_ == 1) return *this;
  std::vector<std::pair<int64_t, Rational>> terms;
  terms.reserve(coeffs_.size());
  for (const auto& [e, c] : coeffs_) terms.emplace_back(mulmod(e, kk, order_), c);
  return from_terms(order_, terms);
}

Cyclotomic Cyclotomic::conj() const {
  if (order_ == 1) return *this;
  return galois(order_ - 1);
}

Cyclotomic Cyclotomic::inverse() const {
  if (coeffs_.empty()) throw Error("cyclotomic division by zero");
  if (order_ == 1) {
    return Cyclotomic(Rational(1) / coeffs_.begin()->second);
  }
  // 1/z = (prod of the other Galois conjugates) / Norm(z).
  Cyclotomic prod(Rational(1));
  for (int64_t k = 2; k < order_; ++k) {
    if (std::gcd(k, order_) == 1) prod *= galois(k);
  }
  Cyclotomic norm = *this * prod;
  auto nr = norm.rational_value();
  if (!nr || *nr == 0) throw Error("cyclotomic norm failure in inverse");
  return prod * Cyclotomic(Rational(1) / *nr);
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> acc(0.0, 0.0);
  const double w = 2.0 * M_PI / static_cast<double>(order_);
  for (const auto& [e, c] : coeffs_) {
    acc += c.get_d() * std::polar(1.0, w * static_cast<double>(e));
  }
  return acc;
}

std::string Cyclotomic::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    bool neg = c < 0;
    Rational ab = neg ? Rational(-c) : c;
    std::string core;
    if (order_ == 1 || e == 0) {
      core = ab.get_str();
    } else {
      std::string atom = "E(" + std::to_string(order_) + ")";
      if (e != 1) atom += "^" + std::to_string(e);
      core = (ab == 1) ? atom : ab.get_str() + "*" + atom;
    }
    if (first) {
      out = neg ? "-" + core : core;
      first = false;
    } else {
      out += neg ? "-" : "+";
      out += core;
    }
  }
  return out;
}

std::size_t Cyclotomic::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(order_));
  for (const auto& [e, c] : coeffs_) {
    mix(static_cast<std::uint64_t>(e));
    mix(mpz_fdiv_ui(c.get_num_mpz_t(), 2147483647u));
    mix(mpz_fdiv_ui(c.get_den_mpz_t(), 2147483647u));
    mix(mpz_sgn(c.get_num_mpz_t()) < 0 ? 0x9e3779b97f4a7c15ull : 0x2545f4914f6cdd1dull);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace twirl
