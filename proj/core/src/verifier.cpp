#include "twirl/verifier.hpp"

#include "twirl/twist.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <thread>
#include <utility>
#include <vector>

namespace twirl {
namespace {

using Flat = std::vector<Cyclotomic>;  // dim*dim entries, row-major

// Lexicographic order under the exact total order on cyclotomics; used to
// index group elements without ever merging numerically close matrices.
struct FlatLess {
  bool operator()(const Flat& a, const Flat& b) const {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      int c = Cyclotomic::compare(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return a.size() < b.size();
  }
};

using ElementIndex = std::map<Flat, int, FlatLess>;

Flat identity_flat(int dim) {
  Flat e(static_cast<std::size_t>(dim) * dim, Cyclotomic(0));
  for (int i = 0; i < dim; ++i) e[static_cast<std::size_t>(i) * dim + i] = Cyclotomic(1);
  return e;
}

Flat matmul(const Flat& a, const Flat& b, int dim) {
  Flat out(static_cast<std::size_t>(dim) * dim, Cyclotomic(0));
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      const Cyclotomic& aik = a[static_cast<std::size_t>(i) * dim + k];
      if (aik.is_zero()) continue;
      for (int j = 0; j < dim; ++j) {
        const Cyclotomic& bkj = b[static_cast<std::size_t>(k) * dim + j];
        if (bkj.is_zero()) continue;
        std::size_t ij = static_cast<std::size_t>(i) * dim + j;
        out[ij] = out[ij] + aik * bkj;
      }
    }
  return out;
}

Flat dagger(const Flat& a, int dim) {
  Flat out(static_cast<std::size_t>(dim) * dim, Cyclotomic(0));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      out[static_cast<std::size_t>(j) * dim + i] =
          a[static_cast<std::size_t>(i) * dim + j].conj();
  return out;
}

// q^n, guarded against the projector dimension cap.
int checked_power(int q, int n, int cap) {
  long v = 1;
  for (int s = 0; s < n; ++s) {
    v *= q;
    if (v > cap)
      throw DimensionGuard("tensor power dimension " + std::to_string(q) + "^" +
                           std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
  }
  return static_cast<int>(v);
}

// In-place application of M^{tensor n} to every column of X (site by site).
void apply_tensor_power(const Cmat& m, int n, Eigen::MatrixXcd& x) {
  const int q = m.rows;
  const long big = x.rows();
  std::vector<std::complex<double>> buf(q);
  for (int col = 0; col < x.cols(); ++col) {
    long stride = big / q;
    for (int s = 0; s < n; ++s) {
      for (long hi = 0; hi < big; hi += stride * q)
        for (long lo = 0; lo < stride; ++lo) {
          for (int b = 0; b < q; ++b) buf[b] = x(hi + b * stride + lo, col);
          for (int a = 0; a < q; ++a) {
            std::complex<double> z = 0;
            for (int b = 0; b < q; ++b) z += m.at(a, b) * buf[b];
            x(hi + a * stride + lo, col) = z;
          }
        }
      stride /= q;
    }
  }
}

Eigen::MatrixXcd to_eigen(const Cmat& m) {
  Eigen::MatrixXcd out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out(i, j) = m.at(i, j);
  return out;
}

Cmat from_eigen(const Eigen::MatrixXcd& m) {
  Cmat out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < out.rows; ++i)
    for (int j = 0; j < out.cols; ++j) out.at(i, j) = m(i, j);
  return out;
}

std::complex<double> gaussian(std::mt19937_64& rng, std::normal_distribution<double>& nd) {
  double re = nd(rng);
  double im = nd(rng);
  return {re, im};
}

}  // namespace

MatrixGroup expand_group(const MatRep& rep, int cap) {
  const int dim = rep.dim;
  if (dim < 1) throw ValidationError(rep.name + ": matrix dimension must be positive");
  if (rep.generators.empty()) throw ValidationError(rep.name + ": no generator matrices");

  std::vector<Flat> gens;
  for (const auto& gm : rep.generators) {
    if (static_cast<int>(gm.size()) != dim)
      throw ValidationError(rep.name + ": generator is not " + std::to_string(dim) + " rows");
    Flat flat;
    flat.reserve(static_cast<std::size_t>(dim) * dim);
    for (const auto& row : gm) {
      if (static_cast<int>(row.size()) != dim)
        throw ValidationError(rep.name + ": generator is not square");
      for (const auto& e : row) flat.push_back(e);
    }
    gens.push_back(std::move(flat));
  }

  const Flat id = identity_flat(dim);
  for (const Flat& g : gens)
    if (matmul(g, dagger(g, dim), dim) != id)
      throw ValidationError(rep.name + ": generator is not unitary");

  MatrixGroup out;
  out.name = rep.name;
  out.dim = dim;
  ElementIndex index;
  out.elements.push_back(id);
  index.emplace(id, 0);
  for (std::size_t qi = 0; qi < out.elements.size(); ++qi) {
    for (const Flat& g : gens) {
      Flat p = matmul(out.elements[qi], g, dim);
      auto [it, fresh] = index.emplace(p, static_cast<int>(out.elements.size()));
      (void)it;
      if (fresh) {
        if (static_cast<int>(out.elements.size()) >= cap)
          throw CapExceeded(rep.name + ": closure exceeds " + std::to_string(cap) +
                            " elements");
        out.elements.push_back(std::move(p));
      }
    }
  }

  if (rep.order != 0 && rep.order != static_cast<long>(out.elements.size()))
    throw ValidationError(rep.name + ": declared order " + rep.order.get_str() +
                          " but the closure has " + std::to_string(out.elements.size()) +
                          " elements");

  for (const Flat& g : gens) out.generator_indices.push_back(index.at(g));

  out.embedded.reserve(out.elements.size());
  for (const Flat& e : out.elements) {
    Cmat m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        m.at(i, j) = e[static_cast<std::size_t>(i) * dim + j].to_complex();
    out.embedded.push_back(std::move(m));
  }
  return out;
}

namespace {

// Everything match_classes knows about one conjugacy class of the expanded
// matrix group, computed in exact arithmetic.
struct MatClass {
  std::vector<int> members;
  std::int64_t size = 0;
  std::int64_t order = 0;                       // element order
  Cyclotomic trace;                             // exact character of the embedding
  std::map<std::int64_t, int> power_class;      // prime -> class of x^p
  int inverse_class = -1;
};

// Depth-first search for a bijection matrix-class -> table-class honoring
// all candidate sets and the injectivity constraint; deterministic because
// classes and candidates are always scanned in ascending order.
bool assign_classes(const std::vector<std::vector<int>>& candidates,
                    std::vector<int>& assign, std::vector<char>& used) {
  int best = -1;
  std::size_t best_count = 0;
  for (std::size_t i = 0; i < assign.size(); ++i) {
    if (assign[i] != -1) continue;
    std::size_t count = 0;
    for (int c : candidates[i])
      if (!used[c]) ++count;
    if (count == 0) return false;
    if (best == -1 || count < best_count) {
      best = static_cast<int>(i);
      best_count = count;
    }
  }
  if (best == -1) return true;  // everything assigned
  for (int c : candidates[best]) {
    if (used[c]) continue;
    assign[best] = c;
    used[c] = 1;
    if (assign_classes(candidates, assign, used)) return true;
    assign[best] = -1;
    used[c] = 0;
  }
  return false;
}

}  // namespace

ClassMatch match_classes(const MatrixGroup& g, const CharacterTable& t) {
  const int dim = g.dim;
  const int nel = static_cast<int>(g.elements.size());
  if (t.order != nel)
    throw ValidationError(g.name + ": group has " + std::to_string(nel) +
                          " elements but the table describes a group of order " +
                          t.order.get_str());

  ElementIndex index;
  for (int i = 0; i < nel; ++i) index.emplace(g.elements[i], i);

  // Conjugacy classes as orbits under conjugation by the generators.
  std::vector<Flat> conjugators;
  std::vector<Flat> conjugators_inv;
  for (int gi : g.generator_indices) {
    conjugators.push_back(g.elements[gi]);
    conjugators_inv.push_back(dagger(g.elements[gi], dim));
  }
  std::vector<int> mclass_of(nel, -1);
  std::vector<MatClass> mcls;
  for (int i = 0; i < nel; ++i) {
    if (mclass_of[i] != -1) continue;
    int cid = static_cast<int>(mcls.size());
    MatClass mc;
    mc.members.push_back(i);
    mclass_of[i] = cid;
    for (std::size_t k = 0; k < mc.members.size(); ++k) {
      for (std::size_t ci = 0; ci < conjugators.size(); ++ci) {
        Flat c = matmul(matmul(conjugators[ci], g.elements[mc.members[k]], dim),
                        conjugators_inv[ci], dim);
        int j = index.at(c);
        if (mclass_of[j] == -1) {
          mclass_of[j] = cid;
          mc.members.push_back(j);
        }
      }
    }
    mcls.push_back(std::move(mc));
  }

  const Flat id = identity_flat(dim);
  for (MatClass& mc : mcls) {
    mc.size = static_cast<std::int64_t>(mc.members.size());
    const Flat& rep = g.elements[mc.members.front()];
    // exact element order
    Flat p = rep;
    mc.order = 1;
    while (p != id) {
      p = matmul(p, rep, dim);
      ++mc.order;
      if (mc.order > t.exponent)
        throw ValidationError(g.name + ": element order exceeds the table exponent");
    }
    Cyclotomic tr(0);
    for (int d = 0; d < dim; ++d) tr = tr + rep[static_cast<std::size_t>(d) * dim + d];
    mc.trace = tr;
    for (const auto& [prime, map] : t.power_maps) {
      (void)map;
      Flat pw = id;
      for (std::int64_t k = 0; k < prime; ++k) pw = matmul(pw, rep, dim);
      mc.power_class[prime] = mclass_of[index.at(pw)];
    }
    mc.inverse_class = mclass_of[index.at(dagger(rep, dim))];
  }

  const int ncls = static_cast<int>(mcls.size());
  if (ncls != t.num_classes())
    throw ValidationError(g.name + ": " + std::to_string(ncls) +
                          " conjugacy classes but the table has " +
                          std::to_string(t.num_classes()));

  // Try each table row of the right degree as the character of the
  // embedding; accept the first one admitting a fully consistent matching.
  for (int row = 0; row < t.num_characters(); ++row) {
    if (t.degree(row) != dim) continue;

    std::vector<std::vector<int>> candidates(ncls);
    bool viable = true;
    for (int mc = 0; mc < ncls && viable; ++mc) {
      for (int c = 0; c < t.num_classes(); ++c) {
        if (t.class_sizes[c] != mcls[mc].size) continue;
        if (t.element_orders[c] != mcls[mc].order) continue;
        if (!(t.characters[row][c] == mcls[mc].trace)) continue;
        candidates[mc].push_back(c);
      }
      if (candidates[mc].empty()) viable = false;
    }
    if (!viable) continue;

    // Refine by power maps and inversion until stable: a table class is a
    // candidate for mc only if its image under each map is a candidate for
    // the corresponding image class of mc.
    bool changed = true;
    while (changed && viable) {
      changed = false;
      for (int mc = 0; mc < ncls; ++mc) {
        auto consistent = [&](int c) {
          for (const auto& [prime, map] : t.power_maps) {
            int target_mc = mcls[mc].power_class.at(prime);
            const auto& tc = candidates[target_mc];
            if (std::find(tc.begin(), tc.end(), map[c]) == tc.end()) return false;
          }
          const auto& ic = candidates[mcls[mc].inverse_class];
          return std::find(ic.begin(), ic.end(), t.inverse_map[c]) != ic.end();
        };
        auto& cs = candidates[mc];
        std::size_t before = cs.size();
        cs.erase(std::remove_if(cs.begin(), cs.end(),
                                [&](int c) { return !consistent(c); }),
                 cs.end());
        if (cs.empty()) {
          viable = false;
          break;
        }
        if (cs.size() != before) changed = true;
      }
    }
    if (!viable) continue;

    std::vector<int> assign(ncls, -1);
    std::vector<char> used(t.num_classes(), 0);
    if (!assign_classes(candidates, assign, used)) continue;

    // Full verification of the chosen bijection.
    bool ok = true;
    for (int mc = 0; mc < ncls && ok; ++mc) {
      for (const auto& [prime, map] : t.power_maps)
        if (map[assign[mc]] != assign[mcls[mc].power_class.at(prime)]) ok = false;
      if (t.inverse_map[assign[mc]] != assign[mcls[mc].inverse_class]) ok = false;
    }
    if (!ok) continue;

    ClassMatch out;
    out.character_row = row;
    out.class_of.resize(nel);
    for (int i = 0; i < nel; ++i) out.class_of[i] = assign[mclass_of[i]];
    return out;
  }

  throw ValidationError(g.name +
                        ": no table row of the right degree matches the class structure");
}

Cmat isotypic_projector(const MatrixGroup& g, const std::vector<Cyclotomic>& lambda_of,
                        int n, int threads) {
  const int q = g.dim;
  const std::size_t nel = g.elements.size();
  if (lambda_of.size() != nel)
    throw ValidationError("one twist value per group element is required");
  if (n < 1) throw ValidationError("tensor power must be at least 1");
  const int big = checked_power(q, n, kProjectorDimCap);

  auto deg = lambda_of[0].nonneg_integer();
  if (!deg || *deg == 0)
    throw ValidationError("twist value at the identity must be a positive integer");
  const double scale = deg->get_d() / static_cast<double>(nel);

  std::vector<std::complex<double>> weight(nel);
  std::vector<char> skip(nel);
  for (std::size_t e = 0; e < nel; ++e) {
    skip[e] = lambda_of[e].is_zero() ? 1 : 0;
    weight[e] = std::conj(lambda_of[e].to_complex()) * scale;
  }

  Cmat p(big, big);
  // Each thread owns a contiguous block of output rows; per entry the sum
  // runs in element order, so the result is identical for any thread count.
  auto worker = [&](int r0, int r1) {
    std::vector<std::complex<double>> row(big), next(big);
    std::vector<int> digit(n);
    for (int r = r0; r < r1; ++r) {
      {
        int v = r;
        for (int s = n - 1; s >= 0; --s) {
          digit[s] = v % q;
          v /= q;
        }
      }
      std::complex<double>* acc = &p.a[static_cast<std::size_t>(r) * big];
      for (std::size_t e = 0; e < nel; ++e) {
        if (skip[e]) continue;
        const Cmat& m = g.embedded[e];
        // row r of m^{tensor n}: repeated outer product of single-site rows
        row[0] = 1.0;
        int len = 1;
        for (int s = 0; s < n; ++s) {
          const int d = digit[s];
          for (int i = 0; i < len; ++i)
            for (int c = 0; c < q; ++c) next[i * q + c] = row[i] * m.at(d, c);
          len *= q;
          std::swap(row, next);
        }
        const std::complex<double> w = weight[e];
        for (int c = 0; c < big; ++c) acc[c] += w * row[c];
      }
    }
  };

  threads = std::max(1, std::min({threads, 256, big}));
  if (threads == 1) {
    worker(0, big);
  } else {
    std::vector<std::thread> pool;
    int chunk = (big + threads - 1) / threads;
    for (int tix = 0; tix < threads; ++tix) {
      int r0 = tix * chunk;
      int r1 = std::min(big, r0 + chunk);
      if (r0 >= r1) break;
      pool.emplace_back(worker, r0, r1);
    }
    for (auto& th : pool) th.join();
  }

  double tr = 0;
  for (int i = 0; i < big; ++i) tr += p.at(i, i).real();
  if (std::abs(tr) < 0.5)
    throw MultiplicityZero("the twist does not occur at tensor power " + std::to_string(n));
  return p;
}

Cmat extract_code(const Cmat& p, const MatrixGroup& g, int n, int K,
                  std::uint64_t seed, double tol) {
  if (p.rows != p.cols) throw ValidationError("projector must be square");
  const int big = checked_power(g.dim, n, kProjectorDimCap);
  if (p.rows != big)
    throw ValidationError("projector size does not match the tensor power");
  if (K < 1) throw ValidationError("block dimension must be positive");
  if (tol < 0) tol = 1e-9 * big;

  double tr = 0;
  for (int i = 0; i < big; ++i) tr += p.at(i, i).real();
  const long rank = std::lround(tr);
  if (std::abs(tr - static_cast<double>(rank)) > std::max(tol, 1e-6))
    throw ValidationError("projector trace " + std::to_string(tr) +
                          " is not close to an integer");
  if (rank == 0) throw MultiplicityZero("projector trace is zero: nothing to extract");
  if (rank % K != 0)
    throw ValidationError("projector rank " + std::to_string(rank) +
                          " is not a multiple of the block dimension " + std::to_string(K));
  const long mult = rank / K;

  const Eigen::MatrixXcd pm = to_eigen(p);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;

  for (int attempt = 0; attempt < 5; ++attempt) {
    // Randomized range finder: P applied to a Gaussian sketch spans the
    // range; the thin SVD orthonormalizes and truncates it.
    const int sketch = static_cast<int>(std::min<long>(big, rank + 8));
    Eigen::MatrixXcd om(big, sketch);
    for (int i = 0; i < big; ++i)
      for (int j = 0; j < sketch; ++j) om(i, j) = gaussian(rng, nd);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pm * om, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv(rank - 1) < 1e-6 * sv(0)) continue;  // unlucky sketch
    if (sketch > rank && sv(rank) > 1e-6 * sv(0)) continue;
    Eigen::MatrixXcd basis = svd.matrixU().leftCols(rank);
    if ((pm * basis - basis).norm() > 10 * tol) continue;

    if (mult == 1) return from_eigen(basis);

    // The range carries `mult` copies of the block.  Average a random
    // Hermitian over the induced action: the result lives in the commutant,
    // and each eigenvalue cluster of size K spans one irreducible block.
    Eigen::MatrixXcd h(rank, rank);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) h(i, j) = gaussian(rng, nd);
    h = Eigen::MatrixXcd((h + h.adjoint()) / 2.0);

    Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(rank, rank);
    for (const Cmat& m : g.embedded) {
      Eigen::MatrixXcd moved = basis;
      apply_tensor_power(m, n, moved);
      Eigen::MatrixXcd induced = basis.adjoint() * moved;
      avg += induced * h * induced.adjoint();
    }
    avg /= static_cast<double>(g.embedded.size());
    avg = Eigen::MatrixXcd((avg + avg.adjoint()) / 2.0);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(avg);
    const auto& ev = es.eigenvalues();
    const double spread = ev(rank - 1) - ev(0);
    if (spread < 1e-12) continue;
    const double gap = spread * 1e-6 + 1e-14;
    bool sizes_ok = true;
    int start = 0;
    for (int i = 1; i <= rank && sizes_ok; ++i) {
      if (i == rank || ev(i) - ev(i - 1) > gap) {
        if (i - start != K) sizes_ok = false;
        start = i;
      }
    }
    if (!sizes_ok) continue;

    Eigen::MatrixXcd code = basis * es.eigenvectors().leftCols(K);
    Eigen::MatrixXcd gram = code.adjoint() * code;
    if ((gram - Eigen::MatrixXcd::Identity(K, K)).norm() > 1e-8) continue;
    return from_eigen(code);
  }
  throw DegenerateSplit(g.name + ": repeated commutant samples failed to split rank " +
                        std::to_string(rank) + " into blocks of " + std::to_string(K));
}

std::vector<double> knill_laflamme_residuals(const Cmat& code, int n, int q, int w) {
  if (q < 2) throw ValidationError("local dimension must be at least 2");
  if (w < 1 || w > n) throw ValidationError("error weight must lie in 1..n");
  const int big = checked_power(q, n, kProjectorDimCap);
  if (code.rows != big)
    throw ValidationError("code rows do not match the tensor power");
  const int K = code.cols;

  std::vector<long> stride(n);
  stride[n - 1] = 1;
  for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * q;

  std::vector<double> out;
  std::vector<std::complex<double>> m(static_cast<std::size_t>(K) * K);
  for (int weight = 1; weight <= w; ++weight) {
    double worst = 0;

    std::vector<int> sites(weight);
    for (int i = 0; i < weight; ++i) sites[i] = i;
    while (true) {
      // free sites: everything not in `sites`
      std::vector<long> free_stride;
      {
        int si = 0;
        for (int s = 0; s < n; ++s) {
          if (si < weight && sites[si] == s) {
            ++si;
            continue;
          }
          free_stride.push_back(stride[s]);
        }
      }
      const long nfree = free_stride.size();
      long free_count = 1;
      for (long i = 0; i < nfree; ++i) free_count *= q;

      // unit assignment u encodes (a_s, b_s) for every chosen site
      long units = 1;
      for (int i = 0; i < 2 * weight; ++i) units *= q;
      for (long u = 0; u < units; ++u) {
        long basea = 0, baseb = 0;
        {
          long v = u;
          for (int s = 0; s < weight; ++s) {
            int b = static_cast<int>(v % q);
            v /= q;
            int a = static_cast<int>(v % q);
            v /= q;
            basea += a * stride[sites[s]];
            baseb += b * stride[sites[s]];
          }
        }
        std::fill(m.begin(), m.end(), std::complex<double>(0));
        for (long x = 0; x < free_count; ++x) {
          long off = 0;
          {
            long v = x;
            for (long f = 0; f < nfree; ++f) {
              off += (v % q) * free_stride[f];
              v /= q;
            }
          }
          const std::complex<double>* ra = &code.a[static_cast<std::size_t>(basea + off) * K];
          const std::complex<double>* rb = &code.a[static_cast<std::size_t>(baseb + off) * K];
          for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j)
              m[static_cast<std::size_t>(i) * K + j] += std::conj(ra[i]) * rb[j];
        }
        std::complex<double> trm = 0;
        for (int i = 0; i < K; ++i) trm += m[static_cast<std::size_t>(i) * K + i];
        trm /= static_cast<double>(K);
        double frob = 0;
        for (int i = 0; i < K; ++i)
          for (int j = 0; j < K; ++j) {
            std::complex<double> z = m[static_cast<std::size_t>(i) * K + j];
            if (i == j) z -= trm;
            frob += std::norm(z);
          }
        worst = std::max(worst, std::sqrt(frob));
      }

      // next site combination
      int s = weight - 1;
      while (s >= 0 && sites[s] == n - weight + s) --s;
      if (s < 0) break;
      ++sites[s];
      for (int i = s + 1; i < weight; ++i) sites[i] = sites[i - 1] + 1;
    }
    out.push_back(worst);
  }
  return out;
}

double transversal_residual(const Cmat& code, const MatrixGroup& g, int n) {
  const int big = checked_power(g.dim, n, kProjectorDimCap);
  if (code.rows != big)
    throw ValidationError("code rows do not match the tensor power");
  const Eigen::MatrixXcd c = to_eigen(code);
  double worst = 0;
  for (const Cmat& m : g.embedded) {
    Eigen::MatrixXcd moved = c;
    apply_tensor_power(m, n, moved);
    Eigen::MatrixXcd logical = c.adjoint() * moved;
    worst = std::max(worst, (moved - c * logical).norm());
  }
  return worst;
}

int count_logical_unitaries(const Cmat& code, const MatrixGroup& g, int n, double tol) {
  const int big = checked_power(g.dim, n, kProjectorDimCap);
  if (code.rows != big)
    throw ValidationError("code rows do not match the tensor power");
  const int K = code.cols;
  const Eigen::MatrixXcd c = to_eigen(code);
  std::vector<Eigen::MatrixXcd> seen;
  for (const Cmat& m : g.embedded) {
    Eigen::MatrixXcd moved = c;
    apply_tensor_power(m, n, moved);
    Eigen::MatrixXcd logical = c.adjoint() * moved;
    bool fresh = true;
    for (const auto& v : seen) {
      // unitaries equal up to phase exactly when |tr(V^H U)| = K
      if (std::abs(std::abs((v.adjoint() * logical).trace()) - K) < tol) {
        fresh = false;
        break;
      }
    }
    if (fresh) seen.push_back(std::move(logical));
  }
  return static_cast<int>(seen.size());
}

CodeCertificate certify(const MatRep& rep, const CharacterTable& t, int lambda_row,
                        int n, int w, double tol, std::uint64_t seed, int cap,
                        int threads) {
  if (lambda_row < 0 || lambda_row >= t.num_characters())
    throw ValidationError("twist row " + std::to_string(lambda_row) +
                          " is outside the table");
  if (n < 1) throw ValidationError("tensor power must be at least 1");
  w = std::max(1, std::min(w, n));

  MatrixGroup g = expand_group(rep, cap);
  ClassMatch match = match_classes(g, t);

  // Exact multiplicity of the twist inside the n-th power of the matched
  // character; zero means there is nothing to build.
  std::vector<Cyclotomic> fpow(t.num_classes(), Cyclotomic(1));
  for (int k = 0; k < n; ++k)
    for (int c = 0; c < t.num_classes(); ++c)
      fpow[c] = fpow[c] * t.characters[match.character_row][c];
  Integer mult = inner_product_rows(t, fpow, t.characters[lambda_row]);
  if (mult == 0)
    throw MultiplicityZero(g.name + ": the twist does not occur in tensor power " +
                           std::to_string(n));

  const int big = checked_power(g.dim, n, kProjectorDimCap);
  if (tol < 0) tol = 1e-9 * big;
  const long K = t.degree(lambda_row).get_si();

  std::vector<Cyclotomic> lambda_of;
  lambda_of.reserve(g.elements.size());
  for (std::size_t i = 0; i < g.elements.size(); ++i)
    lambda_of.push_back(t.characters[lambda_row][match.class_of[i]]);

  Cmat p = isotypic_projector(g, lambda_of, n, threads);

  CodeCertificate cert;
  cert.group = g.name;
  cert.n = n;
  cert.K = static_cast<int>(K);
  cert.q = g.dim;
  cert.lambda_row = lambda_row;
  cert.f_row = match.character_row;
  cert.group_order = Integer(static_cast<long>(g.elements.size()));
  cert.multiplicity = mult;
  cert.tolerance = tol;

  double tr = 0;
  for (int i = 0; i < big; ++i) tr += p.at(i, i).real();
  cert.projector_rank = static_cast<int>(std::lround(tr));
  cert.trace_error = std::abs(tr - static_cast<double>(K) * mult.get_d());
  if (cert.trace_error > std::max(tol, 1e-6))
    throw ValidationError(g.name + ": projector trace disagrees with the exact multiplicity");

  {
    const Eigen::MatrixXcd pm = to_eigen(p);
    cert.projector_error = (pm * pm - pm).norm();
  }

  cert.code = extract_code(p, g, n, static_cast<int>(K), seed, tol);
  cert.kl_residuals = knill_laflamme_residuals(cert.code, n, g.dim, w);
  cert.achieved_distance = 1;
  for (int i = 0; i < w; ++i) {
    if (cert.kl_residuals[i] <= tol)
      cert.achieved_distance = i + 2;
    else
      break;
  }
  cert.transversal_error = transversal_residual(cert.code, g, n);
  cert.logical_unitaries = count_logical_unitaries(cert.code, g, n);
  return cert;
}

}  // namespace twirl
