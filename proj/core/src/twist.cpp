#include "twirl/twist.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "twirl/errors.hpp"

namespace twirl {

namespace {

Integer require_counting_integer(const Cyclotomic& value, const char* what) {
    auto n = value.nonneg_integer();
    if (!n)
        throw NonIntegerResult(std::string(what) + " evaluates to " + value.to_string() +
                               ", not a nonnegative integer");
    return *n;
}

// (1/|G|) sum_c |C_c| vals(c), exact.
Cyclotomic class_average(const CharacterTable& t, const std::vector<Cyclotomic>& vals) {
    Cyclotomic acc(0);
    for (int c = 0; c < t.num_classes(); ++c)
        acc += Cyclotomic(Rational(t.class_sizes[c])) * vals[c];
    Rational inv(1);
    inv /= Rational(t.order);
    return acc * Cyclotomic(inv);
}

std::vector<Cyclotomic> pointwise(const std::vector<Cyclotomic>& a,
                                  const std::vector<Cyclotomic>& b) {
    std::vector<Cyclotomic> r;
    r.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i] * b[i]);
    return r;
}

// |v(c)|^2 = v(c) * conj(v(c)) per class.
std::vector<Cyclotomic> abs_squared(const std::vector<Cyclotomic>& v) {
    std::vector<Cyclotomic> r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(x * x.conj());
    return r;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Row permutations induced by automorphisms of the character table: column
// permutations that preserve class sizes, element orders, every power map,
// and the inverse map, and that permute the set of rows (value for value).
// Group automorphisms induce exactly such symmetries, so two (f, lambda)
// pairs related by one are the same pair after relabeling the group.  The
// search is a straightforward backtracking over column images with eager
// power-map propagation; a node budget keeps adversarial tables from
// exploding (hitting it only loses coarsening, never correctness).
class TableAutomorphisms {
  public:
    explicit TableAutomorphisms(const CharacterTable& t) : t_(t), k_(t.num_classes()) {
        pi_.assign(k_, -1);
        used_.assign(k_, false);
        cand_.assign(t_.num_characters(), {});
        for (int r = 0; r < t_.num_characters(); ++r)
            for (int r2 = 0; r2 < t_.num_characters(); ++r2)
                if (row_compatible(r, r2)) cand_[r].push_back(r2);
    }

    std::vector<std::vector<int>> run() {
        if (assign_and_propagate(0, 0))  // identity class is fixed
            search();
        // Distinct column permutations can induce the same row permutation.
        std::sort(found_.begin(), found_.end());
        found_.erase(std::unique(found_.begin(), found_.end()), found_.end());
        return std::move(found_);
    }

  private:
    bool column_compatible(int c, int d) const {
        return t_.class_sizes[c] == t_.class_sizes[d] &&
               t_.element_orders[c] == t_.element_orders[d];
    }

    // Same degree and same multiset of values (an automorphism permutes each
    // row's values, so the multiset is invariant).
    bool row_compatible(int r, int r2) const {
        if (!(t_.characters[r][0] == t_.characters[r2][0])) return false;
        std::vector<std::size_t> a, b;
        for (int c = 0; c < k_; ++c) {
            a.push_back(t_.characters[r][c].hash());
            b.push_back(t_.characters[r2][c].hash());
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

    // Sets pi_[c] = d and follows the forced consequences through the power
    // maps and the inverse map.  Returns false on any conflict.
    bool assign_and_propagate(int c, int d) {
        std::vector<std::pair<int, int>> queue{{c, d}};
        while (!queue.empty()) {
            auto [x, y] = queue.back();
            queue.pop_back();
            if (pi_[x] == y) continue;
            if (pi_[x] != -1 || used_[y] || !column_compatible(x, y)) return false;
            pi_[x] = y;
            used_[y] = true;
            trail_.push_back(x);
            queue.emplace_back(t_.inverse_map[x], t_.inverse_map[y]);
            for (const auto& [p, pm] : t_.power_maps) queue.emplace_back(pm[x], pm[y]);
            // Filter row candidates against the new value constraint.
            for (int r = 0; r < t_.num_characters(); ++r) {
                auto& cs = cand_[r];
                cs.erase(std::remove_if(cs.begin(), cs.end(),
                                        [&](int r2) {
                                            return !(t_.characters[r2][y] ==
                                                     t_.characters[r][x]);
                                        }),
                         cs.end());
                if (cs.empty()) return false;
            }
        }
        return true;
    }

    void search() {
        if (budget_-- <= 0) return;
        int best = -1, best_count = k_ + 1;
        for (int c = 0; c < k_; ++c) {
            if (pi_[c] != -1) continue;
            int count = 0;
            for (int d = 0; d < k_; ++d)
                if (!used_[d] && column_compatible(c, d)) ++count;
            if (count < best_count) {
                best = c;
                best_count = count;
            }
        }
        if (best == -1) {
            record();
            return;
        }
        for (int d = 0; d < k_; ++d) {
            if (used_[d] || !column_compatible(best, d)) continue;
            auto saved_trail = trail_.size();
            auto saved_cand = cand_;
            if (assign_and_propagate(best, d)) search();
            while (trail_.size() > saved_trail) {
                int x = trail_.back();
                trail_.pop_back();
                used_[pi_[x]] = false;
                pi_[x] = -1;
            }
            cand_ = std::move(saved_cand);
        }
    }

    void record() {
        // Every candidate list must now be a singleton forming a bijection.
        std::vector<int> rho(t_.num_characters(), -1);
        std::vector<bool> hit(t_.num_characters(), false);
        for (int r = 0; r < t_.num_characters(); ++r) {
            if (cand_[r].size() != 1) return;
            int r2 = cand_[r][0];
            if (hit[r2]) return;
            hit[r2] = true;
            rho[r] = r2;
        }
        found_.push_back(std::move(rho));
    }

    const CharacterTable& t_;
    int k_;
    std::vector<int> pi_;
    std::vector<bool> used_;
    std::vector<int> trail_;
    std::vector<std::vector<int>> cand_;  // per row: compatible image rows
    std::vector<std::vector<int>> found_;
    long budget_ = 200000;
};

Integer factorial(int t) {
    Integer f(1);
    for (int k = 2; k <= t; ++k) f *= k;
    return f;
}

// Squared dimension of the symmetric-group irrep for one partition shape,
// via the hook-length formula.
Integer squared_tableau_count(const std::vector<int>& shape, int t) {
    int rows = (int)shape.size();
    Integer hooks(1);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < shape[i]; ++j) {
            int arm = shape[i] - j - 1;
            int leg = 0;
            for (int k = i + 1; k < rows; ++k)
                if (shape[k] > j) ++leg;
            hooks *= arm + leg + 1;
        }
    Integer dim = factorial(t) / hooks;
    return dim * dim;
}

void sum_partitions(int remaining, int max_part, int parts_left, std::vector<int>& shape,
                    int t, Integer& acc) {
    if (remaining == 0) {
        acc += squared_tableau_count(shape, t);
        return;
    }
    if (parts_left == 0) return;
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        shape.push_back(part);
        sum_partitions(remaining - part, part, parts_left - 1, shape, t, acc);
        shape.pop_back();
    }
}

// Largest t' <= cap with haar_moment arguments clamped: partitions of t with
// at most q parts equal all partitions once q >= t.
Integer haar_clamped(const Integer& degree, int t) {
    if (degree >= Integer(t)) return haar_moment(t, t);
    return haar_moment(degree.get_si(), t);
}

}  // namespace

Integer inner_product_rows(const CharacterTable& t, const std::vector<Cyclotomic>& a,
                           const std::vector<Cyclotomic>& b) {
    std::vector<Cyclotomic> conj_b;
    conj_b.reserve(b.size());
    for (const auto& v : b) conj_b.push_back(v.conj());
    return require_counting_integer(class_average(t, pointwise(a, conj_b)),
                                    "character inner product");
}

Integer inner_product(const CharacterTable& t, int a, int b) {
    return inner_product_rows(t, t.characters[a], t.characters[b]);
}

Integer norm_of_row(const CharacterTable& t, const std::vector<Cyclotomic>& values) {
    return inner_product_rows(t, values, values);
}

std::vector<Cyclotomic> product_character(const CharacterTable& t, int a, int b) {
    return pointwise(t.characters[a], t.characters[b]);
}

KernelInfo kernel_classes(const CharacterTable& t, int a) {
    KernelInfo info;
    const auto& row = t.characters[a];
    info.size = 0;
    for (int c = 0; c < t.num_classes(); ++c)
        if (row[c] == row[0]) {
            info.classes.push_back(c);
            info.size += t.class_sizes[c];
        }
    info.is_faithful = info.size == 1;
    return info;
}

bool kernel_contained(const CharacterTable& t, int f, int lambda) {
    const auto& fr = t.characters[f];
    const auto& lr = t.characters[lambda];
    for (int c = 0; c < t.num_classes(); ++c)
        if (fr[c] == fr[0] && !(lr[c] == lr[0])) return false;
    return true;
}

bool is_twisted_1group(const CharacterTable& t, int f, int lambda) {
    return norm_of_row(t, product_character(t, lambda, f)) == Integer(1);
}

MinN min_n(const CharacterTable& t, int f, int lambda, int n_max) {
    MinN result;
    result.multiplicity = 0;
    if (!kernel_contained(t, f, lambda)) {
        result.status = MinN::Status::Never;
        return result;
    }
    std::vector<Cyclotomic> conj_lambda;
    conj_lambda.reserve(t.num_classes());
    for (const auto& v : t.characters[lambda]) conj_lambda.push_back(v.conj());
    // running power of f, reused across n
    std::vector<Cyclotomic> power(t.num_classes(), Cyclotomic(1));
    for (int n = 1; n <= n_max; ++n) {
        power = pointwise(power, t.characters[f]);
        Integer mult = require_counting_integer(class_average(t, pointwise(power, conj_lambda)),
                                                "tensor-power multiplicity");
        if (mult > 0) {
            result.status = MinN::Status::Found;
            result.n = n;
            result.multiplicity = mult;
            result.searched_up_to = n;
            return result;
        }
    }
    result.status = MinN::Status::NotFound;
    result.searched_up_to = n_max;
    return result;
}

std::vector<AppPair> app_pairs(const CharacterTable& t, bool include_trivial, int n_max) {
    std::vector<AppPair> pairs;
    const int nch = t.num_characters();
    for (int f = 0; f < nch; ++f) {
        KernelInfo fk = kernel_classes(t, f);
        if (!fk.is_faithful) continue;
        for (int l = 0; l < nch; ++l) {
            Integer deg_l = t.degree(l);
            if (!include_trivial && deg_l < 2) continue;  // K = 1 encodes nothing
            if (!is_twisted_1group(t, f, l)) continue;
            AppPair p;
            p.f = f;
            p.lambda = l;
            p.q = t.degree(f);
            p.K = deg_l;
            KernelInfo lk = kernel_classes(t, l);
            p.kernel_lambda_size = lk.size;
            p.transversal_order = t.order / lk.size;
            p.min_n = min_n(t, f, l, n_max);
            pairs.push_back(std::move(p));
        }
    }

    // Group pairs into orbits of the simultaneous Galois action on (f, lambda).
    std::map<std::pair<int, int>, int> index_of;
    for (size_t i = 0; i < pairs.size(); ++i) index_of[{pairs[i].f, pairs[i].lambda}] = (int)i;
    UnionFind uf((int)pairs.size());
    for (std::int64_t k = 2; k < t.exponent; ++k) {
        if (std::gcd(k, t.exponent) != 1) continue;
        // row permutation induced by this automorphism
        std::vector<int> image(nch, -1);
        bool total = true;
        for (int r = 0; r < nch && total; ++r) {
            std::vector<Cyclotomic> mapped;
            mapped.reserve(t.num_classes());
            for (const auto& v : t.characters[r]) mapped.push_back(v.galois(k));
            for (int r2 = 0; r2 < nch; ++r2)
                if (t.characters[r2] == mapped) {
                    image[r] = r2;
                    break;
                }
            if (image[r] < 0) total = false;
        }
        if (!total) continue;  // not a closed table; skip this automorphism
        for (size_t i = 0; i < pairs.size(); ++i) {
            auto it = index_of.find({image[pairs[i].f], image[pairs[i].lambda]});
            if (it != index_of.end()) uf.unite((int)i, it->second);
        }
    }
    // Also merge pairs related by table automorphisms (e.g. outer group
    // automorphisms), which relabel classes without changing any derived
    // quantity: a pair and its image describe the same code.
    for (const auto& rho : TableAutomorphisms(t).run()) {
        for (size_t i = 0; i < pairs.size(); ++i) {
            auto it = index_of.find({rho[pairs[i].f], rho[pairs[i].lambda]});
            if (it != index_of.end()) uf.unite((int)i, it->second);
        }
    }
    std::map<int, int> orbit_id;  // union-find root -> id by first appearance
    for (size_t i = 0; i < pairs.size(); ++i) {
        int root = uf.find((int)i);
        pairs[i].galois_orbit = orbit_id.emplace(root, (int)orbit_id.size()).first->second;
    }
    return pairs;
}

Integer haar_moment(std::int64_t q, int t) {
    if (q < 1 || t < 1) throw Error("haar_moment requires positive dimension and moment order");
    Integer acc(0);
    std::vector<int> shape;
    sum_partitions(t, t, (int)std::min<std::int64_t>(q, t), shape, t, acc);
    return acc;
}

bool unitary_t_check(const CharacterTable& t, int lambda, int tt) {
    if (tt < 1) throw Error("unitary_t_check requires a positive moment order");
    auto sq = abs_squared(t.characters[lambda]);
    std::vector<Cyclotomic> m(t.num_classes(), Cyclotomic(1));
    for (int k = 0; k < tt; ++k) m = pointwise(m, sq);
    Integer moment = require_counting_integer(class_average(t, m), "unitary moment");
    return moment == haar_clamped(t.degree(lambda), tt);
}

TwistedMoment twisted_t_moment(const CharacterTable& t, int f, int lambda, int tt) {
    if (tt < 1) throw Error("twisted_t_moment requires a positive moment order");
    auto fsq = abs_squared(t.characters[f]);
    std::vector<Cyclotomic> m = abs_squared(t.characters[lambda]);
    for (int k = 0; k < tt; ++k) m = pointwise(m, fsq);
    TwistedMoment out;
    out.moment = require_counting_integer(class_average(t, m), "twisted moment");
    out.matches_haar = out.moment == haar_clamped(t.degree(f), tt);
    return out;
}

FamilyParams sp_weil_params(int b) {
    if (b < 1) throw Error("sp_weil_params requires b >= 1");
    Integer pow3(1);
    for (int k = 0; k < b; ++k) pow3 *= 3;
    Integer eta = (pow3 - 1) / 2;
    Integer xi = (pow3 + 1) / 2;
    FamilyParams p;
    p.tag = FamilyTag::Sp2b3;
    p.b = b;
    p.degrees = {eta, xi};
    // the even-dimensional Weil character is the faithful one and plays f
    if (eta % 2 == 0) {
        p.q = eta;
        p.K = xi;
    } else {
        p.q = xi;
        p.K = eta;
    }
    p.applicable = true;
    return p;
}

FamilyParams su_weil_params(int b) {
    if (b < 2) throw Error("su_weil_params requires b >= 2");
    Integer pow2(1);
    for (int k = 0; k < b; ++k) pow2 *= 2;
    int sign = (b % 2 == 0) ? 1 : -1;
    Integer zeta0 = (pow2 + 2 * sign) / 3;
    Integer zeta1 = (pow2 - sign) / 3;
    FamilyParams p;
    p.tag = FamilyTag::SUb2;
    p.b = b;
    p.degrees = {zeta0, zeta1, zeta1};
    p.q = zeta0;
    p.K = zeta1;
    p.applicable = b % 3 != 0;  // otherwise zeta0 has a kernel of size 3
    return p;
}

CodeReport code_report(const CharacterTable& t, const AppPair& pair, int t_max) {
    if (pair.min_n.status != MinN::Status::Found)
        throw Error("code_report requires a pair with a resolved minimal tensor power");
    CodeReport rep;
    rep.n = pair.min_n.n;
    rep.K = pair.K;
    rep.d = 2;
    rep.q = pair.q;
    rep.group_name = t.name;
    rep.group_order = t.order;
    rep.transversal_order = pair.transversal_order;
    rep.multiplicity = pair.min_n.multiplicity;
    rep.max_unitary_t = 0;
    for (int tt = 1; tt <= t_max; ++tt) {
        if (!unitary_t_check(t, pair.lambda, tt)) break;
        rep.max_unitary_t = tt;
    }
    rep.twisted_2_matches = twisted_t_moment(t, pair.f, pair.lambda, 2).matches_haar;
    return rep;
}

}  // namespace twirl
