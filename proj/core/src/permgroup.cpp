#include "twirl/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "twirl/errors.hpp"

namespace twirl {

namespace {

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

Permutation::Permutation(std::vector<std::uint16_t> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (std::uint16_t v : img_) {
    if (v >= img_.size() || seen[v]) {
      throw ValidationError("permutation images are not a bijection");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<std::uint16_t> img(degree);
  std::iota(img.begin(), img.end(), 0);
  Permutation p;
  p.img_ = std::move(img);
  return p;
}

Permutation Permutation::from_cycles(const std::string& text, int degree) {
  if (degree < 1 || degree > 65535) throw ParseError("degree out of range");
  std::vector<std::uint16_t> img(degree);
  std::iota(img.begin(), img.end(), 0);
  std::vector<bool> used(degree, false);

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  bool any = false;
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation", 0, i + 1);
    ++i;
    skip_ws();
    std::vector<int> cyc;
    if (i < text.size() && text[i] == ')') {
      ++i;  // "()" = identity factor
    } else {
      while (true) {
        skip_ws();
        std::size_t start = i;
        long v = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
          v = v * 10 + (text[i] - '0');
          if (v > 65535) throw ParseError("point out of range", 0, start + 1);
          ++i;
        }
        if (i == start) throw ParseError("expected point number", 0, i + 1);
        if (v < 1 || v > degree) throw ParseError("point outside 1..degree", 0, start + 1);
        if (used[v - 1]) throw ParseError("point repeated across cycles", 0, start + 1);
        used[v - 1] = true;
        cyc.push_back(static_cast<int>(v - 1));
        skip_ws();
        if (i >= text.size()) throw ParseError("unterminated cycle", 0, i);
        if (text[i] == ',') {
          ++i;
          continue;
        }
        if (text[i] == ')') {
          ++i;
          break;
        }
        throw ParseError("expected ',' or ')' in cycle", 0, i + 1);
      }
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      img[cyc[k]] = static_cast<std::uint16_t>(cyc[(k + 1) % cyc.size()]);
    }
    any = true;
    skip_ws();
  }
  if (!any) throw ParseError("empty cycle expression");
  Permutation p;
  p.img_ = std::move(img);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (img_[i] != i) return false;
  }
  return true;
}

std::int64_t Permutation::order() const {
  std::vector<bool> seen(img_.size(), false);
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::int64_t len = 0;
    std::size_t j = i;
    do {
      seen[j] = true;
      ++len;
      j = img_[j];
    } while (j != i);
    ord = lcm64(ord, len);
  }
  return ord;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint16_t> inv(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) inv[img_[i]] = static_cast<std::uint16_t>(i);
  Permutation p;
  p.img_ = std::move(inv);
  return p;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  Permutation r;
  r.img_.resize(a.img_.size());
  for (std::size_t i = 0; i < b.img_.size(); ++i) r.img_[i] = a.img_[b.img_[i]];
  return r;
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i) {
      seen[i] = true;
      continue;
    }
    out += '(';
    std::size_t j = i;
    bool first = true;
    do {
      if (!first) out += ',';
      out += std::to_string(j + 1);
      first = false;
      seen[j] = true;
      j = img_[j];
    } while (j != i);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::size_t Permutation::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint16_t v : img_) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------

PermGroup::PermGroup(int degree, std::vector<Permutation> generators, std::string name)
    : degree_(degree), name_(std::move(name)), gens_(std::move(generators)) {
  if (degree < 1 || degree > 65535) throw ValidationError("degree out of range");
  if (gens_.empty()) throw ValidationError("generator list is empty");
  for (const Permutation& g : gens_) {
    if (g.degree() != degree_) throw ValidationError("generator degree mismatch");
  }
}

namespace {

// Deterministic Schreier-Sims stabilizer chain.
class Chain {
 public:
  explicit Chain(const std::vector<Permutation>& gens) : degree_(gens[0].degree()) {
    std::vector<Permutation> start;
    for (const Permutation& g : gens) {
      if (!g.is_identity()) start.push_back(g);
    }
    if (start.empty()) return;  // trivial group
    new_level(first_moved(start));
    sgens_[0] = std::move(start);
    complete(0);
  }

  Integer order() const {
    Integer n = 1;
    for (const auto& t : tv_) n *= static_cast<long>(t.size());
    return n;
  }

 private:
  int first_moved(const std::vector<Permutation>& gens) const {
    for (const Permutation& g : gens) {
      for (int x = 0; x < degree_; ++x) {
        if (g(static_cast<std::uint16_t>(x)) != x) return x;
      }
    }
    return -1;
  }

  void new_level(int base_point) {
    base_.push_back(base_point);
    sgens_.emplace_back();
    tv_.emplace_back();
  }

  void rebuild_orbit(std::size_t lvl) {
    auto& t = tv_[lvl];
    t.clear();
    t.emplace(base_[lvl], Permutation::identity(degree_));
    std::deque<int> queue{base_[lvl]};
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (const Permutation& s : sgens_[lvl]) {
        int y = s(static_cast<std::uint16_t>(x));
        if (!t.count(y)) {
          t.emplace(y, s * t.at(x));
          queue.push_back(y);
        }
      }
    }
  }

  // Sift g through levels >= from; returns the residue and the level at which
  // sifting stopped (== base_.size() if it passed the whole chain).
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from) const {
    for (std::size_t l = from; l < base_.size(); ++l) {
      int x = g(static_cast<std::uint16_t>(base_[l]));
      auto it = tv_[l].find(x);
      if (it == tv_[l].end()) return {std::move(g), l};
      g = it->second.inverse() * g;
    }
    return {std::move(g), base_.size()};
  }

  // Establish that sgens_[lvl+1] generates the stabilizer of base_[lvl] in
  // <sgens_[lvl]> by sifting every Schreier generator; on any failure, add
  // the residue deeper, re-complete the affected levels, and re-verify.
  void complete(std::size_t lvl) {
    rebuild_orbit(lvl);
    bool clean = false;
    while (!clean) {
      clean = true;
      // Snapshot: new_level() may reallocate the per-level containers.
      std::vector<int> pts;
      pts.reserve(tv_[lvl].size());
      for (const auto& kv : tv_[lvl]) pts.push_back(kv.first);
      for (std::size_t pi = 0; pi < pts.size() && clean; ++pi) {
        for (std::size_t si = 0; si < sgens_[lvl].size() && clean; ++si) {
          const Permutation s = sgens_[lvl][si];
          const Permutation u = tv_[lvl].at(pts[pi]);
          const Permutation& u2 = tv_[lvl].at(s(static_cast<std::uint16_t>(pts[pi])));
          Permutation sg = u2.inverse() * (s * u);
          if (sg.is_identity()) continue;
          auto [res, at] = strip(std::move(sg), lvl + 1);
          if (res.is_identity()) continue;
          if (at == base_.size()) {
            for (int i = 0; i < degree_; ++i) {
              if (res(static_cast<std::uint16_t>(i)) != i) {
                new_level(i);
                break;
              }
            }
          }
          // The residue fixes base_[0..at-1]; keep the filtration nested by
          // installing it at every level from lvl+1 down to at.
          for (std::size_t l = lvl + 1; l <= at; ++l) sgens_[l].push_back(res);
          for (std::size_t l = at; l > lvl; --l) complete(l);
          clean = false;
        }
      }
    }
  }

  int degree_;
  std::vector<int> base_;
  std::vector<std::vector<Permutation>> sgens_;
  std::vector<std::unordered_map<int, Permutation>> tv_;
};

}  // namespace

void PermGroup::build_chain() const {
  Chain chain(gens_);
  order_ = chain.order();
}

const Integer& PermGroup::order() const {
  if (order_ == 0) build_chain();
  return order_;
}

const std::vector<Permutation>& PermGroup::elements(std::int64_t cap) const {
  if (!elements_.empty()) return elements_;
  std::unordered_map<Permutation, int, PermutationHash> seen;
  std::vector<Permutation> out;
  out.push_back(Permutation::identity(degree_));
  seen.emplace(out[0], 0);
  for (std::size_t head = 0; head < out.size(); ++head) {
    Permutation cur = out[head];  // copy: out may reallocate
    for (const Permutation& g : gens_) {
      Permutation next = cur * g;
      if (seen.emplace(next, static_cast<int>(out.size())).second) {
        if (static_cast<std::int64_t>(out.size()) >= cap) {
          throw CapExceeded("group exceeds element enumeration cap");
        }
        out.push_back(std::move(next));
      }
    }
  }
  elements_ = std::move(out);
  return elements_;
}

const ClassData& PermGroup::classes(std::int64_t cap) const {
  if (have_classes_) return classes_;
  const std::vector<Permutation>& els = elements(cap);

  std::unordered_map<Permutation, int, PermutationHash> index;
  index.reserve(els.size() * 2);
  for (std::size_t i = 0; i < els.size(); ++i) index.emplace(els[i], static_cast<int>(i));

  std::vector<Permutation> gen_inv;
  for (const Permutation& g : gens_) gen_inv.push_back(g.inverse());

  // Partition by conjugation orbits.
  std::vector<int> cls(els.size(), -1);
  struct Raw {
    Permutation rep;  // lexicographically smallest member
    std::int64_t size = 0;
    std::int64_t order = 0;
    std::vector<int> members;
  };
  std::vector<Raw> raw;
  for (std::size_t seed = 0; seed < els.size(); ++seed) {
    if (cls[seed] != -1) continue;
    int id = static_cast<int>(raw.size());
    raw.emplace_back();
    Raw& r = raw.back();
    r.rep = els[seed];
    cls[seed] = id;
    std::deque<int> queue{static_cast<int>(seed)};
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      r.members.push_back(x);
      if (els[x] < r.rep) r.rep = els[x];
      for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
        Permutation y = gens_[gi] * (els[x] * gen_inv[gi]);
        int yi = index.at(y);
        if (cls[yi] == -1) {
          cls[yi] = id;
          queue.push_back(yi);
        }
      }
    }
    r.size = static_cast<std::int64_t>(r.members.size());
    r.order = r.rep.order();
  }

  std::int64_t expo = 1;
  for (const Raw& r : raw) expo = lcm64(expo, r.order);
  std::vector<std::int64_t> primes = prime_divisors(expo);

  // Index-free power profile for tie-breaking: for each prime dividing the
  // exponent, the (element order, class size) of the class of rep^p.
  auto profile_of = [&](const Raw& r) {
    std::vector<std::pair<std::int64_t, std::int64_t>> prof;
    for (std::int64_t p : primes) {
      Permutation q = Permutation::identity(degree_);
      for (std::int64_t i = 0; i < p; ++i) q = r.rep * q;
      const Raw& target = raw[cls[index.at(q)]];
      prof.emplace_back(target.order, target.size);
    }
    return prof;
  };

  std::vector<int> order_ids(raw.size());
  std::iota(order_ids.begin(), order_ids.end(), 0);
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> profiles(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) profiles[i] = profile_of(raw[i]);
  std::sort(order_ids.begin(), order_ids.end(), [&](int a, int b) {
    const Raw& ra = raw[a];
    const Raw& rb = raw[b];
    if (ra.order != rb.order) return ra.order < rb.order;
    if (ra.size != rb.size) return ra.size < rb.size;
    if (profiles[a] != profiles[b]) return profiles[a] < profiles[b];
    return ra.rep < rb.rep;
  });

  ClassData cd;
  cd.exponent = expo;
  std::vector<int> new_id(raw.size());
  for (std::size_t pos = 0; pos < order_ids.size(); ++pos) {
    const Raw& r = raw[order_ids[pos]];
    new_id[order_ids[pos]] = static_cast<int>(pos);
    cd.class_reps.push_back(r.rep);
    cd.class_sizes.push_back(r.size);
    cd.element_orders.push_back(r.order);
  }

  class_of_.clear();
  class_of_.reserve(els.size() * 2);
  for (std::size_t i = 0; i < els.size(); ++i) {
    class_of_.emplace(els[i], new_id[cls[i]]);
  }

  cd.inverse_map.resize(cd.class_reps.size());
  for (std::size_t i = 0; i < cd.class_reps.size(); ++i) {
    cd.inverse_map[i] = class_of_.at(cd.class_reps[i].inverse());
  }
  for (std::int64_t p : primes) {
    std::vector<int> pm(cd.class_reps.size());
    for (std::size_t i = 0; i < cd.class_reps.size(); ++i) {
      Permutation q = Permutation::identity(degree_);
      for (std::int64_t t = 0; t < p; ++t) q = cd.class_reps[i] * q;
      pm[i] = class_of_.at(q);
    }
    cd.power_maps.emplace(p, std::move(pm));
  }

  classes_ = std::move(cd);
  have_classes_ = true;
  return classes_;
}

int PermGroup::class_index(const Permutation& p) const {
  classes();
  auto it = class_of_.find(p);
  if (it == class_of_.end()) throw ValidationError("element is not in the group");
  return it->second;
}

}  // namespace twirl
