#pragma once

// Character-theoretic engine for twisted unitary groups: exact inner
// products, the ||lambda*f|| = 1 criterion, pair search with Galois-orbit
// grouping, minimal tensor powers, Haar moments, t-moment checks, Weil-family
// degree formulas, and code-parameter reports.

#include <cstdint>
#include <string>
#include <vector>

#include "twirl/chartab.hpp"
#include "twirl/cyclotomic.hpp"
#include "twirl/rational.hpp"

namespace twirl {

// Exact inner product (1/|G|) sum_c |C_c| a(c) conj(b(c)) of two character
// rows; throws NonIntegerResult unless it is a nonnegative integer.
Integer inner_product(const CharacterTable& t, int a, int b);
Integer inner_product_rows(const CharacterTable& t, const std::vector<Cyclotomic>& a,
                           const std::vector<Cyclotomic>& b);

// norm(chi) := <chi, chi>.
Integer norm_of_row(const CharacterTable& t, const std::vector<Cyclotomic>& values);

// Pointwise product of two rows: the character of the tensor product.
std::vector<Cyclotomic> product_character(const CharacterTable& t, int a, int b);

// Classes where the character attains its degree; their total size is the
// order of the kernel of the underlying representation.
struct KernelInfo {
  std::vector<int> classes;
  Integer size;
  bool is_faithful = false;  // size == 1
};
KernelInfo kernel_classes(const CharacterTable& t, int a);

// ker(f) contained in ker(lambda)?  When false, <lambda, f^n> = 0 for all n.
bool kernel_contained(const CharacterTable& t, int f, int lambda);

// ||lambda*f|| == 1, the twisted unitary 1-group criterion (f faithful).
bool is_twisted_1group(const CharacterTable& t, int f, int lambda);

// Smallest n with <lambda, f^n> > 0.
struct MinN {
  enum class Status { Found, NotFound, Never };
  Status status = Status::NotFound;
  int n = 0;                // meaningful when Found
  Integer multiplicity;     // <lambda, f^n> at that n
  int searched_up_to = 0;   // the n_max that was scanned
};
MinN min_n(const CharacterTable& t, int f, int lambda, int n_max = 24);

// A pair (f faithful, lambda) with ||lambda*f|| = 1.
struct AppPair {
  int f = -1;       // row index of the faithful character
  int lambda = -1;  // row index of the twist character
  Integer q;        // degree of f
  Integer K;        // degree of lambda
  Integer kernel_lambda_size;
  Integer transversal_order;  // |G| / kernel_lambda_size
  MinN min_n;
  int galois_orbit = -1;  // equivalence-class id; see app_pairs
};

// All such pairs, grouped into equivalence classes.  Two pairs are
// equivalent when a single symmetry maps f -> f' and lambda -> lambda'
// simultaneously; the symmetries considered are Galois automorphisms (acting
// value-wise on rows) and table automorphisms (class relabelings preserving
// sizes, orders, power maps and the inverse map, e.g. those induced by outer
// group automorphisms).  Both leave every derived quantity -- degrees,
// kernels, multiplicities, minimal n -- unchanged, so members of one class
// describe the same code.  One-dimensional lambda (the trivial character and
// its linear relatives) forms degenerate K = 1 pairs that encode nothing;
// those are excluded unless requested.
std::vector<AppPair> app_pairs(const CharacterTable& t, bool include_trivial = false,
                               int n_max = 24);

// Exact Haar moment: integral of |tr U|^{2t} over U(q); equals the number of
// permutations of t letters with no decreasing subsequence longer than q
// (sum over partitions of t with at most q parts of the squared
// standard-tableau count), and t! whenever t <= q.
Integer haar_moment(std::int64_t q, int t);

// (1/|G|) sum_c |C_c| |lambda(c)|^{2t} == haar_moment(deg lambda, t)?
bool unitary_t_check(const CharacterTable& t, int lambda, int tt);

// Scalar twisted moment (1/|G|) sum_c |C_c| |lambda(c)|^2 |f(c)|^{2t} and
// whether it equals haar_moment(deg f, t).  At t = 1 this is ||lambda*f||.
struct TwistedMoment {
  Integer moment;
  bool matches_haar = false;
};
TwistedMoment twisted_t_moment(const CharacterTable& t, int f, int lambda, int tt);

// Weil-family degree bookkeeping.
enum class FamilyTag { Sp2b3, SUb2 };
struct FamilyParams {
  FamilyTag tag = FamilyTag::Sp2b3;
  int b = 0;
  std::vector<Integer> degrees;  // Sp: {eta, xi}; SU: {zeta0, zeta1, zeta2}
  Integer K;                     // degree of lambda
  Integer q;                     // degree of the faithful f
  bool applicable = true;        // SU only: false when 3 divides b
};

// Sp(2b,3) Weil characters: degrees (3^b-1)/2 and (3^b+1)/2; the
// even-dimensional one is faithful and plays f, the other is lambda.
FamilyParams sp_weil_params(int b);

// SU(b,2) Weil characters: zeta_{b,0} of degree (2^b+2(-1)^b)/3 (f) and
// zeta_{b,1}, zeta_{b,2} of degree (2^b-(-1)^b)/3 (lambda); not applicable
// when 3 divides b (zeta_{b,0} then has a kernel of size 3).
FamilyParams su_weil_params(int b);

// Code parameters ((n, K, d))_q implied by an APP pair at its minimal n.
struct CodeReport {
  int n = 0;
  Integer K;
  int d = 2;  // from the twisted-1-group property; upgrades need more evidence
  Integer q;
  std::string group_name;
  Integer group_order;
  Integer transversal_order;
  Integer multiplicity;          // <lambda, f^n> at the reported n
  int max_unitary_t = 0;         // largest t <= t_max passing unitary_t_check
  bool twisted_2_matches = false;  // twisted_t_moment(f, lambda, 2) agreement
};
CodeReport code_report(const CharacterTable& t, const AppPair& pair, int t_max = 6);

}  // namespace twirl
