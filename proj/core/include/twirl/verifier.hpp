#pragma once

// Numerical certification of code parameters claimed by the exact layer.
// A matrix representation given by exact cyclotomic generators is expanded
// to the full finite group, matched against a character table, averaged
// into the isotypic projector of a chosen character at a tensor power, and
// the resulting code space is checked against the Knill-Laflamme error
// conditions and for transversality of the product group action.
//
// Exact arithmetic is used for group expansion, class matching, and
// multiplicity cross-checks; projectors, code bases, and residuals are
// computed in complex double precision with scale-aware tolerances.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "twirl/chartab.hpp"
#include "twirl/ctbl_io.hpp"
#include "twirl/cyclotomic.hpp"
#include "twirl/errors.hpp"
#include "twirl/rational.hpp"

namespace twirl {

// Dense row-major complex matrix.  A deliberately small surface: the public
// API stays independent of the linear-algebra backend used internally.
struct Cmat {
  int rows = 0;
  int cols = 0;
  std::vector<std::complex<double>> a;  // row-major, rows*cols entries

  Cmat() = default;
  Cmat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  std::complex<double>& at(int r, int c) {
    return a[static_cast<std::size_t>(r) * cols + c];
  }
  const std::complex<double>& at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * cols + c];
  }
};

// A matrix group expanded from generator matrices: every element exactly,
// plus a cached complex embedding of each.  Element 0 is the identity; the
// element list order is the deterministic breadth-first closure order.
struct MatrixGroup {
  std::string name;
  int dim = 0;
  std::vector<std::vector<Cyclotomic>> elements;  // [elt][row*dim+col]
  std::vector<Cmat> embedded;                     // numeric copy per element
  std::vector<int> generator_indices;             // where each input generator landed
};

inline constexpr int kElementCap = 20000;
inline constexpr int kProjectorDimCap = 4096;

// Expands the group generated by rep.generators by breadth-first closure
// under exact cyclotomic arithmetic; distinct elements are never merged, no
// matter how close their embeddings.  Throws ValidationError when a
// generator is not square or not exactly unitary, CapExceeded when the
// closure grows past `cap`, and ValidationError when rep.order is nonzero
// and disagrees with the closure.
MatrixGroup expand_group(const MatRep& rep, int cap = kElementCap);

// Result of matching an expanded matrix group against a character table:
// the table row whose values are the element traces, and the conjugacy
// class of every element.
struct ClassMatch {
  int character_row = -1;     // row of the matched (faithful) character
  std::vector<int> class_of;  // per element: class index in the table
};

// Matches elements to conjugacy classes by exact invariants: element order,
// trace, and traces of powers propagated along the table's prime power
// maps, with class sizes as a global consistency check.  Tables with
// Galois-conjugate candidate rows are matched to the first row (in table
// order) admitting a consistent assignment.  Throws ValidationError when
// the group size, element orders, or traces cannot be reconciled with the
// table.
ClassMatch match_classes(const MatrixGroup& g, const CharacterTable& t);

// Isotypic projector of a character at the n-th tensor power:
//   P = (deg(lambda) / |G|) * sum_g conj(lambda(g)) rho(g)^(tensor n).
// `lambda_of` holds the exact value of lambda on each element (in element
// order).  Throws DimensionGuard when dim^n exceeds kProjectorDimCap and
// MultiplicityZero when the projector trace is numerically zero (the
// component does not appear at this power).  `threads` parallelizes over
// output rows; results are bit-identical for every thread count.
Cmat isotypic_projector(const MatrixGroup& g, const std::vector<Cyclotomic>& lambda_of,
                        int n, int threads = 1);

// Orthonormal basis (columns) of one irreducible code block inside the
// range of the projector P.  K is the block (= code) dimension; the range
// has dimension K*m for the multiplicity m.  For m = 1 the code space is
// the whole range.  For m > 1 the commutant is sampled (seeded) to split
// the range into m irreducible blocks, and the block with the smallest
// sampled eigenvalue is returned; DegenerateSplit is thrown when repeated
// samples fail to separate the blocks.  tol < 0 selects the scale-aware
// default 1e-9 * dim(P).
Cmat extract_code(const Cmat& P, const MatrixGroup& g, int n, int K,
                  std::uint64_t seed = 1, double tol = -1.0);

// Knill-Laflamme residuals of the code isometry C for error weights 1..w:
// entry w-1 is the largest || C^H E C - (tr(C^H E C)/K) I ||_F over error
// operators E given by matrix-unit tensors supported on exactly w of the n
// sites.  A residual below tolerance at all weights < d certifies code
// distance d.
std::vector<double> knill_laflamme_residuals(const Cmat& code, int n, int q, int w);

// Largest || rho(g)^(tensor n) C - C U_g ||_F over the group, where
// U_g = C^H rho(g)^(tensor n) C is the induced logical action.  A small
// residual certifies that the code space is invariant and the group acts
// transversally through the logical unitaries U_g.
double transversal_residual(const Cmat& code, const MatrixGroup& g, int n);

// Number of distinct logical unitaries U_g up to a global phase.
int count_logical_unitaries(const Cmat& code, const MatrixGroup& g, int n,
                            double tol = 1e-6);

// Everything the numerical layer certifies about one (character, power)
// pair, together with the extracted isometry.
struct CodeCertificate {
  std::string group;            // group name from the matrix input
  int n = 0;                    // tensor factors (code length)
  int K = 0;                    // code dimension = degree of lambda
  int q = 0;                    // local dimension = matrix size
  int lambda_row = -1;          // table row of lambda
  int f_row = -1;               // matched table row of the matrix character
  Integer group_order;          // number of expanded elements
  Integer multiplicity;         // exact multiplicity of lambda in f^n
  int projector_rank = 0;       // rounded trace of the projector
  double projector_error = 0;   // || P^2 - P ||_F
  double trace_error = 0;       // | tr(P) - K * multiplicity |
  std::vector<double> kl_residuals;  // weights 1..w
  int achieved_distance = 1;    // largest d with all residuals below tol
  double transversal_error = 0; // invariance residual of the code space
  int logical_unitaries = 0;    // distinct induced logicals up to phase
  double tolerance = 0;         // the tolerance all verdicts used
  Cmat code;                    // the isometry, q^n by K
};

// Full pipeline: expand the matrix group, match it to the table, compute
// the exact multiplicity of lambda in the n-th power of the matched
// character (MultiplicityZero when it vanishes), build the projector,
// extract a code block, and measure Knill-Laflamme residuals for weights
// 1..w plus the transversality residual.  tol < 0 selects the scale-aware
// default 1e-9 * q^n.
CodeCertificate certify(const MatRep& rep, const CharacterTable& t, int lambda_row,
                        int n, int w = 2, double tol = -1.0, std::uint64_t seed = 1,
                        int cap = kElementCap, int threads = 1);

}  // namespace twirl
