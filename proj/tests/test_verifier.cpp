#include <doctest.h>

#include <twirl/chartab.hpp>
#include <twirl/ctbl_io.hpp>
#include <twirl/errors.hpp>
#include <twirl/twist.hpp>
#include <twirl/verifier.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

using namespace twirl;

namespace {

std::string fixture(const char* name) {
    return std::string(TWIRL_FIXTURE_DIR) + "/" + name;
}

const MatRep& rep_2o() {
    static MatRep r = parse_matrep(read_text_file(fixture("2o.mat")));
    return r;
}
const MatRep& rep_2i() {
    static MatRep r = parse_matrep(read_text_file(fixture("2i.mat")));
    return r;
}
const MatRep& rep_s72() {
    static MatRep r = parse_matrep(read_text_file(fixture("sigma72phi.mat")));
    return r;
}

const CharacterTable& table_2o() {
    static CharacterTable t = compute_table(parse_permgroup(read_text_file(fixture("2o.pg"))));
    return t;
}
const CharacterTable& table_2i() {
    static CharacterTable t = compute_table(parse_permgroup(read_text_file(fixture("2i.pg"))));
    return t;
}
const CharacterTable& table_s72() {
    static CharacterTable t =
        compute_table(parse_permgroup(read_text_file(fixture("sigma72phi.pg"))));
    return t;
}

const MatrixGroup& group_2o() {
    static MatrixGroup g = expand_group(rep_2o());
    return g;
}
const MatrixGroup& group_2i() {
    static MatrixGroup g = expand_group(rep_2i());
    return g;
}
const MatrixGroup& group_s72() {
    static MatrixGroup g = expand_group(rep_s72());
    return g;
}

// The unique table row of the given degree whose kernel has the given order.
int row_with_degree_and_kernel(const CharacterTable& t, long degree, long kernel) {
    int found = -1;
    for (int i = 0; i < t.num_characters(); ++i) {
        if (t.degree(i) != degree) continue;
        if (kernel_classes(t, i).size != kernel) continue;
        REQUIRE(found == -1);
        found = i;
    }
    REQUIRE(found != -1);
    return found;
}

// Exact value of table row `row` on every group element.
std::vector<Cyclotomic> row_on_elements(const CharacterTable& t, int row,
                                        const ClassMatch& m) {
    std::vector<Cyclotomic> out;
    out.reserve(m.class_of.size());
    for (int c : m.class_of) out.push_back(t.characters[row][c]);
    return out;
}

// Pointwise n-th power of a character row (the character of f^{tensor n}).
std::vector<Cyclotomic> row_power(const CharacterTable& t, int row, int n) {
    std::vector<Cyclotomic> out(t.num_classes(), Cyclotomic(1));
    for (int k = 0; k < n; ++k)
        for (int c = 0; c < t.num_classes(); ++c) out[c] = out[c] * t.characters[row][c];
    return out;
}

double frob(const Cmat& m) {
    double s = 0;
    for (const auto& z : m.a) s += std::norm(z);
    return std::sqrt(s);
}

// || A^H A - I ||_F for a tall matrix A.
double isometry_defect(const Cmat& c) {
    double s = 0;
    for (int i = 0; i < c.cols; ++i)
        for (int j = 0; j < c.cols; ++j) {
            std::complex<double> z = 0;
            for (int r = 0; r < c.rows; ++r) z += std::conj(c.at(r, i)) * c.at(r, j);
            if (i == j) z -= 1.0;
            s += std::norm(z);
        }
    return std::sqrt(s);
}

// || P C - C ||_F: the columns of C lie in the fixed space of P.
double range_defect(const Cmat& p, const Cmat& c) {
    double s = 0;
    for (int r = 0; r < p.rows; ++r)
        for (int j = 0; j < c.cols; ++j) {
            std::complex<double> z = -c.at(r, j);
            for (int k = 0; k < p.cols; ++k) z += p.at(r, k) * c.at(k, j);
            s += std::norm(z);
        }
    return std::sqrt(s);
}

// One-generator representation of the cyclic group of order n.
MatRep cyclic_rep(int n, Integer declared) {
    MatRep r;
    r.name = "C" + std::to_string(n);
    r.dim = 1;
    r.order = declared;
    r.generators = {{{Cyclotomic::zeta(n, 1)}}};
    return r;
}

}  // namespace

TEST_CASE("expansion reaches the declared order and starts at the identity") {
    struct Row {
        const MatrixGroup* g;
        const MatRep* r;
        int order;
    };
    for (const auto& [g, r, order] : {Row{&group_2o(), &rep_2o(), 48},
                                      Row{&group_2i(), &rep_2i(), 120},
                                      Row{&group_s72(), &rep_s72(), 216}}) {
        CHECK(g->name == r->name);
        CHECK(g->dim == r->dim);
        CHECK(g->elements.size() == static_cast<std::size_t>(order));
        CHECK(g->embedded.size() == g->elements.size());
        // element 0 is the exact identity
        for (int i = 0; i < g->dim; ++i)
            for (int j = 0; j < g->dim; ++j)
                CHECK(g->elements[0][static_cast<std::size_t>(i) * g->dim + j] ==
                      Cyclotomic(i == j ? 1 : 0));
        // each input generator is recoverable at its recorded index
        REQUIRE(g->generator_indices.size() == r->generators.size());
        for (std::size_t k = 0; k < r->generators.size(); ++k) {
            const auto& elt = g->elements[g->generator_indices[k]];
            for (int i = 0; i < g->dim; ++i)
                for (int j = 0; j < g->dim; ++j)
                    CHECK(elt[static_cast<std::size_t>(i) * g->dim + j] ==
                          r->generators[k][i][j]);
        }
        // the numeric embedding agrees with the exact entries
        const auto& last = g->elements.back();
        const auto& lastm = g->embedded.back();
        for (int i = 0; i < g->dim; ++i)
            for (int j = 0; j < g->dim; ++j) {
                auto z = last[static_cast<std::size_t>(i) * g->dim + j].to_complex();
                CHECK(std::abs(z - lastm.at(i, j)) < 1e-12);
            }
    }
}

TEST_CASE("expansion keeps elements with nearby embeddings distinct") {
    // 720 rotations, adjacent ones under 0.01 apart in every entry; a
    // closure keyed on rounded numeric values would merge them.
    MatRep r = cyclic_rep(720, 720);
    MatrixGroup g = expand_group(r, 1000);
    CHECK(g.elements.size() == 720);
}

TEST_CASE("expansion validates unitarity, shape, and the declared order") {
    MatRep r;
    r.name = "bad";
    r.dim = 1;
    r.order = 2;
    r.generators = {{{Cyclotomic(2)}}};  // not unitary
    CHECK_THROWS_AS(expand_group(r), ValidationError);

    CHECK_THROWS_AS(expand_group(cyclic_rep(4, 5)), ValidationError);  // true order 4
    CHECK(expand_group(cyclic_rep(4, 4)).elements.size() == 4);
    CHECK(expand_group(cyclic_rep(4, 0)).elements.size() == 4);  // 0 = undeclared

    MatRep shape;
    shape.name = "ragged";
    shape.dim = 2;
    shape.order = 0;
    shape.generators = {{{Cyclotomic(1), Cyclotomic(0)}, {Cyclotomic(0)}}};
    CHECK_THROWS_AS(expand_group(shape), ValidationError);
}

TEST_CASE("expansion stops at the element cap") {
    CHECK_THROWS_AS(expand_group(cyclic_rep(720, 720), 100), CapExceeded);
    CHECK_THROWS_AS(expand_group(rep_2o(), 47), CapExceeded);
}

TEST_CASE("expansion is deterministic") {
    MatrixGroup a = expand_group(rep_2o());
    MatrixGroup b = expand_group(rep_2o());
    REQUIRE(a.elements.size() == b.elements.size());
    for (std::size_t i = 0; i < a.elements.size(); ++i) CHECK(a.elements[i] == b.elements[i]);
}

TEST_CASE("class matching reproduces the table's class data exactly") {
    const MatrixGroup& g = group_2o();
    const CharacterTable& t = table_2o();
    ClassMatch m = match_classes(g, t);

    REQUIRE(m.character_row >= 0);
    CHECK(t.degree(m.character_row) == 2);
    CHECK(kernel_classes(t, m.character_row).is_faithful);
    REQUIRE(m.class_of.size() == g.elements.size());
    CHECK(m.class_of[0] == 0);

    // class sizes add up
    std::vector<std::int64_t> counts(t.num_classes(), 0);
    for (int c : m.class_of) {
        REQUIRE(c >= 0);
        REQUIRE(c < t.num_classes());
        ++counts[c];
    }
    for (int c = 0; c < t.num_classes(); ++c) CHECK(counts[c] == t.class_sizes[c]);

    // traces of the matched row agree with the matrix traces exactly
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
        Cyclotomic tr(0);
        for (int d = 0; d < g.dim; ++d)
            tr = tr + g.elements[i][static_cast<std::size_t>(d) * g.dim + d];
        CHECK(tr == t.characters[m.character_row][m.class_of[i]]);
    }
}

TEST_CASE("class matching covers larger groups") {
    ClassMatch m = match_classes(group_s72(), table_s72());
    const CharacterTable& t = table_s72();
    CHECK(t.degree(m.character_row) == 3);
    CHECK(kernel_classes(t, m.character_row).is_faithful);
    std::vector<std::int64_t> counts(t.num_classes(), 0);
    for (int c : m.class_of) ++counts[c];
    for (int c = 0; c < t.num_classes(); ++c) CHECK(counts[c] == t.class_sizes[c]);
}

TEST_CASE("class matching rejects a table of the wrong group") {
    CHECK_THROWS_AS(match_classes(group_2o(), table_2i()), ValidationError);
    CHECK_THROWS_AS(match_classes(group_2i(), table_2o()), ValidationError);
}

TEST_CASE("isotypic projector traces match exact multiplicities") {
    const MatrixGroup& g = group_2o();
    const CharacterTable& t = table_2o();
    ClassMatch m = match_classes(g, t);
    int lam = row_with_degree_and_kernel(t, 2, 8);
    auto lam_of = row_on_elements(t, lam, m);

    Cmat p4 = isotypic_projector(g, lam_of, 4);
    REQUIRE(p4.rows == 16);
    std::complex<double> tr4 = 0;
    for (int i = 0; i < 16; ++i) tr4 += p4.at(i, i);
    CHECK(std::abs(tr4 - 2.0) < 1e-9);

    // hermitian
    double herm = 0;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            herm = std::max(herm, std::abs(p4.at(i, j) - std::conj(p4.at(j, i))));
    CHECK(herm < 1e-12);

    // idempotent
    Cmat sq(16, 16);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            std::complex<double> z = -p4.at(i, j);
            for (int k = 0; k < 16; ++k) z += p4.at(i, k) * p4.at(k, j);
            sq.at(i, j) = z;
        }
    CHECK(frob(sq) < 1e-9);

    // n = 6: trace = K * <lambda, f^6> computed in the exact layer
    Cmat p6 = isotypic_projector(g, lam_of, 6);
    std::complex<double> tr6 = 0;
    for (int i = 0; i < 64; ++i) tr6 += p6.at(i, i);
    Integer mult6 = inner_product_rows(t, row_power(t, m.character_row, 6),
                                       t.characters[lam]);
    CHECK(mult6 == 5);
    CHECK(std::abs(tr6 - 10.0) < 1e-8);
}

TEST_CASE("projector reports vanishing components and oversized spaces") {
    const MatrixGroup& g = group_2o();
    const CharacterTable& t = table_2o();
    ClassMatch m = match_classes(g, t);
    int lam = row_with_degree_and_kernel(t, 2, 8);
    auto lam_of = row_on_elements(t, lam, m);
    CHECK_THROWS_AS(isotypic_projector(g, lam_of, 3), MultiplicityZero);

    ClassMatch mi = match_classes(group_2i(), table_2i());
    auto lam_i = row_on_elements(table_2i(), mi.character_row, mi);
    CHECK_THROWS_AS(isotypic_projector(group_2i(), lam_i, 13), DimensionGuard);
}

TEST_CASE("projector is bit-identical across thread counts") {
    const MatrixGroup& g = group_2o();
    const CharacterTable& t = table_2o();
    ClassMatch m = match_classes(g, t);
    auto lam_of = row_on_elements(t, row_with_degree_and_kernel(t, 2, 8), m);
    Cmat p1 = isotypic_projector(g, lam_of, 4, 1);
    Cmat p4 = isotypic_projector(g, lam_of, 4, 4);
    REQUIRE(p1.a.size() == p4.a.size());
    for (std::size_t i = 0; i < p1.a.size(); ++i) {
        CHECK(p1.a[i].real() == p4.a[i].real());
        CHECK(p1.a[i].imag() == p4.a[i].imag());
    }
}

TEST_CASE("extracted code is an isometry inside the projector range") {
    const MatrixGroup& g = group_2o();
    const CharacterTable& t = table_2o();
    ClassMatch m = match_classes(g, t);
    auto lam_of = row_on_elements(t, row_with_degree_and_kernel(t, 2, 8), m);
    Cmat p = isotypic_projector(g, lam_of, 4);
    Cmat c = extract_code(p, g, 4, 2);
    REQUIRE(c.rows == 16);
    REQUIRE(c.cols == 2);
    CHECK(isometry_defect(c) < 1e-10);
    CHECK(range_defect(p, c) < 1e-9);
}

TEST_CASE("extraction splits higher multiplicity into irreducible blocks") {
    const MatrixGroup& g = group_2o();
    const CharacterTable& t = table_2o();
    ClassMatch m = match_classes(g, t);
    auto lam_of = row_on_elements(t, row_with_degree_and_kernel(t, 2, 8), m);
    Cmat p = isotypic_projector(g, lam_of, 6);

    Cmat c = extract_code(p, g, 6, 2);
    REQUIRE(c.rows == 64);
    REQUIRE(c.cols == 2);
    CHECK(isometry_defect(c) < 1e-9);
    CHECK(range_defect(p, c) < 1e-8);

    // an irreducible block is group-invariant: a failed split is not
    CHECK(transversal_residual(c, g, 6) < 1e-8);
    CHECK(count_logical_unitaries(c, g, 6) == 6);
    // every block of this component passes the weight-1 screen
    auto kl = knill_laflamme_residuals(c, 6, 2, 1);
    CHECK(kl[0] < 1e-8);

    // the same seed reproduces the block exactly; another seed still splits
    Cmat c2 = extract_code(p, g, 6, 2);
    REQUIRE(c2.a.size() == c.a.size());
    for (std::size_t i = 0; i < c.a.size(); ++i) CHECK(c.a[i] == c2.a[i]);
    Cmat c3 = extract_code(p, g, 6, 2, 99);
    CHECK(isometry_defect(c3) < 1e-9);
    CHECK(knill_laflamme_residuals(c3, 6, 2, 1)[0] < 1e-8);
}

TEST_CASE("extraction rejects impossible block sizes") {
    const MatrixGroup& g = group_2o();
    const CharacterTable& t = table_2o();
    ClassMatch m = match_classes(g, t);
    auto lam_of = row_on_elements(t, row_with_degree_and_kernel(t, 2, 8), m);
    Cmat p = isotypic_projector(g, lam_of, 4);  // rank 2
    CHECK_THROWS_AS(extract_code(p, g, 4, 3), ValidationError);
    Cmat zero(16, 16);
    CHECK_THROWS_AS(extract_code(zero, g, 4, 2), MultiplicityZero);
}

TEST_CASE("weight screening matches independently computed residuals") {
    // Four-qubit octahedral code: clean at weight 1, fails weight 2 at a
    // basis-independent 1/sqrt(6).
    const MatrixGroup& g = group_2o();
    const CharacterTable& t = table_2o();
    ClassMatch m = match_classes(g, t);
    auto lam_of = row_on_elements(t, row_with_degree_and_kernel(t, 2, 8), m);
    Cmat c = extract_code(isotypic_projector(g, lam_of, 4), g, 4, 2);
    auto kl = knill_laflamme_residuals(c, 4, 2, 2);
    REQUIRE(kl.size() == 2);
    CHECK(kl[0] < 1e-10);
    CHECK(kl[1] > 0.40);
    CHECK(kl[1] < 0.42);
}

TEST_CASE("weight screening on seven qubits reaches distance three") {
    const MatrixGroup& g = group_2i();
    const CharacterTable& t = table_2i();
    ClassMatch m = match_classes(g, t);
    // lambda = the other two-dimensional faithful row
    int lam = -1;
    for (int i = 0; i < t.num_characters(); ++i)
        if (t.degree(i) == 2 && i != m.character_row) lam = i;
    REQUIRE(lam >= 0);
    auto lam_of = row_on_elements(t, lam, m);
    Cmat c = extract_code(isotypic_projector(g, lam_of, 7), g, 7, 2);
    auto kl = knill_laflamme_residuals(c, 7, 2, 3);
    REQUIRE(kl.size() == 3);
    CHECK(kl[0] < 1e-9);
    CHECK(kl[1] < 1e-9);
    CHECK(kl[2] > 0.20);
    CHECK(kl[2] < 0.22);
}

TEST_CASE("random subspaces fail the weight-one screen") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    Cmat c(16, 2);
    for (auto& z : c.a) z = {nd(rng), nd(rng)};
    // Gram-Schmidt
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < j; ++k) {
            std::complex<double> dot = 0;
            for (int r = 0; r < 16; ++r) dot += std::conj(c.at(r, k)) * c.at(r, j);
            for (int r = 0; r < 16; ++r) c.at(r, j) -= dot * c.at(r, k);
        }
        double nrm = 0;
        for (int r = 0; r < 16; ++r) nrm += std::norm(c.at(r, j));
        nrm = std::sqrt(nrm);
        for (int r = 0; r < 16; ++r) c.at(r, j) /= nrm;
    }
    REQUIRE(isometry_defect(c) < 1e-12);
    CHECK(knill_laflamme_residuals(c, 4, 2, 1)[0] > 1e-3);
}

TEST_CASE("residuals are invariant under a change of code basis") {
    const MatrixGroup& g = group_2o();
    const CharacterTable& t = table_2o();
    ClassMatch m = match_classes(g, t);
    auto lam_of = row_on_elements(t, row_with_degree_and_kernel(t, 2, 8), m);
    Cmat c = extract_code(isotypic_projector(g, lam_of, 4), g, 4, 2);

    // rotate by a fixed 2x2 unitary
    std::complex<double> i01(0, 1);
    std::complex<double> u00 = 0.6, u01 = 0.8 * i01, u10 = 0.8, u11 = -0.6 * i01;
    Cmat cr(16, 2);
    for (int r = 0; r < 16; ++r) {
        cr.at(r, 0) = c.at(r, 0) * u00 + c.at(r, 1) * u10;
        cr.at(r, 1) = c.at(r, 0) * u01 + c.at(r, 1) * u11;
    }
    auto kl = knill_laflamme_residuals(c, 4, 2, 2);
    auto klr = knill_laflamme_residuals(cr, 4, 2, 2);
    CHECK(std::abs(kl[0] - klr[0]) < 1e-9);
    CHECK(std::abs(kl[1] - klr[1]) < 1e-9);
    CHECK(std::abs(transversal_residual(c, g, 4) - transversal_residual(cr, g, 4)) < 1e-9);
    CHECK(count_logical_unitaries(cr, g, 4) == count_logical_unitaries(c, g, 4));
}

TEST_CASE("transversal action and logical group sizes") {
    const MatrixGroup& g = group_2o();
    const CharacterTable& t = table_2o();
    ClassMatch m = match_classes(g, t);
    auto lam_of = row_on_elements(t, row_with_degree_and_kernel(t, 2, 8), m);
    Cmat c = extract_code(isotypic_projector(g, lam_of, 4), g, 4, 2);
    CHECK(transversal_residual(c, g, 4) < 1e-10);
    // the two-dimensional twist factors through a six-element quotient
    CHECK(count_logical_unitaries(c, g, 4) == 6);
}

TEST_CASE("full certification of the four-qubit octahedral code") {
    const CharacterTable& t = table_2o();
    int lam = row_with_degree_and_kernel(t, 2, 8);
    CodeCertificate cert = certify(rep_2o(), t, lam, 4, 2);

    CHECK(cert.group == "2O");
    CHECK(cert.n == 4);
    CHECK(cert.K == 2);
    CHECK(cert.q == 2);
    CHECK(cert.lambda_row == lam);
    CHECK(t.degree(cert.f_row) == 2);
    CHECK(kernel_classes(t, cert.f_row).is_faithful);
    CHECK(cert.group_order == 48);
    CHECK(cert.multiplicity == 1);
    CHECK(cert.projector_rank == 2);
    CHECK(cert.projector_error < 1e-9);
    CHECK(cert.trace_error < 1e-9);
    REQUIRE(cert.kl_residuals.size() == 2);
    CHECK(cert.kl_residuals[0] < cert.tolerance);
    CHECK(cert.kl_residuals[1] > 0.40);
    CHECK(cert.achieved_distance == 2);
    CHECK(cert.transversal_error < 1e-9);
    CHECK(cert.logical_unitaries == 6);
    CHECK(cert.tolerance == doctest::Approx(1e-9 * 16).epsilon(1e-12));
    CHECK(cert.code.rows == 16);
    CHECK(cert.code.cols == 2);
}

TEST_CASE("full certification of the seven-qubit icosahedral code") {
    const CharacterTable& t = table_2i();
    ClassMatch m = match_classes(group_2i(), t);
    int lam = -1;
    for (int i = 0; i < t.num_characters(); ++i)
        if (t.degree(i) == 2 && i != m.character_row) lam = i;
    REQUIRE(lam >= 0);
    CodeCertificate cert = certify(rep_2i(), t, lam, 7, 3);

    CHECK(cert.n == 7);
    CHECK(cert.K == 2);
    CHECK(cert.q == 2);
    CHECK(cert.group_order == 120);
    CHECK(cert.multiplicity == 1);
    CHECK(cert.projector_rank == 2);
    REQUIRE(cert.kl_residuals.size() == 3);
    CHECK(cert.kl_residuals[0] < cert.tolerance);
    CHECK(cert.kl_residuals[1] < cert.tolerance);
    CHECK(cert.kl_residuals[2] > 0.20);
    CHECK(cert.achieved_distance == 3);
    CHECK(cert.transversal_error < 1e-8);
    CHECK(cert.logical_unitaries == 60);
}

TEST_CASE("full certification of the three-qutrit code") {
    const CharacterTable& t = table_s72();
    int lam = -1;
    for (int i = 0; i < t.num_characters(); ++i)
        if (t.degree(i) == 2) lam = i;  // the unique two-dimensional row
    REQUIRE(lam >= 0);
    CodeCertificate cert = certify(rep_s72(), t, lam, 3, 2);

    CHECK(cert.n == 3);
    CHECK(cert.K == 2);
    CHECK(cert.q == 3);
    CHECK(cert.group_order == 216);
    CHECK(cert.multiplicity == 1);
    REQUIRE(cert.kl_residuals.size() == 2);
    CHECK(cert.kl_residuals[0] < cert.tolerance);
    CHECK(cert.kl_residuals[1] > 0.23);
    CHECK(cert.kl_residuals[1] < 0.25);
    CHECK(cert.achieved_distance == 2);
    CHECK(cert.transversal_error < 1e-8);
    CHECK(cert.logical_unitaries == 4);

    // the pair scan singles out the same twist at the same length
    bool seen = false;
    for (const AppPair& p : app_pairs(t)) {
        if (p.min_n.status == MinN::Status::Found && p.min_n.n == 3) {
            CHECK(p.lambda == lam);
            CHECK(p.min_n.multiplicity == 1);
            seen = true;
        }
    }
    CHECK(seen);
}

TEST_CASE("certification rejects vanishing components cheaply") {
    const CharacterTable& t = table_2o();
    int lam = row_with_degree_and_kernel(t, 2, 8);
    CHECK_THROWS_AS(certify(rep_2o(), t, lam, 3), MultiplicityZero);
}

TEST_CASE("certification handles higher multiplicity end to end") {
    const CharacterTable& t = table_2o();
    int lam = row_with_degree_and_kernel(t, 2, 8);
    CodeCertificate cert = certify(rep_2o(), t, lam, 6, 2);
    CHECK(cert.multiplicity == 5);
    CHECK(cert.projector_rank == 10);
    CHECK(cert.kl_residuals[0] < cert.tolerance);
    CHECK(cert.achieved_distance >= 2);
    CHECK(cert.logical_unitaries == 6);
    CHECK(cert.code.rows == 64);
    CHECK(cert.code.cols == 2);
}

TEST_CASE("certification rejects an out-of-range twist row") {
    const CharacterTable& t = table_2o();
    CHECK_THROWS_AS(certify(rep_2o(), t, t.num_characters(), 4), ValidationError);
    CHECK_THROWS_AS(certify(rep_2o(), t, -1, 4), ValidationError);
}
