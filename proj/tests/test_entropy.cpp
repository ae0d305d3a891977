#include <doctest.h>

#include "qil/entropy.hpp"
#include "qil/rng.hpp"

using namespace qil;

namespace {

SystemRegistry qubits(std::initializer_list<const char*> labels) {
    std::vector<SystemEntry> entries;
    for (const char* l : labels) entries.push_back(SystemEntry::physical(l, 2));
    return SystemRegistry(std::move(entries));
}

DensityMatrix bell_rho(const char* x, const char* y) {
    Vec v(4);
    v << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
    return DensityMatrix::from_pure(PureState(qubits({x, y}), v));
}

DensityMatrix classically_correlated(const char* x, const char* y) {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = m(3, 3) = 0.5;
    return DensityMatrix(qubits({x, y}), m);
}

DensityMatrix plus_projector(const char* label) {
    Mat m = Mat::Constant(2, 2, 0.5);
    return DensityMatrix(qubits({label}), m);
}

}  // namespace

TEST_CASE("shannon entropy") {
    CHECK(shannon(ProbabilityVector(Eigen::Vector2d(1.0, 0.0))) == 0.0);
    CHECK(shannon(ProbabilityVector(Eigen::Vector2d(0.5, 0.5))) == doctest::Approx(1.0));
    // frozen from direct evaluation of -sum p log2 p
    CHECK(shannon(ProbabilityVector(Eigen::Vector2d(0.9, 0.1))) ==
          doctest::Approx(0.4689955935892812).epsilon(1e-12));
}

TEST_CASE("probability vector clamps rounding noise and validates") {
    ProbabilityVector p(Eigen::Vector2d(1.0 + 5e-10, -5e-10));
    CHECK(p[1] == 0.0);
    CHECK_THROWS_AS(ProbabilityVector(Eigen::Vector2d(0.5, 0.4)), std::invalid_argument);
    CHECK_THROWS_AS(ProbabilityVector(Eigen::Vector2d(1.1, -0.1)), std::invalid_argument);
}

TEST_CASE("von Neumann entropy") {
    PureState basis = PureState::basis(qubits({"Q"}), 0);
    CHECK(von_neumann(DensityMatrix::from_pure(basis)) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK(von_neumann(DensityMatrix::maximally_mixed(qubits({"Q"}))) == doctest::Approx(1.0));

    SystemRegistry r3({SystemEntry::physical("Q", 3)});
    Mat dyadic = Mat::Zero(3, 3);
    dyadic(0, 0) = 0.5;
    dyadic(1, 1) = 0.25;
    dyadic(2, 2) = 0.25;
    CHECK(von_neumann(DensityMatrix(r3, dyadic)) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("diagonal distribution") {
    DensityMatrix rho_b = partial_trace(bell_rho("X", "B"), {"B"});
    ProbabilityVector p = diagonal_distribution(rho_b, "B");
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.5));

    PureState one = PureState::basis(qubits({"Q"}), 1);
    ProbabilityVector q = diagonal_distribution(DensityMatrix::from_pure(one), "Q");
    CHECK(q[0] == 0.0);
    CHECK(q[1] == doctest::Approx(1.0));

    // coherences are ignored: |+><+| has a uniform diagonal
    ProbabilityVector r = diagonal_distribution(plus_projector("Q"), "Q");
    CHECK(r[0] == doctest::Approx(0.5));

    CHECK_THROWS_AS(diagonal_distribution(rho_b, "missing"), std::invalid_argument);
}

TEST_CASE("classicize") {
    DensityMatrix diag = classically_correlated("X", "Y");
    CHECK((classicize(diag, {"X", "Y"}).matrix() - diag.matrix()).cwiseAbs().maxCoeff() == 0.0);

    DensityMatrix dephased = classicize(plus_projector("Q"), {"Q"});
    CHECK((dephased.matrix() - Mat::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);

    // idempotent and trace preserving on random states
    Rng rng(31);
    DensityMatrix rho = random_density_matrix(qubits({"X", "Y"}), 3, rng);
    DensityMatrix once = classicize(rho, {"Y"});
    DensityMatrix twice = classicize(once, {"Y"});
    CHECK((once.matrix() - twice.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(once.matrix().trace().real() - 1.0) < 1e-12);

    // S(X^c) = H(X) for a fully classicized single system
    DensityMatrix rx = random_density_matrix(qubits({"X"}), 2, rng);
    CHECK(von_neumann(classicize(rx, {"X"})) ==
          doctest::Approx(shannon(diagonal_distribution(rx, "X"))).epsilon(1e-12));
}

TEST_CASE("directed entanglement") {
    CHECK(directed_entanglement(bell_rho("X", "Y"), {"X"}, {"Y"}) == doctest::Approx(1.0));

    Rng rng(17);
    DensityMatrix prod = tensor(DensityMatrix::from_pure(random_pure_state(qubits({"X"}), rng)),
                                DensityMatrix::from_pure(random_pure_state(qubits({"Y"}), rng)));
    CHECK(directed_entanglement(prod, {"X"}, {"Y"}) == doctest::Approx(0.0).epsilon(1e-10));

    CHECK(directed_entanglement(classically_correlated("X", "Y"), {"X"}, {"Y"}) ==
          doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(directed_entanglement(prod, {"X"}, {"X"}), std::invalid_argument);
}

TEST_CASE("mutual information of the diagonal random variables") {
    CHECK(mutual_information_rv(classically_correlated("A", "B"), {"A"}, {"B"}) ==
          doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(23);
    DensityMatrix prod = tensor(random_density_matrix(qubits({"A"}), 2, rng),
                                random_density_matrix(qubits({"B"}), 2, rng));
    CHECK(mutual_information_rv(prod, {"A"}, {"B"}) == doctest::Approx(0.0).epsilon(1e-10));

    // oracle: direct H(A) + H(B) - H(AB) from the 4-entry joint diagonal
    DensityMatrix rho = random_density_matrix(qubits({"A", "B"}), 3, rng);
    Eigen::Vector4d joint = rho.matrix().diagonal().real();
    joint /= joint.sum();
    Eigen::Vector2d pa(joint(0) + joint(1), joint(2) + joint(3));
    Eigen::Vector2d pb(joint(0) + joint(2), joint(1) + joint(3));
    const double expected = shannon(ProbabilityVector(pa)) + shannon(ProbabilityVector(pb)) -
                            shannon(ProbabilityVector(joint));
    CHECK(mutual_information_rv(rho, {"A"}, {"B"}) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("thermodynamic entropy") {
    // B maximally entangled with Q: perfect knowledge, S_T = 0
    CHECK(thermodynamic_entropy(bell_rho("Q", "B"), {"Q"}, {"B"}) ==
          doctest::Approx(0.0).epsilon(1e-12));

    // B disentangled from a maximally mixed Q: S_T = S(Q) = 1
    DensityMatrix joint = tensor(DensityMatrix::maximally_mixed(qubits({"Q"})),
                                 DensityMatrix::from_pure(PureState::basis(qubits({"B"}), 0)));
    CHECK(thermodynamic_entropy(joint, {"Q"}, {"B"}) == doctest::Approx(1.0).epsilon(1e-12));

    // bound check against the eigendecomposition of rho_Q
    Rng rng(29);
    for (int t = 0; t < 50; ++t) {
        DensityMatrix rho = random_density_matrix(qubits({"Q", "B"}), 1 + (t % 4), rng);
        const double st = thermodynamic_entropy(rho, {"Q"}, {"B"});
        const double sq = von_neumann(partial_trace(rho, {"Q"}));
        CHECK(st >= -1e-9);
        CHECK(st <= sq + 1e-9);
    }
}
