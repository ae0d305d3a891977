#include <doctest.h>

#include <nlohmann/json.hpp>

#include "qil/channel.hpp"
#include "qil/entropy.hpp"
#include "qil/rng.hpp"

using namespace qil;
using nlohmann::json;

namespace {

Mat pauli_z() {
    Mat z = Mat::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return z;
}

Mat random_qubit_rho(Rng& rng, std::size_t rank = 2) {
    SystemRegistry reg({SystemEntry::physical("Q", 2)});
    return random_density_matrix(reg, rank, rng).matrix();
}

// Oracle: apply a channel through its environment picture, independent of
// Channel::apply.
Mat dilation_route(const Channel& ch, const Mat& rho) {
    StinespringDilation dil = stinespring_dilation(ch);
    const auto d = static_cast<Eigen::Index>(ch.dim_in());
    const auto e = static_cast<Eigen::Index>(dil.env_dim);
    Mat joint = Mat::Zero(d * e, d * e);
    // embed rho (x) |0><0|_E
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) joint(i * e, j * e) = rho(i, j);
    joint = dil.unitary * joint * dil.unitary.adjoint();
    Mat out = Mat::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            for (Eigen::Index k = 0; k < e; ++k) out(i, j) += joint(i * e + k, j * e + k);
    return out;
}

}  // namespace

TEST_CASE("channel construction validates completeness") {
    CHECK_NOTHROW(Channel({Mat::Identity(2, 2)}));
    CHECK_NOTHROW(Channel({std::sqrt(0.5) * Mat::Identity(2, 2), std::sqrt(0.5) * pauli_z()}));
    CHECK_THROWS_AS(Channel({Mat::Identity(2, 2), Mat::Identity(2, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(Channel({}), std::invalid_argument);
    CHECK_THROWS_AS(Channel({Mat::Identity(2, 2), Mat::Identity(3, 3)}), std::invalid_argument);
}

TEST_CASE("channel application") {
    Rng rng(1);
    Mat rho = random_qubit_rho(rng);

    Channel id = preset_channel("identity", 0.0);
    CHECK((id.apply(rho) - rho).cwiseAbs().maxCoeff() < 1e-14);

    Channel depol = preset_channel("depolarizing", 1.0);
    CHECK((depol.apply(rho) - Mat::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(id.apply(Mat::Identity(3, 3) / 3.0), std::invalid_argument);
}

TEST_CASE("kraus route agrees with the dilation route") {
    Rng rng(2);
    for (const char* name : {"identity", "dephasing", "depolarizing", "amplitude_damping"}) {
        Channel ch = preset_channel(name, 0.37);
        for (int t = 0; t < 5; ++t) {
            Mat rho = random_qubit_rho(rng, 1 + rng.integer(2));
            CHECK((ch.apply(rho) - dilation_route(ch, rho)).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    Channel q3 = preset_channel("dephasing", 0.5, 3);
    Rng rng3(4);
    SystemRegistry reg({SystemEntry::physical("Q", 3)});
    Mat rho = random_density_matrix(reg, 3, rng3).matrix();
    CHECK((q3.apply(rho) - dilation_route(q3, rho)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("channel composition") {
    Rng rng(3);
    Channel deph = preset_channel("dephasing", 0.5);
    Channel id = preset_channel("identity", 0.0);
    Mat rho = random_qubit_rho(rng);

    CHECK((channel_compose(id, deph).apply(rho) - deph.apply(rho)).cwiseAbs().maxCoeff() < 1e-12);

    // sequential-application oracle
    Channel both = channel_compose(deph, deph);
    CHECK((both.apply(rho) - deph.apply(deph.apply(rho))).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(channel_compose(deph, preset_channel("dephasing", 0.5, 3)),
                    std::invalid_argument);
}

TEST_CASE("stinespring dilation structure") {
    Channel id = preset_channel("identity", 0.0);
    StinespringDilation dd = stinespring_dilation(id);
    CHECK(dd.env_dim == 1);
    CHECK((dd.unitary - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

    Channel deph = preset_channel("dephasing", 0.5);
    StinespringDilation dil = stinespring_dilation(deph);
    CHECK(dil.env_dim == 2);
    const auto n = dil.unitary.rows();
    CHECK((dil.unitary.adjoint() * dil.unitary - Mat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);

    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        Mat rho = random_qubit_rho(rng, 1 + rng.integer(2));
        CHECK((deph.apply(rho) - dilation_route(deph, rho)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("preset channels") {
    Rng rng(6);
    Mat rho = random_qubit_rho(rng);
    CHECK((preset_channel("depolarizing", 0.0).apply(rho) - rho).cwiseAbs().maxCoeff() < 1e-12);

    Mat one = Mat::Zero(2, 2);
    one(1, 1) = 1.0;
    Mat damped = preset_channel("amplitude_damping", 0.3).apply(one);
    CHECK(damped(0, 0).real() == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(damped(1, 1).real() == doctest::Approx(0.7).epsilon(1e-12));

    CHECK_THROWS_AS(preset_channel("nope", 0.5), std::invalid_argument);
    CHECK_THROWS_AS(preset_channel("dephasing", 1.5), std::invalid_argument);
    CHECK_THROWS_AS(preset_channel("amplitude_damping", 0.5, 3), std::invalid_argument);
}

TEST_CASE("holevo quantity") {
    Vec e0 = Vec::Zero(2), e1 = Vec::Zero(2), plus(2);
    e0(0) = 1.0;
    e1(1) = 1.0;
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);

    Ensemble orth(2, {{0.5, e0}, {0.5, e1}});
    CHECK(holevo_chi(orth, preset_channel("identity", 0.0)) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(holevo_chi(orth, preset_channel("depolarizing", 1.0)) ==
          doctest::Approx(0.0).epsilon(1e-12));

    // frozen from the eigendecomposition of the average state: H2((1+1/sqrt2)/2)
    Ensemble mixed(2, {{0.5, e0}, {0.5, plus}});
    CHECK(holevo_chi(mixed, preset_channel("identity", 0.0)) ==
          doctest::Approx(0.6008760366928562).epsilon(1e-12));

    CHECK_THROWS_AS(holevo_chi(orth, preset_channel("identity", 0.0, 3)), std::invalid_argument);
}

TEST_CASE("coherent information") {
    Rng rng(7);
    Mat rho = random_qubit_rho(rng);
    Mat h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    double s_rho = 0.0;
    for (Eigen::Index i = 0; i < 2; ++i)
        if (es.eigenvalues()(i) > 0) s_rho -= es.eigenvalues()(i) * std::log2(es.eigenvalues()(i));

    CHECK(coherent_information(rho, preset_channel("identity", 0.0)) ==
          doctest::Approx(s_rho).epsilon(1e-10));

    CHECK(coherent_information(Mat(Mat::Identity(2, 2) / 2.0),
                               preset_channel("depolarizing", 1.0)) ==
          doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("coherent information is purification independent") {
    // second route: purify with an extra unitary freedom on the reference
    Rng rng(8);
    Mat rho = random_qubit_rho(rng);
    Channel ch = preset_channel("dephasing", 0.3);
    const double direct = coherent_information(rho, ch);

    Eigen::SelfAdjointEigenSolver<Mat> es(rho);
    Mat ur = haar_matrix(2, rng);  // rotates the reference leg
    Vec psi = Vec::Zero(4);
    for (Eigen::Index k = 0; k < 2; ++k) {
        Vec term = Vec::Zero(4);
        for (Eigen::Index r = 0; r < 2; ++r)
            term.segment(2 * r, 2) = ur(r, k) * es.eigenvectors().col(k);
        psi += std::sqrt(std::max(0.0, es.eigenvalues()(k))) * term;
    }
    psi /= psi.norm();
    Mat joint = Mat::Zero(4, 4);
    for (const auto& k : ch.kraus()) {
        Vec kpsi(4);
        kpsi.segment(0, 2) = k * psi.segment(0, 2);
        kpsi.segment(2, 2) = k * psi.segment(2, 2);
        joint += kpsi * kpsi.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<Mat> js(joint, Eigen::EigenvaluesOnly);
    double s_joint = 0.0;
    for (Eigen::Index i = 0; i < 4; ++i)
        if (js.eigenvalues()(i) > 0) s_joint -= js.eigenvalues()(i) * std::log2(js.eigenvalues()(i));
    Eigen::SelfAdjointEigenSolver<Mat> os(ch.apply(rho), Eigen::EigenvaluesOnly);
    double s_out = 0.0;
    for (Eigen::Index i = 0; i < 2; ++i)
        if (os.eigenvalues()(i) > 0) s_out -= os.eigenvalues()(i) * std::log2(os.eigenvalues()(i));
    CHECK(direct == doctest::Approx(s_out - s_joint).epsilon(1e-10));
}

TEST_CASE("channel json round trip and presets") {
    Channel deph = preset_channel("dephasing", 0.5);
    Channel back = Channel::from_json(deph.to_json());
    Rng rng(9);
    Mat rho = random_qubit_rho(rng);
    CHECK((back.apply(rho) - deph.apply(rho)).cwiseAbs().maxCoeff() < 1e-12);

    json preset = {{"preset", "amplitude_damping"}, {"param", 0.3}};
    Channel ad = Channel::from_json(preset);
    CHECK(ad.kraus().size() == 2);

    json bad = {{"dim_in", 2}, {"dim_out", 2}, {"kraus", json::array()}};
    CHECK_THROWS_AS(Channel::from_json(bad), std::invalid_argument);
}

TEST_CASE("ensemble validation and json") {
    Vec e0 = Vec::Zero(2);
    e0(0) = 1.0;
    CHECK_THROWS_AS(Ensemble(2, {{0.5, e0}, {0.4, e0}}), std::invalid_argument);
    CHECK_THROWS_AS(Ensemble(2, {{1.0, Vec::Zero(2)}}), std::invalid_argument);

    Ensemble ens(2, {{1.0, e0}});
    Ensemble back = Ensemble::from_json(ens.to_json());
    CHECK(back.dim() == 2);
    CHECK(back.items()[0].prob == 1.0);
}
