#include "qil/channel.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <stdexcept>

#include "qil/entropy.hpp"
#include "qil/tolerances.hpp"

namespace qil {

using nlohmann::json;

namespace {

double entropy_of_matrix(const Mat& rho) {
    Mat h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> solver(h, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double x = solver.eigenvalues()(i);
        if (x < -tol::psd * scale)
            throw std::runtime_error("entropy: eigenvalue below -tol_psd");
        if (x > 0.0) s -= x * std::log2(x);
    }
    return s;
}

json matrix_to_json(const Mat& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out.push_back({m(i, j).real(), m(i, j).imag()});
    return out;
}

Mat matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows * cols)
        throw std::invalid_argument("channel json: kraus entry has wrong length");
    Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index c = 0; c < m.cols(); ++c, ++k) {
            const auto& e = j[k];
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("channel json: entries must be [re, im] pairs");
            m(i, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    return m;
}

}  // namespace

Channel::Channel(std::vector<Mat> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw std::invalid_argument("channel: kraus list must be nonempty");
    dim_out_ = static_cast<std::size_t>(kraus_.front().rows());
    dim_in_ = static_cast<std::size_t>(kraus_.front().cols());
    if (dim_in_ < 1 || dim_out_ < 1) throw std::invalid_argument("channel: empty kraus operator");
    Mat sum = Mat::Zero(static_cast<Eigen::Index>(dim_in_), static_cast<Eigen::Index>(dim_in_));
    for (const auto& k : kraus_) {
        if (static_cast<std::size_t>(k.rows()) != dim_out_ ||
            static_cast<std::size_t>(k.cols()) != dim_in_)
            throw std::invalid_argument("channel: kraus operators have inconsistent shapes");
        sum += k.adjoint() * k;
    }
    const double dev =
        (sum - Mat::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
    if (dev > tol::unitary)
        throw std::invalid_argument("channel: completeness sum deviates from identity by " +
                                    std::to_string(dev));
}

Mat Channel::apply(const Mat& rho) const {
    if (static_cast<std::size_t>(rho.rows()) != dim_in_ ||
        static_cast<std::size_t>(rho.cols()) != dim_in_)
        throw std::invalid_argument("channel: input dimension mismatch");
    Mat out = Mat::Zero(static_cast<Eigen::Index>(dim_out_), static_cast<Eigen::Index>(dim_out_));
    for (const auto& k : kraus_) out += k * rho * k.adjoint();
    return out;
}

DensityMatrix Channel::apply(const DensityMatrix& rho) const {
    if (rho.dim() != dim_in_)
        throw std::invalid_argument("channel: input dimension mismatch");
    Mat out = apply(rho.matrix());
    if (dim_out_ == dim_in_)
        return detail::unchecked_density(rho.registry(), std::move(out));
    SystemRegistry reg({SystemEntry::physical("out", dim_out_)});
    return detail::unchecked_density(std::move(reg), std::move(out));
}

Channel channel_compose(const Channel& second, const Channel& first) {
    if (first.dim_out() != second.dim_in())
        throw std::invalid_argument("channel_compose: dimension mismatch");
    std::vector<Mat> kraus;
    kraus.reserve(first.kraus().size() * second.kraus().size());
    for (const auto& k2 : second.kraus())
        for (const auto& k1 : first.kraus()) kraus.push_back(k2 * k1);
    return Channel(std::move(kraus));
}

Channel preset_channel(const std::string& name, double param, std::size_t dim) {
    if (dim < 1) throw std::invalid_argument("preset_channel: dim must be >= 1");
    if (param < 0.0 || param > 1.0)
        throw std::invalid_argument("preset_channel: param must be in [0, 1]");
    const auto d = static_cast<Eigen::Index>(dim);
    if (name == "identity") {
        return Channel({Mat::Identity(d, d)});
    }
    if (name == "dephasing") {
        // K_0 = sqrt(1-p) I, K_k = sqrt(p/(d-1)) Z^k with Z the clock matrix
        if (param == 0.0 || dim == 1) return Channel({Mat::Identity(d, d)});
        std::vector<Mat> kraus;
        kraus.push_back(std::sqrt(1.0 - param) * Mat::Identity(d, d));
        Mat z = Mat::Zero(d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(dim);
            z(j, j) = std::polar(1.0, phi);
        }
        Mat zk = Mat::Identity(d, d);
        for (std::size_t k = 1; k < dim; ++k) {
            zk = zk * z;
            kraus.push_back(std::sqrt(param / static_cast<double>(dim - 1)) * zk);
        }
        return Channel(std::move(kraus));
    }
    if (name == "depolarizing") {
        // rho -> (1-p) rho + p I/d, Weyl operator Kraus family
        if (param == 0.0 || dim == 1) return Channel({Mat::Identity(d, d)});
        Mat x = Mat::Zero(d, d);
        Mat z = Mat::Zero(d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            x((j + 1) % d, j) = 1.0;
            z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                          static_cast<double>(dim));
        }
        std::vector<Mat> kraus;
        const double d2 = static_cast<double>(dim) * static_cast<double>(dim);
        Mat xa = Mat::Identity(d, d);
        for (std::size_t a = 0; a < dim; ++a) {
            Mat w = xa;
            for (std::size_t b = 0; b < dim; ++b) {
                const double weight =
                    (a == 0 && b == 0) ? 1.0 - param + param / d2 : param / d2;
                kraus.push_back(std::sqrt(weight) * w);
                w = w * z;
            }
            xa = x * xa;
        }
        return Channel(std::move(kraus));
    }
    if (name == "amplitude_damping") {
        if (dim != 2)
            throw std::invalid_argument("preset_channel: amplitude_damping is qubit-only");
        Mat k0 = Mat::Zero(2, 2), k1 = Mat::Zero(2, 2);
        k0(0, 0) = 1.0;
        k0(1, 1) = std::sqrt(1.0 - param);
        k1(0, 1) = std::sqrt(param);
        return Channel({std::move(k0), std::move(k1)});
    }
    throw std::invalid_argument("preset_channel: unknown name '" + name + "'");
}

StinespringDilation stinespring_dilation(const Channel& ch) {
    if (ch.dim_in() != ch.dim_out())
        throw std::invalid_argument("stinespring_dilation: requires dim_in == dim_out");
    const std::size_t d = ch.dim_in();
    const std::size_t env = ch.kraus().size();
    const auto n = static_cast<Eigen::Index>(d * env);
    // defined block: column (i, e=0) -> sum_k K_k|i> (x) |k>_E
    Mat block(n, static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t q = 0; q < d; ++q)
            for (std::size_t k = 0; k < env; ++k)
                block(static_cast<Eigen::Index>(q * env + k), static_cast<Eigen::Index>(i)) =
                    ch.kraus()[k](static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i));
    Mat v(n, n);
    if (env == 1) {
        v = block;
    } else {
        // complete the orthonormal defined columns by QR of the complement
        Eigen::HouseholderQR<Mat> qr(block);
        Mat q = qr.householderQ();
        v.setZero();
        Eigen::Index extra = static_cast<Eigen::Index>(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t e = 0; e < env; ++e) {
                const auto col = static_cast<Eigen::Index>(i * env + e);
                if (e == 0)
                    v.col(col) = block.col(static_cast<Eigen::Index>(i));
                else
                    v.col(col) = q.col(extra++);
            }
    }
    return {std::move(v), env};
}

Ensemble::Ensemble(std::size_t dim, std::vector<Item> items)
    : dim_(dim), items_(std::move(items)) {
    if (dim_ < 1) throw std::invalid_argument("ensemble: dim must be >= 1");
    if (items_.empty()) throw std::invalid_argument("ensemble: items must be nonempty");
    double total = 0.0;
    for (const auto& it : items_) {
        if (it.prob < -tol::psd)
            throw std::invalid_argument("ensemble: negative probability");
        if (static_cast<std::size_t>(it.amplitudes.size()) != dim_)
            throw std::invalid_argument("ensemble: state dimension mismatch");
        if (std::abs(it.amplitudes.norm() - 1.0) > tol::norm)
            throw std::invalid_argument("ensemble: state is not normalized");
        total += it.prob;
    }
    if (std::abs(total - 1.0) > tol::trace)
        throw std::invalid_argument("ensemble: probabilities sum to " + std::to_string(total));
}

Mat Ensemble::average_state() const {
    const auto d = static_cast<Eigen::Index>(dim_);
    Mat rho = Mat::Zero(d, d);
    for (const auto& it : items_) rho += it.prob * (it.amplitudes * it.amplitudes.adjoint());
    return rho;
}

double holevo_chi(const Ensemble& ens, const Channel& ch) {
    if (ens.dim() != ch.dim_in())
        throw std::invalid_argument("holevo_chi: ensemble and channel dimensions differ");
    double avg = entropy_of_matrix(ch.apply(ens.average_state()));
    for (const auto& it : ens.items())
        avg -= it.prob * entropy_of_matrix(ch.apply(Mat(it.amplitudes * it.amplitudes.adjoint())));
    return avg;
}

double coherent_information(const Mat& rho, const Channel& ch) {
    if (static_cast<std::size_t>(rho.rows()) != ch.dim_in())
        throw std::invalid_argument("coherent_information: dimension mismatch");
    Mat h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> solver(h);
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    // minimal purification |psi> = sum_k sqrt(lam_k) |k>_R |v_k>_Q
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lam = solver.eigenvalues()(i);
        if (lam < -tol::psd * scale)
            throw std::runtime_error("coherent_information: input not positive semidefinite");
        if (lam > 1e-14) support.push_back(i);  // rank cut well below entropy tolerances
    }
    const auto rank = static_cast<Eigen::Index>(support.size());
    const auto dq = static_cast<Eigen::Index>(ch.dim_in());
    Vec psi = Vec::Zero(rank * dq);  // R major, Q minor
    for (Eigen::Index r = 0; r < rank; ++r) {
        const double lam = std::max(0.0, solver.eigenvalues()(support[static_cast<std::size_t>(r)]));
        psi.segment(r * dq, dq) =
            std::sqrt(lam) * solver.eigenvectors().col(support[static_cast<std::size_t>(r)]);
    }
    psi /= psi.norm();
    // (id_R (x) E) acting on |psi><psi|
    Mat joint = Mat::Zero(rank * static_cast<Eigen::Index>(ch.dim_out()),
                          rank * static_cast<Eigen::Index>(ch.dim_out()));
    const auto dout = static_cast<Eigen::Index>(ch.dim_out());
    for (const auto& k : ch.kraus()) {
        Vec kpsi(rank * dout);
        for (Eigen::Index r = 0; r < rank; ++r)
            kpsi.segment(r * dout, dout).noalias() = k * psi.segment(r * dq, dq);
        joint += kpsi * kpsi.adjoint();
    }
    return entropy_of_matrix(ch.apply(h)) - entropy_of_matrix(joint);
}

double coherent_information(const DensityMatrix& rho, const Channel& ch) {
    return coherent_information(rho.matrix(), ch);
}

json Channel::to_json() const {
    json kraus = json::array();
    for (const auto& k : kraus_) kraus.push_back(matrix_to_json(k));
    return json{{"dim_in", dim_in_}, {"dim_out", dim_out_}, {"kraus", kraus}};
}

Channel Channel::from_json(const json& j) {
    if (j.contains("preset")) {
        const std::string name = j.at("preset").get<std::string>();
        const double param = j.value("param", 0.0);
        const std::size_t dim = j.value("dim", std::size_t{2});
        return preset_channel(name, param, dim);
    }
    const auto dim_in = j.at("dim_in").get<std::size_t>();
    const auto dim_out = j.at("dim_out").get<std::size_t>();
    const auto& kj = j.at("kraus");
    if (!kj.is_array() || kj.empty())
        throw std::invalid_argument("channel json: kraus must be a nonempty array");
    std::vector<Mat> kraus;
    for (const auto& entry : kj) kraus.push_back(matrix_from_json(entry, dim_out, dim_in));
    return Channel(std::move(kraus));
}

json Ensemble::to_json() const {
    json items = json::array();
    for (const auto& it : items_) {
        json amps = json::array();
        for (Eigen::Index i = 0; i < it.amplitudes.size(); ++i)
            amps.push_back({it.amplitudes(i).real(), it.amplitudes(i).imag()});
        items.push_back({{"prob", it.prob}, {"amplitudes", amps}});
    }
    return json{{"dim", dim_}, {"items", items}};
}

Ensemble Ensemble::from_json(const json& j) {
    const auto dim = j.at("dim").get<std::size_t>();
    const auto& ij = j.at("items");
    if (!ij.is_array() || ij.empty())
        throw std::invalid_argument("ensemble json: items must be a nonempty array");
    std::vector<Item> items;
    for (const auto& entry : ij) {
        Item it;
        it.prob = entry.at("prob").get<double>();
        const auto& amps = entry.at("amplitudes");
        if (!amps.is_array() || amps.size() != dim)
            throw std::invalid_argument("ensemble json: amplitude length mismatch");
        it.amplitudes = Vec(static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < dim; ++i) {
            const auto& a = amps[i];
            if (!a.is_array() || a.size() != 2)
                throw std::invalid_argument("ensemble json: amplitudes must be [re, im] pairs");
            it.amplitudes(static_cast<Eigen::Index>(i)) =
                cplx(a[0].get<double>(), a[1].get<double>());
        }
        items.push_back(std::move(it));
    }
    return Ensemble(dim, std::move(items));
}

}  // namespace qil
