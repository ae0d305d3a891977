#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "qil/state.hpp"

namespace qil {

/// Completely positive trace-preserving map stored as a Kraus list.
/// The Stinespring environment picture is derived on demand.
class Channel {
public:
    explicit Channel(std::vector<Mat> kraus);

    std::size_t dim_in() const { return dim_in_; }
    std::size_t dim_out() const { return dim_out_; }
    const std::vector<Mat>& kraus() const { return kraus_; }

    /// sum_k K_k rho K_k^t on a raw matrix of side dim_in.
    Mat apply(const Mat& rho) const;
    /// Same, on a DensityMatrix whose total dim equals dim_in. For square
    /// channels the registry is preserved.
    DensityMatrix apply(const DensityMatrix& rho) const;

    nlohmann::json to_json() const;
    static Channel from_json(const nlohmann::json& j);

private:
    std::size_t dim_in_ = 0, dim_out_ = 0;
    std::vector<Mat> kraus_;
};

/// second after first; Kraus products {K2_j K1_i}.
Channel channel_compose(const Channel& second, const Channel& first);

/// name in {identity, dephasing, depolarizing, amplitude_damping}, param in
/// [0, 1]. identity/dephasing/depolarizing work for any dim;
/// amplitude_damping is qubit-only.
Channel preset_channel(const std::string& name, double param, std::size_t dim = 2);

struct StinespringDilation {
    Mat unitary;          // on Q (x) E, row-major with E least significant
    std::size_t env_dim;  // number of Kraus operators
};

/// V(|psi> (x) |0>_E) = sum_k (K_k |psi>) (x) |k>_E, completed to a unitary
/// by orthonormal extension. Requires dim_in == dim_out.
StinespringDilation stinespring_dilation(const Channel& ch);

/// Weighted list of pure states {(p_i, |psi_i>_Q)} used for preparation.
/// Conditional unitaries with U_i |0> = |psi_i> are derived on demand.
class Ensemble {
public:
    struct Item {
        double prob;
        Vec amplitudes;
    };

    Ensemble(std::size_t dim, std::vector<Item> items);

    std::size_t dim() const { return dim_; }
    const std::vector<Item>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }

    /// rho_bar = sum_i p_i |psi_i><psi_i|.
    Mat average_state() const;

    nlohmann::json to_json() const;
    static Ensemble from_json(const nlohmann::json& j);

private:
    std::size_t dim_ = 0;
    std::vector<Item> items_;
};

/// chi = S(E(rho_bar)) - sum_i p_i S(E(|psi_i><psi_i|)).
double holevo_chi(const Ensemble& ens, const Channel& ch);

/// I_c(rho, E) = S(E(rho)) - S((id_R (x) E)(|psi_rho><psi_rho|)) with
/// |psi_rho> the minimal purification of rho.
double coherent_information(const DensityMatrix& rho, const Channel& ch);
double coherent_information(const Mat& rho, const Channel& ch);

}  // namespace qil
