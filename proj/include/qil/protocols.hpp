#pragma once

#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qil/channel.hpp"
#include "qil/entropy.hpp"
#include "qil/state.hpp"

namespace qil {

struct MeasurementSpec {
    std::string target;
    Mat basis;  // columns are the measurement basis; empty = computational
    std::string apparatus_label = "M";
    std::string knowledge_label = "B";
    std::string owner = "Bob";
};

/// Elementary measurement: rotate the target by basis^t, produce the
/// apparatus M and the knowledge system B, correlate via modular-shift
/// copies target -> M -> B.
PureState simulate_measurement(const PureState& psi, const MeasurementSpec& spec);

/// A second protagonist reads the apparatus: produce knowledge system C
/// copied from M. Pr(B = C) = 1 afterwards.
PureState add_observer(const PureState& psi, const std::string& apparatus_label,
                       const std::string& knowledge_label, const std::string& owner = "Charlie");

struct PreparationLabels {
    std::string a1 = "A1";
    std::string q = "Q";
    std::string a2 = "A2";
    std::string a = "A";
    std::string owner = "Alice";
};

/// Ensemble preparation: |0>_A1 sum_i sqrt(p_i) |psi_i>_Q |i>_A2 |i>_A,
/// realized by a coherent amplitude load on A2, a conditional unitary on Q,
/// and a copy A2 -> A.
PureState simulate_preparation(const Ensemble& ens, const PreparationLabels& labels = {});

struct HolevoReport {
    double h_a = 0;          // H(A)
    double chi = 0;
    double e_a_q = 0;        // E(A -> Q) after the environment interaction
    double mutual_ab = 0;    // I(A; B)
    double identity_margin = 0;  // -|E(A->Q) - (chi - H(A))|
    double bound_margin = 0;     // chi - I(A;B)
    bool pass = false;
    double tolerance = 0;
    nlohmann::json to_json() const;
};

/// Preparation -> Stinespring environment interaction -> measurement.
HolevoReport simulate_classical_communication(const Ensemble& ens, const Channel& ch,
                                              const MeasurementSpec& meas,
                                              double tolerance = 1e-9);

struct DpiReport {
    double s_rho = 0;
    double ic_1 = 0;    // I_c(rho, E1)
    double ic_21 = 0;   // I_c(rho, E2 o E1)
    // directed entanglement on the explicitly dilated state
    double e_r_qe1e2 = 0;
    double e_r_qe2 = 0;
    double e_r_q = 0;
    double chain_margin = 0;     // min slack of S >= Ic1 >= Ic21
    double identity_margin = 0;  // worst |cross-identity| deviation, negated
    bool pass = false;
    double tolerance = 0;
    nlohmann::json to_json() const;
};

/// Two-channel data processing chain: purify rho, dilate ch1 then ch2,
/// compare the Kraus fast path against the dilation route.
DpiReport simulate_dpi_chain(const DensityMatrix& rho, const Channel& ch1, const Channel& ch2,
                             double tolerance = 1e-9);
DpiReport simulate_dpi_chain(const Mat& rho, const Channel& ch1, const Channel& ch2,
                             double tolerance = 1e-9);

struct ZerothLawReport {
    double st_q1_before = 0, st_q2_before = 0, st_joint_before = 0;
    double st_q1_after = 0, st_q2_after = 0, st_joint_after = 0;
    double monotonicity_margin = 0;   // sum_after - sum_before
    double subadditivity_margin = 0;  // sum_after - joint_after (>= 0)
    double initial_equality_margin = 0;  // -|sum_before - joint_before|
    bool pass = false;
    double tolerance = 0;
    nlohmann::json to_json() const;
};

/// Joint state rho_Q1 (x) rho_Q2 (x) |0><0|_B with B a knowledge system.
/// Registries of q1 and q2 must have disjoint labels.
DensityMatrix make_zeroth_joint(const DensityMatrix& rho_q1, const DensityMatrix& rho_q2,
                                std::size_t b_dim, const std::string& b_label = "B");

/// Checks that S_T(Q1|B) + S_T(Q2|B) does not decrease under a unitary on
/// Q1 Q2. Precondition: Q1 and Q2 unentangled in the joint state.
ZerothLawReport check_zeroth_law(const DensityMatrix& joint,
                                 std::span<const std::string> q1,
                                 std::span<const std::string> q2,
                                 std::span<const std::string> b,
                                 const Unitary& u, double tolerance = 1e-9);

struct CascadeConfig {
    std::vector<std::size_t> dims;  // [d_macro, d_0, d_1, ...]
    std::size_t sweeps = 1;
    std::uint64_t seed = 0;

    nlohmann::json to_json() const;
    static CascadeConfig from_json(const nlohmann::json& j);
};

struct CascadeStep {
    std::size_t step = 0;            // 0 = initial state
    std::string coupling;            // e.g. "Qmacro-Q0", empty for step 0
    double s_t = 0;                  // coarse-grained S_T after the coupling
};

struct CascadeReport {
    std::vector<CascadeStep> trajectory;
    double first_step_margin = 0;  // trajectory[1] - trajectory[0], 0 if no steps
    double bound_margin = 0;       // min slack of 0 <= S_T <= log2 d_macro
    double final_value = 0;
    std::uint64_t seed = 0;
    bool pass = false;
    double tolerance = 0;
    nlohmann::json to_json() const;
    std::string trajectory_csv() const;
};

/// Thermalization cascade: B maximally entangled with the macroscopic
/// factor, uniform microscopic factors, Haar-random nearest-neighbor
/// couplings per sweep; records S_T(Qmacro|B) after every coupling.
CascadeReport simulate_cascade(const CascadeConfig& cfg, const std::string& b_label = "B",
                               double tolerance = 1e-9);

}  // namespace qil
