#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "qil/channel.hpp"
#include "qil/entropy.hpp"
#include "qil/protocols.hpp"
#include "qil/rng.hpp"
#include "qil/suite.hpp"

namespace py = pybind11;
using namespace qil;
using nlohmann::json;

namespace {

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null: return py::none();
        case json::value_t::boolean: return py::bool_(j.get<bool>());
        case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case json::value_t::number_float: return py::float_(j.get<double>());
        case json::value_t::string: return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (const auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
            return out;
        }
        default: return py::none();
    }
}

using Labels = std::vector<std::string>;

}  // namespace

PYBIND11_MODULE(_qil, m) {
    m.doc() = "labeled multipartite quantum states, directed entanglement, and "
              "the associated verification protocols";

    py::class_<SystemEntry>(m, "SystemEntry")
        .def_static("physical", &SystemEntry::physical, py::arg("label"), py::arg("dim"))
        .def_static("knowledge", &SystemEntry::knowledge, py::arg("label"), py::arg("dim"),
                    py::arg("owner"))
        .def_readonly("label", &SystemEntry::label)
        .def_readonly("dim", &SystemEntry::dim)
        .def_readonly("owner", &SystemEntry::owner);

    py::class_<SystemRegistry>(m, "SystemRegistry")
        .def(py::init<std::vector<SystemEntry>>(), py::arg("entries"))
        .def("total_dim", &SystemRegistry::total_dim)
        .def("dim_of", &SystemRegistry::dim_of, py::arg("label"))
        .def("contains", &SystemRegistry::contains, py::arg("label"))
        .def("labels", [](const SystemRegistry& r) {
            Labels out;
            for (const auto& e : r.entries()) out.push_back(e.label);
            return out;
        });

    m.def("max_total_dim", &max_total_dim);
    m.def("set_max_total_dim", &set_max_total_dim, py::arg("dim"));

    py::class_<Unitary>(m, "Unitary")
        .def(py::init<Mat, Labels>(), py::arg("matrix"), py::arg("targets"))
        .def_property_readonly("matrix", &Unitary::matrix)
        .def_property_readonly("targets", &Unitary::targets);

    py::class_<PureState>(m, "PureState")
        .def(py::init<SystemRegistry, Vec>(), py::arg("registry"), py::arg("amplitudes"))
        .def_static("basis", &PureState::basis, py::arg("registry"), py::arg("index") = 0)
        .def_property_readonly("registry", &PureState::registry)
        .def_property_readonly("amplitudes", &PureState::amplitudes);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init<SystemRegistry, Mat>(), py::arg("registry"), py::arg("matrix"))
        .def_static("from_pure", &DensityMatrix::from_pure, py::arg("psi"))
        .def_static("maximally_mixed", &DensityMatrix::maximally_mixed, py::arg("registry"))
        .def_property_readonly("registry", &DensityMatrix::registry)
        .def_property_readonly("matrix", &DensityMatrix::matrix);

    m.def("tensor", py::overload_cast<const PureState&, const PureState&>(&tensor));
    m.def("tensor", py::overload_cast<const DensityMatrix&, const DensityMatrix&>(&tensor));
    m.def("partial_trace",
          [](const DensityMatrix& rho, const Labels& keep) { return partial_trace(rho, keep); },
          py::arg("rho"), py::arg("keep"));
    m.def("partial_trace",
          [](const PureState& psi, const Labels& keep) { return partial_trace(psi, keep); },
          py::arg("psi"), py::arg("keep"));
    m.def("apply_unitary", py::overload_cast<const PureState&, const Unitary&>(&apply_unitary));
    m.def("apply_unitary",
          py::overload_cast<const DensityMatrix&, const Unitary&>(&apply_unitary));
    m.def("extend_fresh", py::overload_cast<const PureState&, const SystemEntry&>(&extend_fresh));
    m.def("extend_fresh",
          py::overload_cast<const DensityMatrix&, const SystemEntry&>(&extend_fresh));
    m.def("copy_shift_unitary", &copy_shift_unitary, py::arg("m"), py::arg("src"), py::arg("dst"));

    py::class_<Rng>(m, "Rng").def(py::init<std::uint64_t>(), py::arg("seed"));
    m.def("split_seed", &split_seed, py::arg("base"), py::arg("stream"));
    m.def("haar_matrix", &haar_matrix, py::arg("dim"), py::arg("rng"));
    m.def("random_haar_unitary", &random_haar_unitary, py::arg("dim"), py::arg("rng"),
          py::arg("targets"));
    m.def("random_pure_state", &random_pure_state, py::arg("registry"), py::arg("rng"));
    m.def("random_density_matrix", &random_density_matrix, py::arg("registry"), py::arg("rank"),
          py::arg("rng"));

    m.def("shannon", [](const Eigen::VectorXd& p) { return shannon(ProbabilityVector(p)); },
          py::arg("probs"));
    m.def("von_neumann", &von_neumann, py::arg("rho"));
    m.def("diagonal_distribution",
          [](const DensityMatrix& rho, const std::string& label) {
              return diagonal_distribution(rho, label).probs();
          },
          py::arg("rho"), py::arg("label"));
    m.def("joint_diagonal_distribution",
          [](const DensityMatrix& rho, const Labels& labels) {
              return joint_diagonal_distribution(rho, labels).probs();
          },
          py::arg("rho"), py::arg("labels"));
    m.def("classicize",
          [](const DensityMatrix& rho, const Labels& labels) { return classicize(rho, labels); },
          py::arg("rho"), py::arg("labels"));
    m.def("directed_entanglement",
          [](const DensityMatrix& rho, const Labels& x, const Labels& y) {
              return directed_entanglement(rho, x, y);
          },
          py::arg("rho"), py::arg("x"), py::arg("y"));
    m.def("mutual_information_rv",
          [](const DensityMatrix& rho, const Labels& a, const Labels& b) {
              return mutual_information_rv(rho, a, b);
          },
          py::arg("rho"), py::arg("a"), py::arg("b"));
    m.def("thermodynamic_entropy",
          [](const DensityMatrix& rho, const Labels& q, const Labels& b) {
              return thermodynamic_entropy(rho, q, b);
          },
          py::arg("rho"), py::arg("q"), py::arg("b"));

    py::class_<Channel>(m, "Channel")
        .def(py::init<std::vector<Mat>>(), py::arg("kraus"))
        .def_property_readonly("dim_in", &Channel::dim_in)
        .def_property_readonly("dim_out", &Channel::dim_out)
        .def_property_readonly("kraus", &Channel::kraus)
        .def("apply", py::overload_cast<const Mat&>(&Channel::apply, py::const_))
        .def("apply", py::overload_cast<const DensityMatrix&>(&Channel::apply, py::const_))
        .def("to_json", [](const Channel& c) { return json_to_py(c.to_json()); });
    m.def("channel_compose", &channel_compose, py::arg("second"), py::arg("first"));
    m.def("preset_channel", &preset_channel, py::arg("name"), py::arg("param"),
          py::arg("dim") = 2);
    m.def("stinespring_dilation", [](const Channel& ch) {
        StinespringDilation d = stinespring_dilation(ch);
        return py::make_tuple(d.unitary, d.env_dim);
    });

    py::class_<Ensemble>(m, "Ensemble")
        .def(py::init([](std::size_t dim, const std::vector<std::pair<double, Vec>>& items) {
                 std::vector<Ensemble::Item> converted;
                 for (const auto& [p, v] : items) converted.push_back({p, v});
                 return Ensemble(dim, std::move(converted));
             }),
             py::arg("dim"), py::arg("items"))
        .def_property_readonly("dim", &Ensemble::dim)
        .def("average_state", &Ensemble::average_state);
    m.def("holevo_chi", &holevo_chi, py::arg("ensemble"), py::arg("channel"));
    m.def("coherent_information",
          py::overload_cast<const DensityMatrix&, const Channel&>(&coherent_information));
    m.def("coherent_information", py::overload_cast<const Mat&, const Channel&>(&coherent_information));

    py::class_<MeasurementSpec>(m, "MeasurementSpec")
        .def(py::init([](const std::string& target, const Mat& basis,
                         const std::string& apparatus, const std::string& knowledge,
                         const std::string& owner) {
                 return MeasurementSpec{target, basis, apparatus, knowledge, owner};
             }),
             py::arg("target"), py::arg("basis") = Mat(), py::arg("apparatus_label") = "M",
             py::arg("knowledge_label") = "B", py::arg("owner") = "Bob");
    m.def("simulate_measurement", &simulate_measurement, py::arg("psi"), py::arg("spec"));
    m.def("add_observer", &add_observer, py::arg("psi"), py::arg("apparatus_label"),
          py::arg("knowledge_label"), py::arg("owner") = "Charlie");
    m.def("simulate_preparation",
          [](const Ensemble& ens) { return simulate_preparation(ens); }, py::arg("ensemble"));
    m.def("simulate_classical_communication",
          [](const Ensemble& ens, const Channel& ch, const MeasurementSpec& meas, double tol) {
              return json_to_py(simulate_classical_communication(ens, ch, meas, tol).to_json());
          },
          py::arg("ensemble"), py::arg("channel"), py::arg("measurement"),
          py::arg("tolerance") = 1e-9);
    m.def("simulate_dpi_chain",
          [](const DensityMatrix& rho, const Channel& c1, const Channel& c2, double tol) {
              return json_to_py(simulate_dpi_chain(rho, c1, c2, tol).to_json());
          },
          py::arg("rho"), py::arg("first"), py::arg("second"), py::arg("tolerance") = 1e-9);
    m.def("make_zeroth_joint", &make_zeroth_joint, py::arg("rho_q1"), py::arg("rho_q2"),
          py::arg("b_dim"), py::arg("b_label") = "B");
    m.def("check_zeroth_law",
          [](const DensityMatrix& joint, const Labels& q1, const Labels& q2, const Labels& b,
             const Unitary& u, double tol) {
              return json_to_py(check_zeroth_law(joint, q1, q2, b, u, tol).to_json());
          },
          py::arg("joint"), py::arg("q1"), py::arg("q2"), py::arg("b"), py::arg("u"),
          py::arg("tolerance") = 1e-9);
    m.def("simulate_cascade",
          [](const std::vector<std::size_t>& dims, std::size_t sweeps, std::uint64_t seed,
             double tol) {
              CascadeConfig cfg;
              cfg.dims = dims;
              cfg.sweeps = sweeps;
              cfg.seed = seed;
              CascadeReport rep = simulate_cascade(cfg, "B", tol);
              py::dict out = json_to_py(rep.to_json()).cast<py::dict>();
              out["trajectory_csv"] = rep.trajectory_csv();
              return out;
          },
          py::arg("dims"), py::arg("sweeps"), py::arg("seed") = 0, py::arg("tolerance") = 1e-9);

    m.def("evaluate_property_margin",
          [](const std::string& name, std::uint64_t trial_seed, double tol) {
              PropertyCheckConfig cfg;
              cfg.id = property_from_name(name);
              cfg.tolerance = tol;
              return evaluate_property_margin(cfg.id, trial_seed, cfg);
          },
          py::arg("property"), py::arg("trial_seed"), py::arg("tolerance") = 1e-9);
    m.def("check_property",
          [](const std::string& name, std::size_t trials, std::uint64_t seed, double tol) {
              PropertyCheckConfig cfg;
              cfg.id = property_from_name(name);
              cfg.trials = trials;
              cfg.seed = seed;
              cfg.tolerance = tol;
              return json_to_py(check_property(cfg).to_json());
          },
          py::arg("property"), py::arg("trials") = 100, py::arg("seed") = 0,
          py::arg("tolerance") = 1e-9);
    m.def("run_default_suite",
          [](std::uint64_t seed, std::size_t trials, double tol) {
              return json_to_py(run_suite(default_suite(seed, trials, tol)).to_json());
          },
          py::arg("seed") = 0, py::arg("trials") = 0, py::arg("tolerance") = 1e-9);
}
