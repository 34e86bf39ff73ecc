// Python bindings for the three-mode condensate core.
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hmbec/bethe.hpp"
#include "hmbec/model.hpp"
#include "hmbec/observables.hpp"
#include "hmbec/semiclassical.hpp"
#include "hmbec/spectral.hpp"
#include "hmbec/sweep.hpp"

namespace py = pybind11;
using namespace hmbec;

PYBIND11_MODULE(_hmbec, m) {
    m.doc() = "Three-mode atom-molecule condensate: spectra, classical phase "
              "structure, Bethe roots, fidelity, sweeps";

    py::class_<Sector>(m, "Sector")
        .def_readonly("n_total", &Sector::n_total)
        .def_readonly("j_imbalance", &Sector::j_imbalance)
        .def_readonly("l", &Sector::l)
        .def_readonly("m", &Sector::m)
        .def_readonly("dim", &Sector::dim)
        .def_readonly("k", &Sector::k)
        .def("__repr__", [](const Sector& s) {
            return "Sector(n_total=" + std::to_string(s.n_total) +
                   ", j_imbalance=" + std::to_string(s.j_imbalance) + ")";
        });
    m.def("sector", &sector_new, py::arg("n_total"), py::arg("j_imbalance") = 0,
          "Conserved-charge sector (N, J)");

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("u_aa", &ModelParams::u_aa)
        .def_readwrite("u_bb", &ModelParams::u_bb)
        .def_readwrite("u_cc", &ModelParams::u_cc)
        .def_readwrite("u_ab", &ModelParams::u_ab)
        .def_readwrite("u_ac", &ModelParams::u_ac)
        .def_readwrite("u_bc", &ModelParams::u_bc)
        .def_readwrite("mu_a", &ModelParams::mu_a)
        .def_readwrite("mu_b", &ModelParams::mu_b)
        .def_readwrite("mu_c", &ModelParams::mu_c)
        .def_readwrite("omega", &ModelParams::omega)
        .def_static("no_scattering", &ModelParams::no_scattering, py::arg("mu"),
                    py::arg("omega"));

    m.def("mu_from_alpha", &mu_from_alpha, py::arg("alpha"), py::arg("omega"),
          py::arg("n_total"));

    m.def(
        "eigenvalues",
        [](const ModelParams& p, const Sector& s) {
            return eigendecompose(build_tridiagonal(p, s)).eigenvalues;
        },
        py::arg("params"), py::arg("sector"), "Full sector spectrum, ascending");

    m.def(
        "ground_state",
        [](const ModelParams& p, const Sector& s) {
            const auto gs = ground_state_fast(build_tridiagonal(p, s));
            return py::make_tuple(gs.energy, gs.gap, gs.vector);
        },
        py::arg("params"), py::arg("sector"),
        "(energy, gap, amplitudes) of the non-degenerate ground state");

    m.def(
        "ground_state_observables",
        [](const ModelParams& p, const Sector& s) {
            const auto gs = ground_state_fast(build_tridiagonal(p, s));
            QuantumState st;
            st.sector = s;
            for (double x : gs.vector) st.amplitudes.emplace_back(x, 0.0);
            py::dict out;
            out["energy"] = gs.energy;
            out["gap"] = gs.gap;
            out["z"] = expectation_z(st);
            out["molecular_fraction"] =
                2.0 * expectation_nc(st) / static_cast<double>(s.n_total);
            return out;
        },
        py::arg("params"), py::arg("sector"));

    m.def(
        "classical_energy",
        [](double z, double theta, double lam, double alpha, double beta, double k) {
            return classical_energy({z, theta}, {lam, alpha, beta}, k);
        },
        py::arg("z"), py::arg("theta"), py::arg("lambda"), py::arg("alpha"),
        py::arg("beta") = 0.0, py::arg("k") = 0.0);

    m.def(
        "region_label",
        [](double lam, double alpha, double beta, double k) {
            return region_classify({lam, alpha, beta}, k).label;
        },
        py::arg("lambda"), py::arg("alpha"), py::arg("beta") = 0.0, py::arg("k") = 0.0);

    m.def(
        "fixed_points",
        [](double lam, double alpha, double beta, double k) {
            py::list out;
            for (const auto& fp : fixed_points({lam, alpha, beta}, k)) {
                py::dict d;
                d["z"] = fp.point.z;
                d["theta"] = fp.point.theta;
                d["branch"] = to_string(fp.branch);
                d["character"] = to_string(fp.character);
                d["phase_arbitrary"] = fp.phase_arbitrary;
                out.append(d);
            }
            return out;
        },
        py::arg("lambda"), py::arg("alpha"), py::arg("beta") = 0.0, py::arg("k") = 0.0);

    m.def(
        "bethe_roots",
        [](const ModelParams& p, const Sector& s, double e) {
            const auto br = bethe_roots(p, s, e);
            py::dict out;
            out["roots"] = br.roots;
            out["energy_reconstructed"] = br.energy_reconstructed;
            out["max_residual"] = br.max_bae_residual;
            out["repeated_roots"] = br.repeated_roots;
            return out;
        },
        py::arg("params"), py::arg("sector"), py::arg("eigenvalue"));

    m.def("threshold_correction", &threshold_correction, py::arg("n_total"),
          py::arg("omega") = 1.0);
    m.def("degenerate_mu", &degenerate_mu, py::arg("n_total"), py::arg("omega") = 1.0);

    m.def(
        "overlap",
        [](long n, long j, double lam, double omega, double delta_rel, double alpha) {
            return overlap_at(alpha_family(n, lam, omega), sector_new(n, j), delta_rel,
                              alpha);
        },
        py::arg("n_total"), py::arg("j_imbalance"), py::arg("lambda"), py::arg("omega"),
        py::arg("delta_rel"), py::arg("alpha"),
        "Ground-state overlap of the two split Hamiltonians");

    m.def(
        "z_trace",
        [](const ModelParams& p, const Sector& s, long j0,
           const std::vector<double>& times) {
            const auto d = eigendecompose(build_tridiagonal(p, s));
            return z_trace(d, basis_state(s, j0), times).values;
        },
        py::arg("params"), py::arg("sector"), py::arg("initial_molecules"),
        py::arg("times"), "Imbalance expectation along the evolution");

    m.def(
        "run_sweep",
        [](const std::string& target, const std::map<std::string, double>& fixed,
           const std::map<std::string, std::string>& axes, int workers) {
            SweepSpec spec;
            spec.target = target;
            spec.fixed = fixed;
            for (const auto& [name, range] : axes)
                spec.axes.push_back(parse_range(name, range));
            const auto result = run_sweep(spec, workers);
            py::dict out;
            out["meta"] = result.meta;
            out["columns"] = result.columns;
            out["rows"] = result.rows;
            out["any_failed"] = result.any_failed();
            return out;
        },
        py::arg("target"), py::arg("fixed"), py::arg("axes"), py::arg("workers") = 1);
}
