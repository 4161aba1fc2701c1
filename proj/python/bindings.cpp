// Python bindings for the survival-probability engine and the optimizers.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zeno/commands.hpp"
#include "zeno/errors.hpp"

namespace py = pybind11;
using namespace zeno;

namespace {

Operator2 operator_from_rows(const std::array<std::array<Complex, 2>, 2>& rows) {
    return {rows[0][0], rows[0][1], rows[1][0], rows[1][1]};
}

std::array<std::array<Complex, 2>, 2> operator_rows(const Operator2& m) {
    return {{{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}};
}

} // namespace

PYBIND11_MODULE(_zenosim, m) {
    m.doc() = "survival probabilities for repeated lossy spin measurements";

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<OutOfRegimeError>(m, "OutOfRegimeError", PyExc_ValueError);
    py::register_exception<NoFiniteOptimumError>(m, "NoFiniteOptimumError", PyExc_ValueError);

    py::class_<IdealMirror>(m, "IdealMirror").def(py::init<>());

    py::class_<DiagonalMirror>(m, "DiagonalMirror")
        .def(py::init<Complex, Complex, Complex, Complex>(), py::arg("t_up"), py::arg("t_down"),
             py::arg("r_up"), py::arg("r_down"))
        .def_static("conservative", &DiagonalMirror::conservative, py::arg("t_up"),
                    py::arg("t_down"))
        .def_readonly("t_up", &DiagonalMirror::t_up)
        .def_readonly("t_down", &DiagonalMirror::t_down)
        .def_readonly("r_up", &DiagonalMirror::r_up)
        .def_readonly("r_down", &DiagonalMirror::r_down);

    py::class_<SpinFlipMirror>(m, "SpinFlipMirror")
        .def(py::init([](const std::array<std::array<Complex, 2>, 2>& t,
                         const std::array<std::array<Complex, 2>, 2>& r) {
                 return SpinFlipMirror{operator_from_rows(t), operator_from_rows(r)};
             }),
             py::arg("t_matrix"), py::arg("r_matrix"))
        .def_property_readonly(
            "t_matrix", [](const SpinFlipMirror& mm) { return operator_rows(mm.t_matrix); })
        .def_property_readonly(
            "r_matrix", [](const SpinFlipMirror& mm) { return operator_rows(mm.r_matrix); });

    py::class_<BranchLedger>(m, "BranchLedger")
        .def_readonly("detected", &BranchLedger::detected)
        .def_readonly("reflected", &BranchLedger::reflected)
        .def_readonly("absorbed", &BranchLedger::absorbed)
        .def("total", &BranchLedger::total);

    py::class_<SearchResult>(m, "SearchResult")
        .def_readonly("n_opt", &SearchResult::n_opt)
        .def_readonly("p_at_opt", &SearchResult::p_at_opt)
        .def_readonly("search_ceiling", &SearchResult::search_ceiling)
        .def_readonly("ceiling_hit", &SearchResult::ceiling_hit);

    py::class_<OptimumReport>(m, "OptimumReport")
        .def_readonly("n_opt_exact", &OptimumReport::n_opt_exact)
        .def_readonly("p_at_exact", &OptimumReport::p_at_exact)
        .def_readonly("n_opt_estimate", &OptimumReport::n_opt_estimate)
        .def_readonly("p_estimate", &OptimumReport::p_estimate)
        .def_readonly("search_ceiling", &OptimumReport::search_ceiling)
        .def_readonly("ceiling_hit", &OptimumReport::ceiling_hit);

    py::class_<LossModel>(m, "LossModel")
        .def(py::init<double, double, double, double, double, double, double>(), py::arg("a"),
             py::arg("b"), py::arg("c"), py::arg("tau_z"), py::arg("alpha1"), py::arg("alpha2"),
             py::arg("t_total"))
        .def_readonly("a", &LossModel::a)
        .def_readonly("b", &LossModel::b)
        .def_readonly("c", &LossModel::c)
        .def_readonly("tau_z", &LossModel::tau_z)
        .def_readonly("alpha1", &LossModel::alpha1)
        .def_readonly("alpha2", &LossModel::alpha2)
        .def_readonly("t_total", &LossModel::t_total)
        .def("t1", &LossModel::t1)
        .def("t2", &LossModel::t2);

    py::class_<GeneralOptimum>(m, "GeneralOptimum")
        .def_readonly("n_opt", &GeneralOptimum::n_opt)
        .def_readonly("stationarity_residual", &GeneralOptimum::stationarity_residual);

    const auto as_mirror = [](const py::object& mirror) -> MirrorModel {
        if (py::isinstance<IdealMirror>(mirror)) return mirror.cast<IdealMirror>();
        if (py::isinstance<DiagonalMirror>(mirror)) return mirror.cast<DiagonalMirror>();
        return mirror.cast<SpinFlipMirror>();
    };

    m.def("is_conservative",
          [as_mirror](const py::object& mirror) { return is_conservative(as_mirror(mirror)); },
          py::arg("mirror"));

    m.def("survival_ideal", &survival_ideal, py::arg("theta"), py::arg("n"),
          "ideal-mirror survival (cos(theta/n))^(2n)");
    m.def(
        "survival_exact",
        [as_mirror](double theta, long n, const py::object& mirror) {
            return survival_exact(ZenoRun{theta, n, as_mirror(mirror)});
        },
        py::arg("theta"), py::arg("n"), py::arg("mirror"),
        "exact closed-form survival for the given mirror");
    m.def(
        "survival_oracle",
        [as_mirror](double theta, long n, const py::object& mirror) {
            const OracleResult r = survival_oracle(ZenoRun{theta, n, as_mirror(mirror)});
            return py::make_tuple(r.probability, r.ledger);
        },
        py::arg("theta"), py::arg("n"), py::arg("mirror"),
        "brute-force stage propagation; returns (probability, ledger)");
    m.def(
        "survival_first_order",
        [as_mirror](double theta, long n, const py::object& mirror) {
            return survival_first_order(ZenoRun{theta, n, as_mirror(mirror)});
        },
        py::arg("theta"), py::arg("n"), py::arg("mirror"));
    m.def("survival_dominant", &survival_dominant, py::arg("theta"), py::arg("t_up_mod2"),
          py::arg("n"));

    m.def("n_opt_search",
          [](const std::function<double(long)>& survival, long n_max) {
              return n_opt_search(survival, n_max);
          },
          py::arg("survival"), py::arg("n_max"),
          "exhaustive argmax of survival(n) over n = 1..n_max");
    m.def("optimum_report",
          [](double theta, double t_up_mod2, const std::function<double(long)>& survival,
             long search_ceiling) {
              return optimum_report(theta, t_up_mod2, survival, search_ceiling);
          },
          py::arg("theta"), py::arg("t_up_mod2"), py::arg("survival"), py::arg("search_ceiling"));
    m.def("n_opt_estimate", &n_opt_estimate, py::arg("theta"), py::arg("t_up_mod2"));
    m.def("p_opt_estimate", &p_opt_estimate, py::arg("theta"), py::arg("t_up_mod2"));
    m.def("default_search_ceiling", &default_search_ceiling, py::arg("theta"),
          py::arg("t_up_mod2"));
    m.def("x_opt_root", &x_opt_root, py::arg("theta"), py::arg("a"));
    m.def("general_n_opt", &general_n_opt, py::arg("model"));
    m.def("general_p_opt", &general_p_opt, py::arg("model"));
    m.def(
        "maximize_log_survival",
        [](const LossModel& model, double n_hi) {
            const ContinuousMax r = maximize_log_survival(model, n_hi);
            return py::make_tuple(r.n, r.log_value);
        },
        py::arg("model"), py::arg("n_hi") = 1e6,
        "golden-section maximum of N ln L + N ln p; returns (n, log_value)");
}
