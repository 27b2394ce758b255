#include "reciprel/hamilton_flow.hpp"
#include "reciprel/phase_space_metrics.hpp"
#include "reciprel/planck_scales.hpp"
#include "reciprel/reciprocal_transforms.hpp"
#include "reciprel/weyl_heisenberg.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace reciprel;

namespace {

py::dict contraction_dict(const ContractionReport& rep) {
    py::list scales, dev, mdev;
    for (const auto& s : rep.samples) {
        scales.append(s.scale);
        dev.append(s.deviation);
        mdev.append(s.matrix_deviation);
    }
    return py::dict("scales"_a = scales, "deviation"_a = dev, "matrix_deviation"_a = mdev,
                    "limit"_a = rep.limit.to_vector(), "limit_matrix"_a = rep.limit_matrix,
                    "slope"_a = rep.slope, "monotone"_a = rep.monotone);
}

py::dict scales_dict(const PlanckScales& s) {
    return py::dict("lambda_t"_a = s.lambda_t, "lambda_q"_a = s.lambda_q,
                    "lambda_p"_a = s.lambda_p, "lambda_e"_a = s.lambda_e);
}

HamiltonianSystem preset(const std::string& name, int n) {
    if (name == "zero") return HamiltonianSystem::zero(n);
    if (name == "free") return HamiltonianSystem::free_particle(n);
    if (name == "harmonic") return HamiltonianSystem::harmonic(n);
    if (name == "driven") return HamiltonianSystem::driven(n);
    throw DomainError("unknown system '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weyl-Heisenberg groups, Born-metric kinematics and Hamilton-flow checks";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DimensionError>(m, "DimensionError", base);
    py::register_exception<DomainError>(m, "DomainError", base);
    py::register_exception<SymplecticViolation>(m, "SymplecticViolation", base);
    py::register_exception<DecompositionError>(m, "DecompositionError", base);
    py::register_exception<NonTimelikeState>(m, "NonTimelikeState", base);
    py::register_exception<NoNullVelocity>(m, "NoNullVelocity", base);
    py::register_exception<SuperluminalError>(m, "SuperluminalError", base);
    py::register_exception<GroupMembershipError>(m, "GroupMembershipError", base);
    py::register_exception<IntegrationFailure>(m, "IntegrationFailure", base);

    // weyl_heisenberg
    py::class_<HeisenbergElement>(m, "HeisenbergElement")
        .def(py::init<Vector, Vector, double>(), "p"_a, "q"_a, "iota"_a)
        .def_static("identity", &HeisenbergElement::identity, "n"_a)
        .def_property_readonly("n", &HeisenbergElement::n)
        .def_property_readonly("p", &HeisenbergElement::p)
        .def_property_readonly("q", &HeisenbergElement::q)
        .def_property_readonly("iota", &HeisenbergElement::iota);

    py::class_<HeisenbergAlgebraElement>(m, "HeisenbergAlgebraElement")
        .def(py::init<Vector, Vector, double>(), "p_coeff"_a, "q_coeff"_a, "iota_coeff"_a)
        .def_static("P", &HeisenbergAlgebraElement::P, "n"_a, "i"_a)
        .def_static("Q", &HeisenbergAlgebraElement::Q, "n"_a, "i"_a)
        .def_static("I", &HeisenbergAlgebraElement::I, "n"_a)
        .def_property_readonly("p_coeff", &HeisenbergAlgebraElement::p_coeff)
        .def_property_readonly("q_coeff", &HeisenbergAlgebraElement::q_coeff)
        .def_property_readonly("iota_coeff", &HeisenbergAlgebraElement::iota_coeff);

    py::class_<AutomorphismElement>(m, "AutomorphismElement")
        .def(py::init<Matrix, Vector, double, double, int, double>(), "A"_a, "z"_a, "iota"_a,
             "delta"_a, "epsilon"_a, "tol"_a = kDecompositionTol)
        .def_static("identity", &AutomorphismElement::identity, "n"_a)
        .def_property_readonly("A", &AutomorphismElement::A)
        .def_property_readonly("z", &AutomorphismElement::z)
        .def_property_readonly("delta", &AutomorphismElement::delta)
        .def_property_readonly("epsilon", &AutomorphismElement::epsilon);

    m.def("wh_matrix", &wh_matrix, "g"_a);
    m.def("wh_from_matrix", &wh_from_matrix, "m"_a, "tol"_a = kDecompositionTol);
    m.def("wh_compose", &wh_compose, "a"_a, "b"_a);
    m.def("wh_inverse", &wh_inverse, "a"_a);
    m.def("algebra_matrix", &algebra_matrix, "x"_a);
    m.def("wh_exp", &wh_exp, "x"_a);
    m.def("wh_commutator", &wh_commutator, "x"_a, "y"_a);
    m.def("generators", &generators, "n"_a);
    m.def("central_extension_dimension", &central_extension_dimension, "m"_a);
    m.def("is_symplectic", &is_symplectic, "A"_a, "tol"_a);
    m.def("aut_matrix", &aut_matrix, "u"_a);
    m.def("aut_apply", &aut_apply, "u"_a, "g"_a, "tol"_a = kDecompositionTol);
    m.def("commutator_preserved",
          py::overload_cast<const AutomorphismElement&, double>(&commutator_preserved), "u"_a,
          "tol"_a);
    m.def("commutator_preserved_matrix",
          py::overload_cast<const Matrix&, double>(&commutator_preserved), "U"_a, "tol"_a);

    // phase_space_metrics
    py::class_<MetricSpec>(m, "MetricSpec")
        .def_static("born", &MetricSpec::born, "n"_a, "c"_a, "b"_a)
        .def_static("minkowski", &MetricSpec::minkowski, "n"_a, "c"_a)
        .def_static("newton", &MetricSpec::newton, "n"_a)
        .def("matrix", &MetricSpec::matrix);

    py::class_<Displacement>(m, "Displacement")
        .def(py::init<double, Vector, double, Vector>(), "dt"_a, "dq"_a, "de"_a, "dp"_a)
        .def_static("from_vector", &Displacement::from_vector, "v"_a)
        .def("to_vector", &Displacement::to_vector)
        .def_readonly("dt", &Displacement::dt)
        .def_readonly("dq", &Displacement::dq)
        .def_readonly("de", &Displacement::de)
        .def_readonly("dp", &Displacement::dp);

    py::class_<KinematicState>(m, "KinematicState")
        .def(py::init<Vector, Vector, double>(), "v"_a, "f"_a, "r"_a)
        .def_static("scalar", &KinematicState::scalar, "v"_a, "f"_a, "r"_a)
        .def_readonly("v", &KinematicState::v)
        .def_readonly("f", &KinematicState::f)
        .def_readonly("r", &KinematicState::r);

    m.def("omega_matrix", &omega_matrix, "n"_a);
    m.def("line_element", &line_element, "metric"_a, "d"_a);
    m.def(
        "interval_class",
        [](const MetricSpec& s, const Displacement& d, double tol) {
            return std::string(to_string(interval_class(s, d, tol)));
        },
        "metric"_a, "d"_a, "tol"_a = kNullTol);
    m.def("gamma_factor", &gamma_factor, "state"_a, "c"_a, "b"_a);
    m.def("null_surface_residual", &null_surface_residual, "state"_a, "c"_a, "b"_a);
    m.def(
        "null_velocity",
        [](double f, double r, double c, double b) {
            const NullVelocity v = null_velocity(f, r, c, b);
            return py::make_tuple(v.plus, v.minus);
        },
        "f"_a, "r"_a, "c"_a, "b"_a);
    m.def(
        "null_cone_sample",
        [](double r, double c, double b, int count) {
            py::list out;
            for (const auto& p : null_cone_sample(r, c, b, count))
                out.append(py::make_tuple(p.angle, p.v, p.f, p.residual));
            return out;
        },
        "r"_a, "c"_a, "b"_a, "count"_a);

    // reciprocal_transforms
    m.def("explicit_transform", &explicit_transform, "state"_a, "d"_a, "c"_a, "b"_a);
    m.def("transform_matrix", &transform_matrix, "state"_a, "c"_a, "b"_a);
    m.def("born_invariance_residual", &born_invariance_residual, "state"_a, "c"_a, "b"_a,
          "trials"_a, "seed"_a = 0);
    m.def("lorentz_boost", &lorentz_boost, "v"_a, "c"_a);
    m.def("contraction_limit_matrix", &contraction_limit_matrix, "state"_a, "c"_a);
    m.def(
        "contract_b",
        [](const KinematicState& s, const Displacement& d, double c, std::vector<double> bs) {
            return contraction_dict(contract_b(s, d, c, bs));
        },
        "state"_a, "d"_a, "c"_a, "b_values"_a);
    m.def(
        "contract_c",
        [](const KinematicState& s, const Displacement& d, std::vector<double> cs) {
            return contraction_dict(contract_c(s, d, cs));
        },
        "state"_a, "d"_a, "c_values"_a);

    // planck_scales
    m.def(
        "planck_from_cbh",
        [](double c, double b, double hbar) { return scales_dict(planck_from_cbh(c, b, hbar)); },
        "c"_a, "b"_a, "hbar"_a);
    m.def(
        "planck_from_cGh",
        [](double c, double G, double hbar) { return scales_dict(planck_from_cGh(c, G, hbar)); },
        "c"_a, "G"_a, "hbar"_a);
    m.def(
        "verify_identities",
        [](double c, double b, double hbar) {
            const IdentityResiduals r = verify_identities(planck_from_cbh(c, b, hbar), c, b, hbar);
            py::dict out;
            for (std::size_t i = 0; i < r.values.size(); ++i)
                out[py::str(std::string(IdentityResiduals::names[i]))] = r.values[i];
            return out;
        },
        "c"_a, "b"_a, "hbar"_a);

    // hamilton_flow
    py::class_<HamiltonianSystem>(m, "HamiltonianSystem")
        .def_static("preset", &preset, "name"_a, "n"_a = 1)
        .def_static(
            "polynomial",
            [](const std::string& text) { return PolynomialHamiltonian::from_json(text).system(); },
            "json_text"_a)
        .def_property_readonly("n", &HamiltonianSystem::n)
        .def_property_readonly("name", &HamiltonianSystem::name)
        .def("energy", &HamiltonianSystem::energy, "p"_a, "q"_a, "t"_a);

    m.def(
        "integrate_flow",
        [](const HamiltonianSystem& sys, const Vector& z0, double t1, int steps) {
            return integrate_flow(sys, ExtendedState::from_vector(z0), t1, steps).to_vector();
        },
        "system"_a, "z0"_a, "t1"_a, "steps"_a);
    m.def(
        "flow_jacobian",
        [](const HamiltonianSystem& sys, const Vector& z0, double t1, int steps, double h,
           bool richardson) {
            return flow_jacobian(sys, ExtendedState::from_vector(z0), t1, steps, h, richardson).J;
        },
        "system"_a, "z0"_a, "t1"_a, "steps"_a, "h"_a = kJacobianStep, "richardson"_a = false);
    m.def(
        "check_hsp_membership",
        [](const Matrix& J, double tol) {
            const HspReport r = check_hsp_membership(J, tol);
            return py::dict("symplectic_residual"_a = r.symplectic_residual,
                            "time_row_residual"_a = r.time_row_residual, "pass"_a = r.pass);
        },
        "J"_a, "tol"_a);
    m.def(
        "verify_hamilton_structure",
        [](const HamiltonianSystem& sys, const Vector& z0, double dt, int steps, double tol) {
            const FlowJacobian J = flow_jacobian(sys, ExtendedState::from_vector(z0), dt, steps);
            const HamiltonStructureReport r = verify_hamilton_structure(J, sys, tol);
            return py::dict("v_slot"_a = r.v_slot, "f_slot"_a = r.f_slot, "r_slot"_a = r.r_slot,
                            "expected_v"_a = r.expected_v, "expected_f"_a = r.expected_f,
                            "expected_r"_a = r.expected_r, "generator_error"_a = r.generator_error,
                            "zero_pattern_residual"_a = r.zero_pattern_residual,
                            "curvature"_a = r.curvature, "verdict"_a = to_string(r.verdict));
        },
        "system"_a, "z0"_a, "dt"_a, "steps"_a, "tol"_a);
}
