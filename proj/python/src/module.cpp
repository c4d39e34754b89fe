#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "skewortho/asymptotics.hpp"
#include "skewortho/checks.hpp"
#include "skewortho/kernel.hpp"
#include "skewortho/quaternion.hpp"
#include "skewortho/sampler.hpp"
#include "skewortho/sop_family.hpp"

namespace py = pybind11;
using namespace skewortho;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Applies f elementwise over an array (or a scalar promoted to one).
template <class F>
py::array_t<double> map1(const Array& x, F f) {
    py::array_t<double> out(x.request().shape);
    const double* in = x.data();
    double* o = out.mutable_data();
    for (py::ssize_t i = 0; i < x.size(); ++i) o[i] = f(in[i]);
    return out;
}

template <class F>
py::array_t<double> map2(const Array& x, const Array& y, F f) {
    if (x.size() != y.size()) throw py::value_error("x and y must have the same shape");
    py::array_t<double> out(x.request().shape);
    const double *a = x.data(), *b = y.data();
    double* o = out.mutable_data();
    for (py::ssize_t i = 0; i < x.size(); ++i) o[i] = f(a[i], b[i]);
    return out;
}

py::array_t<double> draws_array(const SampleSet& s) {
    const py::ssize_t rows = py::ssize_t(s.draws.size()), cols = s.spec.two_N;
    py::array_t<double> out({rows, cols});
    auto m = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < rows; ++i)
        for (py::ssize_t j = 0; j < cols; ++j) m(i, j) = s.draws[i][j];
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Skew-orthogonal polynomials, kernels and ensembles for beta = 1 and 4";
    m.attr("__version__") = SKEWORTHO_VERSION;

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParameterDomainError>(m, "ParameterDomainError", base);
    py::register_exception<OrderRangeError>(m, "OrderRangeError", base);
    py::register_exception<ConfigurationError>(m, "ConfigurationError", base);
    py::register_exception<EvaluationError>(m, "EvaluationError", base);
    py::register_exception<IntegrationError>(m, "IntegrationError", base);
    py::register_exception<BoundaryError>(m, "BoundaryError", base);
    py::register_exception<DegeneratePointError>(m, "DegeneratePointError", base);
    py::register_exception<SingularDenominatorError>(m, "SingularDenominatorError", base);
    py::register_exception<ValidityWindowError>(m, "ValidityWindowError", base);
    py::register_exception<TuningError>(m, "TuningError", base);
    py::register_exception<ConventionError>(m, "ConventionError", base);

    py::enum_<WeightKind>(m, "WeightKind")
        .value("JACOBI", WeightKind::Jacobi)
        .value("LAGUERRE", WeightKind::Laguerre)
        .value("GAUSSIAN", WeightKind::Gaussian);
    py::enum_<Convention>(m, "Convention").value("FULL", Convention::FullWeight).value("SQRT", Convention::SqrtWeight);
    py::enum_<KernelMethod>(m, "KernelMethod").value("SUM", KernelMethod::Sum).value("GCD", KernelMethod::Gcd);
    py::enum_<BandKind>(m, "BandKind").value("P", BandKind::P).value("R", BandKind::R);
    py::enum_<SopKind>(m, "SopKind").value("PHI", SopKind::Phi).value("PSI", SopKind::Psi);

    py::class_<WeightSpec>(m, "WeightSpec")
        .def_static("jacobi", &WeightSpec::jacobi, py::arg("a"), py::arg("b"))
        .def_static("laguerre", &WeightSpec::laguerre, py::arg("a"))
        .def_static("gaussian", &WeightSpec::gaussian)
        .def_readonly("kind", &WeightSpec::kind)
        .def_readonly("a", &WeightSpec::a)
        .def_readonly("b", &WeightSpec::b)
        .def_property_readonly("name", &WeightSpec::name)
        .def_property_readonly("support", [](const WeightSpec& w) { return py::make_tuple(w.lower(), w.upper()); })
        .def("__call__", [](const WeightSpec& w, const Array& x) { return map1(x, [&](double t) { return w(t); }); })
        .def("__repr__", [](const WeightSpec& w) {
            return "WeightSpec(" + w.name() + ", a=" + std::to_string(w.a) + ", b=" + std::to_string(w.b) + ")";
        });

    py::class_<SopFamily, std::shared_ptr<SopFamily>>(m, "SopFamily")
        .def(py::init([](int beta, WeightSpec w, int max_order, Convention c) {
                 return std::make_shared<SopFamily>(beta, w, c, max_order);
             }),
             py::arg("beta"), py::arg("weight"), py::arg("max_order"), py::arg("convention") = Convention::FullWeight)
        .def_property_readonly("beta", &SopFamily::beta)
        .def_property_readonly("weight", &SopFamily::weight)
        .def_property_readonly("convention", &SopFamily::convention)
        .def_property_readonly("max_order", &SopFamily::max_order)
        .def("g", &SopFamily::g, py::arg("n"))
        .def("phi", [](const SopFamily& f, int n, const Array& x) { return map1(x, [&](double t) { return f.phi(n, t); }); },
             py::arg("n"), py::arg("x"))
        .def("psi", [](const SopFamily& f, int n, const Array& x) { return map1(x, [&](double t) { return f.psi(n, t); }); },
             py::arg("n"), py::arg("x"))
        .def(
            "eval_all",
            [](const SopFamily& f, double x, int n) {
                py::array_t<double> phi(n), psi(n);
                f.eval_all(x, n, phi.mutable_data(), psi.mutable_data());
                return py::make_tuple(phi, psi);
            },
            py::arg("x"), py::arg("n"))
        .def("skew_gram", &SopFamily::skew_gram, py::arg("n"))
        .def("log_ensemble_weight", &SopFamily::log_ensemble_weight, py::arg("x"));

    m.def("z_matrix", &z_matrix, py::arg("n"));
    m.def("duality_map", &duality_map, py::arg("beta1"), py::arg("beta4"), py::arg("m"), py::arg("x"));
    m.def(
        "extract_band", [](const SopFamily& f, BandKind k, int size) { return extract_band(f, k, size).entries(); },
        py::arg("family"), py::arg("which"), py::arg("size"));
    m.def(
        "closed_form_band",
        [](const SopFamily& f, BandKind k, int size) {
            const ClosedFormBand c = closed_form_band(f, k, size);
            return py::make_tuple(c.values.entries(), Eigen::MatrixXi(c.defined.cast<int>()));
        },
        py::arg("family"), py::arg("which"), py::arg("size"));

    py::class_<KernelEvaluator>(m, "KernelEvaluator")
        .def(py::init([](std::shared_ptr<SopFamily> f, int N, KernelMethod method) {
                 return std::make_unique<KernelEvaluator>(std::move(f), N, method);
             }),
             py::arg("family"), py::arg("N"), py::arg("method") = KernelMethod::Sum)
        .def_property_readonly("N", &KernelEvaluator::N)
        .def_property_readonly("method", &KernelEvaluator::method)
        .def("s_kernel",
             [](const KernelEvaluator& ev, const Array& x, const Array& y) {
                 return map2(x, y, [&](double a, double b) { return ev.s_kernel(a, b); });
             },
             py::arg("x"), py::arg("y"))
        .def("s_kernel_sum",
             [](const KernelEvaluator& ev, const Array& x, const Array& y) {
                 return map2(x, y, [&](double a, double b) { return ev.s_kernel_sum(a, b); });
             },
             py::arg("x"), py::arg("y"))
        .def("s_kernel_gcd", &KernelEvaluator::s_kernel_gcd, py::arg("x"), py::arg("y"), py::arg("windowed") = true)
        .def("d_kernel", &KernelEvaluator::d_kernel, py::arg("x"), py::arg("y"))
        .def("i_kernel", &KernelEvaluator::i_kernel, py::arg("x"), py::arg("y"))
        .def("r2_matrix", &KernelEvaluator::r2_matrix, py::arg("x"), py::arg("y"))
        .def("density",
             [](const KernelEvaluator& ev, const Array& x) { return map1(x, [&](double t) { return ev.density(t); }); },
             py::arg("x"))
        .def("unfolded_kernel",
             [](const KernelEvaluator& ev, double x, const Array& r) {
                 return map1(r, [&](double t) { return ev.unfolded_kernel(x, t); });
             },
             py::arg("x"), py::arg("r"))
        .def("P", [](const KernelEvaluator& ev) { return ev.P().entries(); })
        .def("R", [](const KernelEvaluator& ev) { return ev.R().entries(); });

    py::class_<AsymptoticContext>(m, "AsymptoticContext")
        .def(py::init([](WeightSpec w, int beta, int N, double eps, Convention c) {
                 return AsymptoticContext{w, beta, N, eps, c};
             }),
             py::arg("weight"), py::arg("beta"), py::arg("N"), py::arg("epsilon_margin") = 0.15,
             py::arg("convention") = Convention::SqrtWeight)
        .def_readonly("weight", &AsymptoticContext::weight)
        .def_readonly("beta", &AsymptoticContext::beta)
        .def_readonly("N", &AsymptoticContext::N);
    m.def(
        "predicted_density",
        [](const AsymptoticContext& ctx, const Array& x) { return map1(x, [&](double t) { return predicted_density(ctx, t); }); },
        py::arg("ctx"), py::arg("x"));
    m.def(
        "predicted_bulk", [](const AsymptoticContext& ctx) { const Interval i = predicted_bulk(ctx); return py::make_tuple(i.lo, i.hi); },
        py::arg("ctx"));
    m.def(
        "sine_kernel", [](int beta, const Array& r) { return map1(r, [&](double t) { return sine_kernel(beta, t); }); },
        py::arg("beta"), py::arg("r"));
    m.def("op_asymptotic", &op_asymptotic, py::arg("ctx"), py::arg("family"), py::arg("j"), py::arg("x"));
    m.def("sop_asymptotic", &sop_asymptotic, py::arg("ctx"), py::arg("n"), py::arg("kind"), py::arg("x"));

    py::class_<EnsembleSpec>(m, "EnsembleSpec")
        .def(py::init([](int beta, WeightSpec w, int two_N) {
                 EnsembleSpec s{beta, w, two_N};
                 s.validate();
                 return s;
             }),
             py::arg("beta"), py::arg("weight"), py::arg("two_N"))
        .def_readonly("beta", &EnsembleSpec::beta)
        .def_readonly("weight", &EnsembleSpec::weight)
        .def_readonly("two_N", &EnsembleSpec::two_N)
        .def(
            "density_evaluator",
            [](const EnsembleSpec& s, KernelMethod method) {
                return std::make_unique<KernelEvaluator>(s.density_family(), s.kernel_blocks(), method);
            },
            py::arg("method") = KernelMethod::Sum)
        .def("log_weight", &EnsembleSpec::log_weight, py::arg("x"));

    py::class_<SampleSet>(m, "SampleSet")
        .def_readonly("spec", &SampleSet::spec)
        .def_property_readonly("draws", &draws_array)
        .def_readonly("steps", &SampleSet::steps)
        .def_readonly("burn_in", &SampleSet::burn_in)
        .def_readonly("acceptance_rate", &SampleSet::acceptance_rate)
        .def_readonly("seed", &SampleSet::seed)
        .def("to_csv", &samples_csv)
        .def("sidecar", &sidecar_text);

    py::class_<DensityComparison>(m, "DensityComparison")
        .def_readonly("edges", &DensityComparison::edges)
        .def_readonly("observed", &DensityComparison::observed)
        .def_readonly("expected", &DensityComparison::expected)
        .def_readonly("z", &DensityComparison::z)
        .def_readonly("max_abs_z", &DensityComparison::max_abs_z)
        .def_readonly("draws", &DensityComparison::draws)
        .def_readonly("passed", &DensityComparison::passed);

    m.def("mcmc_sample", &mcmc_sample, py::arg("spec"), py::arg("steps"), py::arg("burn_in"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());
    m.def("compare_density", &compare_density, py::arg("samples"), py::arg("evaluator"), py::arg("bins") = 20);
    m.def("log_partition_function", py::overload_cast<const EnsembleSpec&>(&log_partition_function), py::arg("spec"));

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("passed", &CheckResult::passed)
        .def_readonly("value", &CheckResult::value)
        .def_readonly("tolerance", &CheckResult::tolerance)
        .def_readonly("detail", &CheckResult::detail);
    m.def(
        "verify_suite",
        [](int beta, const WeightSpec& w, Convention c, int N) { return verify_suite(beta, w, c, N); },
        py::arg("beta"), py::arg("weight"), py::arg("convention"), py::arg("N"));
}
