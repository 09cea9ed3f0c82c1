#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "garnier/error.hpp"
#include "garnier/linear_ode.hpp"
#include "garnier/monodromy.hpp"
#include "garnier/params.hpp"
#include "garnier/solutions.hpp"
#include "garnier/specfun.hpp"

namespace py = pybind11;
using namespace garnier;

namespace {

py::dict series_dict(const BiSeries& s) {
  py::dict d;
  for (int m = 0; m <= s.order(); ++m)
    for (int k = 0; k <= m; ++k) d[py::make_tuple(m - k, k)] = s.coeff(m - k, k);
  return d;
}

py::dict matrices(const std::vector<std::pair<std::string, Matrix2>>& items) {
  py::dict d;
  for (const auto& [name, m] : items) d[py::str(name)] = m;
  return d;
}

Params sampled(std::uint64_t seed, double margin, bool closed_forms) {
  if (!closed_forms) return sample_params(seed, margin);
  return sample_params(seed, margin, [](const Params& p) { return closed_forms_generic(p); });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Series solutions, monodromy data and limit equations of the degenerate Garnier system G(1112)";

  // message starts with the error kind, e.g. "NonGenericParams: ..."
  py::register_exception<Error>(m, "GarnierError", PyExc_ValueError);

  py::class_<Params>(m, "Params")
      .def(py::init([](cplx a0, cplx a1, cplx a2, cplx nu, cplx eta) { return Params::with_fuchs(a0, a1, a2, nu, eta); }),
           py::arg("alpha0"), py::arg("alpha1"), py::arg("alpha2"), py::arg("nu"), py::arg("eta"),
           "alphaInf follows from the Fuchs relation")
      .def_readwrite("alpha0", &Params::alpha0)
      .def_readwrite("alpha1", &Params::alpha1)
      .def_readwrite("alpha2", &Params::alpha2)
      .def_readwrite("alphaInf", &Params::alphaInf)
      .def_readwrite("nu", &Params::nu)
      .def_readwrite("eta", &Params::eta)
      .def("kappa", &Params::kappa)
      .def("fuchs_residual", &Params::fuchs_residual)
      .def("as_dict",
           [](const Params& p) {
             py::dict d;
             d["alpha0"] = p.alpha0;
             d["alpha1"] = p.alpha1;
             d["alpha2"] = p.alpha2;
             d["alphaInf"] = p.alphaInf;
             d["nu"] = p.nu;
             d["eta"] = p.eta;
             return d;
           })
      .def("__repr__", [](const Params& p) {
        return "Params(alpha0=" + py::repr(py::cast(p.alpha0)).cast<std::string>() +
               ", alpha1=" + py::repr(py::cast(p.alpha1)).cast<std::string>() +
               ", alpha2=" + py::repr(py::cast(p.alpha2)).cast<std::string>() +
               ", nu=" + py::repr(py::cast(p.nu)).cast<std::string>() +
               ", eta=" + py::repr(py::cast(p.eta)).cast<std::string>() + ")";
      });

  m.def("check_generic", [](const Params& p, double margin) { return check_generic(p, margin).violations; },
        py::arg("params"), py::arg("margin") = 0.05, "List of violated genericity conditions; empty when generic");
  m.def("sample_params", &sampled, py::arg("seed"), py::arg("margin") = 0.05, py::arg("closed_forms") = false,
        "Seeded generic tuple; closed_forms also requires every closed-form monodromy to exist");

  py::class_<SolutionExpansion>(m, "Expansion")
      .def_property_readonly("index", [](const SolutionExpansion& e) { return e.id.index; })
      .def_property_readonly("order", [](const SolutionExpansion& e) { return e.order; })
      .def_property_readonly("params", [](const SolutionExpansion& e) { return e.params; })
      .def_property_readonly("depole_t1", [](const SolutionExpansion& e) { return e.id.depole_t1; })
      .def_property_readonly("depole_s2", [](const SolutionExpansion& e) { return e.id.depole_s2; })
      .def("depoled",
           [](const SolutionExpansion& e) {
             const auto z = e.depoled();
             py::dict d;
             const char* names[] = {"Q1", "Q2", "P1", "P2"};
             for (int v = 0; v < 4; ++v) d[names[v]] = series_dict(z[v]);
             return d;
           },
           "Holomorphic series (Q1, Q2, P1, P2) keyed by (j, k) for t1^j s2^k")
      .def("evaluate",
           [](const SolutionExpansion& e, cplx t1, cplx t2) {
             const cplx s2 = t2 / (t2 - 1.0);
             return py::make_tuple(evaluate(e.q1, t1, s2), evaluate(e.q2, t1, s2), evaluate(e.p1, t1, s2),
                                   evaluate(e.p2, t1, s2));
           },
           py::arg("t1"), py::arg("t2"), "(q1, q2, p1, p2) at the given times");

  m.def("expand", [](const Params& p, int index, int order) { return expand_solution(p, index, order); },
        py::arg("params"), py::arg("index"), py::arg("order"));
  m.def("residual",
        [](const SolutionExpansion& e) {
          const auto r = residual_report(e);
          py::dict d;
          d["absolute"] = r.absolute;
          d["scale"] = r.scale;
          d["relative"] = r.relative;
          d["through_degree"] = r.through;
          return d;
        });
  m.def("convergence", [](const SolutionExpansion& e) {
    const auto c = convergence_diagnostic(e);
    py::dict d;
    d["rho"] = c.rho;
    d["slope"] = c.slope;
    d["fit_quality"] = c.fit_quality;
    return d;
  });

  m.def("garnier_coords",
        [](const SolutionExpansion& e, cplx t1, cplx t2) {
          const auto g = to_garnier_coords(e, t1, t2);
          py::dict d;
          d["lambda1"] = g.lambda1;
          d["lambda2"] = g.lambda2;
          d["mu1"] = g.mu1;
          d["mu2"] = g.mu2;
          d["K1"] = g.K1;
          d["K2"] = g.K2;
          return d;
        },
        py::arg("expansion"), py::arg("t1"), py::arg("t2"));

  m.def("closed_form_monodromy",
        [](const Params& p, int index, bool as_printed) {
          const auto t = closed_form_monodromy(p, index, as_printed ? TupleVariant::AsPrinted : TupleVariant::Consistent);
          py::dict d = matrices(labeled(t));
          d["S1"] = t.S1;
          d["S2"] = t.S2;
          d["expT1"] = t.expT1;
          return d;
        },
        py::arg("params"), py::arg("index"), py::arg("as_printed") = false);
  m.def("group_identities",
        [](const Params& p, int index) {
          const auto r = group_identities(closed_form_monodromy(p, index), index);
          py::dict d;
          d["cyclic"] = r.cyclic;
          py::dict c;
          for (const auto& [name, v] : r.commutators) c[py::str(name)] = v;
          d["commutators"] = c;
          d["stokes_trivial"] = r.stokes_trivial;
          return d;
        },
        py::arg("params"), py::arg("index"));

  m.def("limit_equation",
        [](const Params& p, int index, const std::string& stage) {
          const RationalODE ode = limit_equation({parse_stage(stage), index}, p);
          py::dict d;
          d["name"] = ode.name;
          d["variable"] = ode.variable;
          d["singularities"] = ode.singularities();
          d["apparent"] = ode.apparent;
          py::dict c;
          for (const auto& [k, v] : ode.constants) c[py::str(k)] = v;
          d["constants"] = c;
          py::list exps;
          for (const auto& s : riemann_scheme(ode)) {
            py::dict e;
            e["point"] = s.at_infinity ? py::object(py::str("infinity")) : py::cast(s.point);
            e["irregular"] = s.exps.irregular;
            e["rho"] = std::vector<cplx>{s.exps.rho[0], s.exps.rho[1]};
            exps.append(e);
          }
          d["riemann_scheme"] = exps;
          return d;
        },
        py::arg("params"), py::arg("index"), py::arg("stage"));
  m.def("limit_loop",
        [](const Params& p, int index, const std::string& stage, std::optional<cplx> point, std::optional<cplx> base) {
          const RationalODE ode = limit_equation({parse_stage(stage), index}, p);
          const LoopPath l = point ? loop_around(ode, *point, base) : loop_around_infinity(ode, base);
          return numeric_monodromy(ode, l);
        },
        py::arg("params"), py::arg("index"), py::arg("stage"), py::arg("point") = py::none(),
        py::arg("base") = py::none(), "Numeric loop of a limit equation; point=None goes around infinity");

  m.def("gamma", py::overload_cast<cplx>(&garnier::gamma));
  m.def("rgamma", &rgamma);
  m.def("hyp2f1", py::overload_cast<cplx, cplx, cplx, cplx>(&hyp2f1));
  m.def("hyp1f1", py::overload_cast<cplx, cplx, cplx>(&hyp1f1));
}
