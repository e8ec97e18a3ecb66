#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "meanorder/errors.hpp"
#include "meanorder/gini.hpp"
#include "meanorder/hardy.hpp"
#include "meanorder/mean.hpp"
#include "meanorder/metric.hpp"
#include "meanorder/poset.hpp"
#include "meanorder/verify.hpp"

namespace py = pybind11;
using namespace meanorder;

namespace {

std::vector<std::size_t> set_to_indices(const Poset& p, ElementSet s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (s & (ElementSet{1} << i)) out.push_back(i);
  return out;
}

ElementSet names_to_set(const Poset& p, const std::vector<std::string>& names) {
  ElementSet s = 0;
  for (const auto& n : names) s |= ElementSet{1} << p.index_of(n);
  return s;
}

}  // namespace

PYBIND11_MODULE(_meanorder, m) {
  m.doc() = "means, their pointwise order, hardy constants and the sup distance";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<EvaluationError>(m, "EvaluationError", PyExc_ArithmeticError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  py::class_<GiniParams>(m, "GiniParams")
      .def(py::init<double, double>(), py::arg("p"), py::arg("q"))
      .def_readwrite("p", &GiniParams::p)
      .def_readwrite("q", &GiniParams::q)
      .def("lo", &GiniParams::lo)
      .def("hi", &GiniParams::hi)
      .def("__repr__", [](const GiniParams& g) {
        std::ostringstream os;
        os << "GiniParams(" << g.p << ", " << g.q << ")";
        return os.str();
      });

  py::class_<Mean>(m, "Mean")
      .def_static("gini", [](double p, double q) { return Mean::gini(p, q); }, py::arg("p"),
                  py::arg("q"))
      .def_static(
          "black_box",
          [](const std::string& label, const std::function<double(std::vector<double>)>& fn) {
            return Mean::black_box(
                label, [fn](const SampleVector& v) { return fn(v.entries()); });
          },
          py::arg("label"), py::arg("fn"))
      .def_property_readonly("is_gini", &Mean::is_gini)
      .def("serialize", &Mean::serialize)
      .def("__call__",
           [](const Mean& m_, const std::vector<double>& v) { return m_(SampleVector(v)); })
      .def("__repr__", [](const Mean& m_) { return "Mean(" + m_.serialize() + ")"; });

  m.def("parse_mean", [](const std::string& s) { return parse_mean(s); });
  m.def("evaluate",
        [](const Mean& mean, const std::vector<double>& v) { return mean(SampleVector(v)); },
        py::arg("mean"), py::arg("v"));

  m.def("gini_eval",
        [](double p, double q, const std::vector<double>& v) {
          return gini_eval({p, q}, SampleVector(v));
        },
        py::arg("p"), py::arg("q"), py::arg("v"));
  m.def("gini_leq",
        [](const std::pair<double, double>& a, const std::pair<double, double>& b) {
          return gini_leq({a.first, a.second}, {b.first, b.second});
        },
        py::arg("a"), py::arg("b"));
  m.def("gini_interval_contains",
        [](const std::pair<double, double>& lower, const std::pair<double, double>& upper,
           const std::pair<double, double>& candidate) {
          return gini_interval_contains({lower.first, lower.second},
                                        {upper.first, upper.second},
                                        {candidate.first, candidate.second});
        },
        py::arg("lower"), py::arg("upper"), py::arg("candidate"));

  py::enum_<SampleStrategy>(m, "SampleStrategy")
      .value("grid", SampleStrategy::grid)
      .value("log_uniform", SampleStrategy::log_uniform)
      .value("adversarial", SampleStrategy::adversarial)
      .value("mixed", SampleStrategy::mixed);

  py::class_<DomainSampler>(m, "DomainSampler")
      .def(py::init<>())
      .def_readwrite("n_min", &DomainSampler::n_min)
      .def_readwrite("n_max", &DomainSampler::n_max)
      .def_readwrite("lo", &DomainSampler::lo)
      .def_readwrite("hi", &DomainSampler::hi)
      .def_readwrite("strategy", &DomainSampler::strategy)
      .def_readwrite("seed", &DomainSampler::seed)
      .def("at", [](const DomainSampler& s, std::uint64_t i) { return s.at(i).entries(); });

  m.def(
      "pointwise_leq",
      [](const Mean& a, const Mean& b, const DomainSampler& s, std::size_t samples) {
        const auto check = pointwise_leq(a, b, s, samples);
        py::dict out;
        switch (check.verdict) {
          case OrderCheck::Verdict::yes_certain: out["verdict"] = "yes"; break;
          case OrderCheck::Verdict::no_certain: out["verdict"] = "no"; break;
          case OrderCheck::Verdict::no_witness: out["verdict"] = "no"; break;
          case OrderCheck::Verdict::undefeated: out["verdict"] = "undefeated"; break;
        }
        out["certain"] = check.verdict == OrderCheck::Verdict::yes_certain ||
                         check.verdict == OrderCheck::Verdict::no_certain;
        out["samples"] = check.samples;
        out["witness"] = check.witness ? py::cast(check.witness->entries()) : py::none();
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("sampler") = DomainSampler{},
      py::arg("samples") = 2000);

  py::class_<SequenceFamily>(m, "SequenceFamily")
      .def_static("power_law", &SequenceFamily::power_law, py::arg("eps"), py::arg("truncation"))
      .def_static("geometric", &SequenceFamily::geometric, py::arg("r"), py::arg("truncation"))
      .def_static("explicit_list", &SequenceFamily::explicit_list, py::arg("entries"))
      .def_readonly("truncation", &SequenceFamily::truncation)
      .def("describe", &SequenceFamily::describe);

  py::class_<HardyBudget>(m, "HardyBudget")
      .def(py::init<>())
      .def_readwrite("max_terms", &HardyBudget::max_terms)
      .def_readwrite("max_black_box_terms", &HardyBudget::max_black_box_terms)
      .def_readwrite("grid_points", &HardyBudget::grid_points)
      .def_readwrite("refine_steps", &HardyBudget::refine_steps)
      .def_readwrite("use_power_law", &HardyBudget::use_power_law)
      .def_readwrite("use_geometric", &HardyBudget::use_geometric);

  py::class_<HardyEstimate>(m, "HardyEstimate")
      .def_readonly("lower", &HardyEstimate::lower)
      .def_readwrite("upper", &HardyEstimate::upper)
      .def_readonly("witness", &HardyEstimate::witness)
      .def_readonly("terms_used", &HardyEstimate::terms_used)
      .def_readonly("budget_limited", &HardyEstimate::budget_limited);

  m.def("hardy_ratio", &hardy_ratio, py::arg("mean"), py::arg("family"),
        py::arg("max_work_units") = kDefaultHardyWorkUnits);
  m.def("hardy_lower_bound", &hardy_lower_bound, py::arg("mean"),
        py::arg("budget") = HardyBudget{}, py::arg("seed") = 0);
  m.def("hardy_sandwich", [](const HardyEstimate& lo, const HardyEstimate& hi) {
    const auto enc = hardy_sandwich(lo, hi);
    return std::make_pair(enc.lower, enc.upper);
  });

  py::class_<SharedDomain>(m, "SharedDomain")
      .def(py::init<>())
      .def_static("box", &SharedDomain::box, py::arg("n"), py::arg("lo"), py::arg("hi"),
                  py::arg("grid"))
      .def_readwrite("n", &SharedDomain::n)
      .def_readwrite("lo", &SharedDomain::lo)
      .def_readwrite("hi", &SharedDomain::hi)
      .def_readwrite("grid", &SharedDomain::grid)
      .def_readwrite("extra", &SharedDomain::extra);

  m.def("rho", [](const Mean& a, const Mean& b, const SharedDomain& dom) {
    const auto est = rho(a, b, dom);
    py::dict out;
    out["value"] = est.value;
    out["witness"] = est.witness;
    return out;
  });
  m.def(
      "ball_member",
      [](const Mean& center, double r, const Mean& cand, const SharedDomain& dom, bool closed) {
        const auto check = ball_member(center, r, cand, dom, closed);
        py::dict out;
        out["verdict"] = check.verdict == BallVerdict::outside ? "outside" : "undefeated";
        out["estimate"] = check.estimate.value;
        out["witness"] = check.estimate.witness;
        return out;
      },
      py::arg("center"), py::arg("r"), py::arg("candidate"), py::arg("dom"),
      py::arg("closed") = true);

  py::class_<Poset>(m, "Poset")
      .def_static("parse", &Poset::parse_text, py::arg("text"))
      .def_static("chain", &Poset::chain, py::arg("n"))
      .def_static("diamond", &Poset::diamond)
      .def("__len__", &Poset::size)
      .def("leq",
           [](const Poset& p, const std::string& a, const std::string& b) {
             return p.leq(p.index_of(a), p.index_of(b));
           })
      .def("names", [](const Poset& p) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < p.size(); ++i) out.push_back(p.name(i));
        return out;
      });

  m.def("bracket",
        [](const Poset& p, const std::vector<std::string>& space, const std::string& lower,
           const std::string& upper) {
          const auto got =
              bracket(SubsetView(p, names_to_set(p, space)), p.index_of(lower), p.index_of(upper));
          std::vector<std::string> out;
          for (auto i : set_to_indices(p, got)) out.push_back(p.name(i));
          return out;
        },
        py::arg("poset"), py::arg("space"), py::arg("lower"), py::arg("upper"));
  m.def("gi_set",
        [](const Poset& p, const std::vector<std::string>& inner) {
          const auto got = gi_set(SubsetView(p, names_to_set(p, inner)));
          std::vector<std::string> out;
          for (auto i : set_to_indices(p, got)) out.push_back(p.name(i));
          return out;
        },
        py::arg("poset"), py::arg("inner"));
  m.def("is_interval_type",
        [](const Poset& p, const std::vector<std::string>& inner) {
          const auto verdict = is_interval_type(SubsetView(p, names_to_set(p, inner)));
          py::dict out;
          out["interval_type"] = verdict.interval_type;
          out["witness"] = verdict.witness ? py::cast(p.name(*verdict.witness)) : py::none();
          return out;
        },
        py::arg("poset"), py::arg("inner"));

  m.def(
      "verify_paper",
      [](std::uint64_t seed, std::size_t trials, std::int64_t hardy_terms,
         const std::string& sabotage) {
        verify::SuiteConfig cfg;
        cfg.seed = seed;
        cfg.trials = trials;
        cfg.hardy_terms = hardy_terms;
        cfg.mutations = verify::Mutations::parse(sabotage);
        const auto rows = verify::run_suite(cfg);
        py::list out;
        for (const auto& row : rows) {
          py::dict rec;
          rec["proposition"] = row.id;
          rec["trials"] = row.trials;
          rec["pass"] = row.pass;
          rec["witness"] = row.witness;
          out.append(rec);
        }
        return out;
      },
      py::arg("seed") = 0, py::arg("trials") = 400, py::arg("hardy_terms") = 20000,
      py::arg("sabotage") = "");

  m.attr("__version__") = "0.1.0";
}
