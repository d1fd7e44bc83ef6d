#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "graphtron/comparator.hpp"
#include "graphtron/experiment.hpp"
#include "graphtron/gappletron.hpp"
#include "graphtron/protocol.hpp"
#include "graphtron/validate.hpp"

namespace py = pybind11;
using namespace graphtron;

namespace {

// A Gappletron together with the RNG it samples from.
class PyGappletron {
 public:
  PyGappletron(const FeedbackGraph& graph, std::size_t dim, const std::string& loss, double kappa, double gamma,
               const std::string& oco, double radius, std::uint64_t seed)
      : learner_(graph, make_config(loss, kappa, gamma, oco, radius), dim), rng_(seed) {}

  py::dict predict(const Vector& x) {
    const PredictionOutcome& p = learner_.predict_distribution(x);
    py::dict d;
    d["p"] = p.p_prime;
    d["y_star"] = p.y_star;
    d["gap"] = p.gap;
    d["gamma_t"] = p.gamma_t;
    d["zeta"] = p.zeta;
    return d;
  }

  Action act(const Vector& x) { return learner_.act(x, rng_); }

  py::tuple update(const Vector& x, Action played, const std::vector<std::pair<Action, bool>>& feedback) {
    Feedback fb;
    for (const auto& [a, m] : feedback) fb.push_back({a, m});
    const UpdateResult r = learner_.update(x, played, fb);
    return py::make_tuple(r.observed, r.importance_weight);
  }

  Gappletron learner_;
  Rng rng_;

 private:
  static GappletronConfig make_config(const std::string& loss, double kappa, double gamma, const std::string& oco,
                                      double radius) {
    GappletronConfig c;
    c.loss = SurrogateLoss{parse_loss_kind(loss), kappa};
    c.gamma = gamma;
    c.oco = parse_oco_mode(oco);
    c.radius = radius;
    return c;
  }
};

SurrogateLoss make_loss(const std::string& kind, double kappa) { return SurrogateLoss{parse_loss_kind(kind), kappa}; }

std::string run(const std::string& graph, const std::string& learner, const std::string& loss, double kappa,
                std::size_t k, std::size_t dprime, double noise, std::size_t rounds, std::size_t reps,
                std::uint64_t seed, std::optional<double> gamma, const std::string& tuning, double delta,
                const std::string& oco, double radius, std::optional<double> explore, std::size_t threads) {
  RunSpec s;
  s.graph = parse_graph_kind(graph);
  s.learner = parse_learner_kind(learner);
  s.loss = make_loss(loss, kappa);
  s.data = SynthConfig{k, dprime, noise};
  s.data.check();
  s.rounds = rounds;
  s.reps = reps;
  s.seed = seed;
  s.gamma = gamma;
  s.tuning = parse_tuning(tuning);
  s.delta = delta;
  s.oco = parse_oco_mode(oco);
  s.radius = radius;
  s.explore = explore;
  std::vector<RunOutput> outputs;
  {
    py::gil_scoped_release release;
    outputs = run_matrix({s}, false, threads == 0 ? worker_count() : threads);
  }
  std::ostringstream out;
  write_csv_header(out);
  for (const RunOutput& o : outputs) write_csv_rows(out, s, o);
  return out.str();
}

std::vector<py::dict> comparator(const std::string& trace_csv, const std::string& loss, std::size_t epochs,
                                 double radius) {
  std::istringstream in(trace_csv);
  const SurrogateLoss l = make_loss(loss, 0.5);
  std::vector<py::dict> rows;
  for (const Trace& trace : read_traces(in)) {
    const ComparatorFit fit = offline_comparator(trace.sequence, trace.n_actions, trace.dim, l, {epochs, radius});
    const std::size_t at[] = {trace.sequence.size()};
    for (const RegretReport& r : surrogate_regret(trace.sequence, fit, l, trace.dim, at)) {
      py::dict d;
      d["run_id"] = trace.run_id;
      d["t"] = r.t;
      d["mistakes"] = r.mistakes;
      d["comparator_loss"] = r.comparator_loss;
      d["surrogate_regret"] = r.surrogate_regret;
      d["comparator_norm"] = r.comparator_norm;
      rows.push_back(d);
    }
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Online multiclass classification under feedback graphs";

  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);

  py::class_<FeedbackGraph>(m, "FeedbackGraph")
      .def(py::init([](std::size_t n, std::vector<std::vector<Action>> out, std::vector<Action> labels) {
             return validate(RawGraph{n, std::move(out), std::move(labels)});
           }),
           py::arg("n_actions"), py::arg("out"), py::arg("label_actions") = std::vector<Action>{})
      .def_static(
          "standard", [](const std::string& kind, std::size_t n) { return make_standard(parse_graph_kind(kind), n); },
          py::arg("kind"), py::arg("n_classes"))
      .def_property_readonly("n_actions", &FeedbackGraph::n_actions)
      .def_property_readonly("label_actions", &FeedbackGraph::label_actions)
      .def("out", [](const FeedbackGraph& g, Action y) { return g.out(y); })
      .def("observes", &FeedbackGraph::observes)
      .def("revealing_set", [](const FeedbackGraph& g) { return revealing_set(g); })
      .def("dominating_set", [](const FeedbackGraph& g) { return greedy_dominating_set(g); })
      .def("domination_number", [](const FeedbackGraph& g) { return exact_domination_number(g); })
      .def("feedback", [](const FeedbackGraph& g, Action played, Action y_true) {
        std::vector<std::pair<Action, bool>> out;
        for (const FeedbackPair& f : feedback_set(g, played, y_true)) out.emplace_back(f.action, f.mistake);
        return out;
      });

  m.def(
      "loss_value",
      [](const std::string& kind, const Matrix& w, const Vector& x, Action y, double kappa) {
        return loss_value(make_loss(kind, kappa), w, x, y);
      },
      py::arg("kind"), py::arg("w"), py::arg("x"), py::arg("y"), py::arg("kappa") = 0.5);
  m.def(
      "loss_gradient",
      [](const std::string& kind, const Matrix& w, const Vector& x, Action y, double kappa) {
        return loss_gradient(make_loss(kind, kappa), w, x, y);
      },
      py::arg("kind"), py::arg("w"), py::arg("x"), py::arg("y"), py::arg("kappa") = 0.5);
  m.def(
      "gap",
      [](const std::string& kind, const Matrix& w, const Vector& x, double kappa) {
        return gap_value(make_loss(kind, kappa), w, x);
      },
      py::arg("kind"), py::arg("w"), py::arg("x"), py::arg("kappa") = 0.5);

  py::class_<PyGappletron>(m, "Gappletron")
      .def(py::init<const FeedbackGraph&, std::size_t, const std::string&, double, double, const std::string&, double,
                    std::uint64_t>(),
           py::arg("graph"), py::arg("dim"), py::arg("loss") = "smooth-hinge", py::arg("kappa") = 0.5,
           py::arg("gamma") = 1.0, py::arg("oco") = "adaptive", py::arg("radius") = 1.0, py::arg("seed") = 1)
      .def("predict", &PyGappletron::predict, py::arg("x"))
      .def("act", &PyGappletron::act, py::arg("x"))
      .def("update", &PyGappletron::update, py::arg("x"), py::arg("played"), py::arg("feedback"))
      .def_property_readonly("weights", [](const PyGappletron& g) { return Matrix(g.learner_.weights()); })
      .def_property_readonly("explore_count", [](const PyGappletron& g) { return g.learner_.explore_count(); })
      .def_property_readonly("rounds", [](const PyGappletron& g) { return g.learner_.rounds(); });

  m.def("run", &run, py::arg("graph") = "bandit", py::arg("learner") = "gappletron", py::arg("loss") = "smooth-hinge",
        py::arg("kappa") = 0.5, py::arg("k") = 6, py::arg("dprime") = 2, py::arg("noise") = 0.0,
        py::arg("rounds") = 1000, py::arg("reps") = 1, py::arg("seed") = 1, py::arg("gamma") = py::none(),
        py::arg("tuning") = "unit", py::arg("delta") = 0.05, py::arg("oco") = "adaptive", py::arg("radius") = 1.0,
        py::arg("explore") = py::none(), py::arg("threads") = 0,
        "Run one configuration and return the checkpoint CSV as text.");
  m.def("comparator", &comparator, py::arg("trace_csv"), py::arg("loss") = "smooth-hinge", py::arg("epochs") = 20,
        py::arg("radius") = 100.0);
  m.def(
      "validate",
      [](std::size_t rounds, std::uint64_t seed) {
        ValidationOptions opt;
        opt.rounds = rounds;
        opt.seed = seed;
        std::vector<py::tuple> out;
        for (const PropertyResult& r : run_property_suite(opt))
          out.push_back(py::make_tuple(r.name, r.passed, r.informational, r.detail));
        return out;
      },
      py::arg("rounds") = 10000, py::arg("seed") = 2021);
}
