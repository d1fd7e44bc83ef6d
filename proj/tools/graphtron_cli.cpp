// graphtron: run online multiclass experiments under feedback graphs.
//
//   graphtron run --graph bandit --learner gappletron --loss smooth-hinge --k 6 --dprime 2 ...
//   graphtron sweep runs.txt --out results.csv
//   graphtron validate
//   graphtron comparator trace.csv --loss smooth-hinge

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "graphtron/comparator.hpp"
#include "graphtron/experiment.hpp"
#include "graphtron/validate.hpp"

namespace {

using namespace graphtron;

struct RunArgs {
  std::string graph = "bandit";
  std::string graph_file;
  std::string learner = "gappletron";
  std::string loss = "smooth-hinge";
  double kappa = 0.5;
  std::size_t k = 6;
  std::size_t dprime = 2;
  double noise = 0.0;
  std::size_t rounds = 1000;
  std::size_t reps = 1;
  std::uint64_t seed = 1;
  std::optional<double> gamma;
  std::string tuning = "unit";
  double delta = 0.05;
  std::optional<double> loss_max;
  std::string oco = "adaptive";
  double radius = 1.0;
  std::optional<double> explore;
  bool banditron_max_rate = false;
};

void add_run_options(CLI::App& app, RunArgs& a) {
  app.add_option("--graph", a.graph, "full, bandit, apple, label-efficient, spam-filter");
  app.add_option("--graph-file", a.graph_file, "feedback graph in the text format; overrides --graph");
  app.add_option("--learner", a.learner, "gappletron, perceptron, pa, banditron");
  app.add_option("--loss", a.loss, "logistic, smooth-hinge, hinge");
  app.add_option("--kappa", a.kappa, "hinge margin threshold")->check(CLI::Range(0.0, 1.0));
  app.add_option("--k", a.k, "number of classes");
  app.add_option("--dprime", a.dprime, "feature scale d'; the dimension is 40 d'");
  app.add_option("--noise", a.noise, "label noise rate")->check(CLI::Range(0.0, 1.0));
  app.add_option("--rounds", a.rounds, "rounds per run");
  app.add_option("--reps", a.reps, "repetitions");
  app.add_option("--seed", a.seed, "master seed");
  app.add_option("--gamma", a.gamma, "exploration parameter; overrides --tuning");
  app.add_option("--tuning", a.tuning, "unit, theory-expectation, theory-hp");
  app.add_option("--delta", a.delta, "failure probability for theory-hp")->check(CLI::Range(1e-12, 1.0));
  app.add_option("--loss-max", a.loss_max, "loss bound for theory-hp (default 1 + 2 B max||x||)");
  app.add_option("--oco", a.oco, "adaptive or projected");
  app.add_option("--radius", a.radius, "B: projection radius and norm bound for the theory presets");
  app.add_option("--explore", a.explore, "banditron exploration rate");
  app.add_flag("--banditron-max-rate", a.banditron_max_rate, "use max{1/2, (X^2/T)^(1/3)} as the default rate");
}

RunSpec to_spec(const RunArgs& a) {
  RunSpec s;
  s.learner = parse_learner_kind(a.learner);
  s.loss = SurrogateLoss{parse_loss_kind(a.loss), a.kappa};
  s.data = SynthConfig{a.k, a.dprime, a.noise};
  if (!a.graph_file.empty()) {
    std::ifstream in(a.graph_file);
    if (!in) throw std::invalid_argument("cannot open graph file " + a.graph_file);
    s.graph_file = read_graph(in);
    s.data.n_classes = validate(*s.graph_file).label_actions().size();
  } else {
    s.graph = parse_graph_kind(a.graph);
  }
  s.data.check();
  s.rounds = a.rounds;
  s.reps = a.reps;
  s.seed = a.seed;
  s.gamma = a.gamma;
  s.tuning = parse_tuning(a.tuning);
  s.delta = a.delta;
  s.loss_max = a.loss_max;
  s.oco = parse_oco_mode(a.oco);
  s.radius = a.radius;
  s.explore = a.explore;
  s.banditron_max_rate = a.banditron_max_rate;
  return s;
}

int execute(const std::vector<RunSpec>& specs, const std::string& out_path, const std::string& trace_path) {
  const auto outputs = run_matrix(specs, !trace_path.empty());

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot write " + out_path);
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  write_csv_header(out);
  std::ofstream trace;
  if (!trace_path.empty()) {
    trace.open(trace_path);
    if (!trace) throw std::runtime_error("cannot write " + trace_path);
    write_trace_header(trace);
  }

  std::size_t i = 0;
  for (const RunSpec& spec : specs) {
    for (std::size_t rep = 0; rep < spec.reps; ++rep, ++i) {
      write_csv_rows(out, spec, outputs[i]);
      if (trace) write_trace_rows(trace, spec, outputs[i]);
    }
  }
  return 0;
}

std::vector<RunSpec> read_sweep(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sweep file " + path);
  std::vector<RunSpec> specs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    CLI::App entry{"sweep entry"};
    RunArgs args;
    add_run_options(entry, args);
    try {
      entry.parse(line, false);
    } catch (const CLI::ParseError& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    specs.push_back(to_spec(args));
  }
  return specs;
}

int comparator_cmd(const std::string& path, const std::string& loss_name, double kappa, std::size_t epochs,
                   double radius) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open trace " + path);
  const SurrogateLoss loss{parse_loss_kind(loss_name), kappa};
  std::cout << "run_id,T,mistakes,comparator_loss,surrogate_regret,comparator_norm,regret_per_round\n";
  for (const Trace& trace : read_traces(in)) {
    const ComparatorFit fit =
        offline_comparator(trace.sequence, trace.n_actions, trace.dim, loss, ComparatorOptions{epochs, radius});
    const std::size_t rounds = trace.sequence.size();
    const std::size_t at[] = {rounds};
    const auto reports = surrogate_regret(trace.sequence, fit, loss, trace.dim, at);
    if (reports.empty()) continue;
    const RegretReport& r = reports.back();
    std::cout << trace.run_id << ',' << r.t << ',' << r.mistakes << ',' << r.comparator_loss << ','
              << r.surrogate_regret << ',' << r.comparator_norm << ','
              << r.surrogate_regret / static_cast<double>(r.t) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online multiclass classification with feedback graphs"};
  app.require_subcommand(1);

  RunArgs run_args;
  std::string out_path, trace_path;
  auto* run = app.add_subcommand("run", "run one configuration for --reps repetitions and write checkpoint CSV");
  add_run_options(*run, run_args);
  run->add_option("--out", out_path, "CSV output path (default stdout)");
  run->add_option("--trace", trace_path, "also write the realized sequences for the comparator");

  std::string sweep_path;
  auto* sweep = app.add_subcommand("sweep", "run every entry of a sweep file (one set of run flags per line)");
  sweep->add_option("config", sweep_path, "sweep file")->required();
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");
  sweep->add_option("--trace", trace_path, "also write the realized sequences for the comparator");

  ValidationOptions vopt;
  auto* validate_cmd = app.add_subcommand("validate", "run the property suite");
  validate_cmd->add_option("--rounds", vopt.rounds, "rounds per protocol run");
  validate_cmd->add_option("--seed", vopt.seed, "seed");

  std::string trace_in, cmp_loss = "smooth-hinge";
  double cmp_kappa = 0.5, cmp_radius = 100.0;
  std::size_t cmp_epochs = 20;
  auto* comparator = app.add_subcommand("comparator", "fit an offline comparator to a trace and report surrogate regret");
  comparator->add_option("trace", trace_in, "trace CSV written by run --trace")->required();
  comparator->add_option("--loss", cmp_loss, "logistic, smooth-hinge, hinge");
  comparator->add_option("--kappa", cmp_kappa, "unused; the comparator is scored on the plain hinge");
  comparator->add_option("--epochs", cmp_epochs, "passes over the sequence");
  comparator->add_option("--radius", cmp_radius, "comparator norm bound");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return execute({to_spec(run_args)}, out_path, trace_path);
    if (*sweep) return execute(read_sweep(sweep_path), out_path, trace_path);
    if (*validate_cmd) return print_property_report(std::cout, run_property_suite(vopt));
    if (*comparator) return comparator_cmd(trace_in, cmp_loss, cmp_kappa, cmp_epochs, cmp_radius);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
