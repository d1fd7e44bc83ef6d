#include "graphtron/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <exception>
#include <thread>

#include "graphtron/baselines.hpp"

namespace graphtron {

LearnerKind parse_learner_kind(std::string_view name) {
  if (name == "gappletron") return LearnerKind::gappletron;
  if (name == "perceptron") return LearnerKind::perceptron;
  if (name == "pa") return LearnerKind::passive_aggressive;
  if (name == "banditron") return LearnerKind::banditron;
  throw std::invalid_argument("unknown learner '" + std::string(name) +
                              "' (valid: gappletron, perceptron, pa, banditron)");
}

std::string_view to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::gappletron: return "gappletron";
    case LearnerKind::perceptron: return "perceptron";
    case LearnerKind::passive_aggressive: return "pa";
    case LearnerKind::banditron: return "banditron";
  }
  return "?";
}

FeedbackGraph build_graph(const RunSpec& spec) {
  FeedbackGraph graph = spec.graph_file ? validate(*spec.graph_file) : make_standard(spec.graph, spec.data.n_classes);
  if (graph.label_actions().size() != spec.data.n_classes)
    throw std::invalid_argument("graph has " + std::to_string(graph.label_actions().size()) +
                                " label actions but the data has " + std::to_string(spec.data.n_classes) + " classes");
  return graph;
}

std::string graph_name(const RunSpec& spec) {
  return spec.graph_file ? std::string("file") : std::string(to_string(spec.graph));
}

std::optional<double> resolve_exploration(const RunSpec& spec, const FeedbackGraph& graph) {
  switch (spec.learner) {
    case LearnerKind::gappletron: {
      if (spec.gamma) return *spec.gamma;
      const double n = static_cast<double>(graph.n_actions());
      const double max_norm = std::sqrt(spec.data.max_sq_norm());
      TuningInputs in;
      in.radius = spec.radius;
      in.smoothness = spec.loss.smoothness(spec.data.max_sq_norm(), graph.n_actions());
      in.rho = static_cast<double>(greedy_dominating_set(graph).size());
      in.n_actions = n;
      in.delta = spec.delta;
      in.loss_max = spec.loss_max.value_or(1.0 + spec.radius * 2.0 * max_norm);
      return theory_gamma(spec.tuning, in);
    }
    case LearnerKind::banditron:
      if (spec.explore) return *spec.explore;
      return banditron_default_explore(spec.data.max_sq_norm(), spec.rounds, spec.banditron_max_rate);
    default:
      return std::nullopt;
  }
}

std::unique_ptr<OnlineLearner> make_learner(const RunSpec& spec, const FeedbackGraph& graph) {
  const std::size_t dim = spec.data.dim();
  switch (spec.learner) {
    case LearnerKind::gappletron: {
      GappletronConfig cfg;
      cfg.loss = spec.loss;
      cfg.gamma = *resolve_exploration(spec, graph);
      cfg.oco = spec.oco;
      cfg.radius = spec.radius;
      return std::make_unique<Gappletron>(graph, cfg, dim);
    }
    case LearnerKind::perceptron: return std::make_unique<Perceptron>(graph, dim);
    case LearnerKind::passive_aggressive: return std::make_unique<PassiveAggressive>(graph, dim);
    case LearnerKind::banditron:
      return std::make_unique<ImportanceWeightedBanditron>(graph, dim, *resolve_exploration(spec, graph));
  }
  throw std::invalid_argument("unknown learner");
}

RunOutput execute_run(const RunSpec& spec, std::size_t rep, std::size_t run_id, bool keep_sequence) {
  const FeedbackGraph graph = build_graph(spec);
  RunOutput out;
  out.run_id = run_id;
  out.seed = mix_seed(spec.seed, rep);
  out.exploration = resolve_exploration(spec, graph);

  auto learner = make_learner(spec, graph);
  SyntheticEnvironment env(spec.data, mix_seed(out.seed, 0));
  Rng learner_rng(mix_seed(out.seed, 1));

  RunOptions opts;
  opts.rounds = spec.rounds;
  opts.checkpoints = default_checkpoints(spec.rounds);
  opts.metric_loss = spec.loss;
  opts.keep_sequence = keep_sequence;
  out.result = run_protocol(env, graph, *learner, learner_rng, opts);
  return out;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("GRAPHTRON_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<RunOutput> run_matrix(const std::vector<RunSpec>& specs, bool keep_sequence, std::size_t workers) {
  struct Job {
    const RunSpec* spec;
    std::size_t rep;
  };
  std::vector<Job> jobs;
  for (const RunSpec& spec : specs) {
    // Fail fast on bad combinations before spawning workers.
    make_learner(spec, build_graph(spec));
    for (std::size_t rep = 0; rep < spec.reps; ++rep) jobs.push_back({&spec, rep});
  }

  std::vector<RunOutput> outputs(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        outputs[i] = execute_run(*jobs[i].spec, jobs[i].rep, i, keep_sequence);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::min(std::max<std::size_t>(workers, 1), std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return outputs;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void write_csv_header(std::ostream& out) {
  out << "run_id,seed,graph_kind,learner,loss,K,d,noise,gamma,tuning,t,cum_mistakes,cum_queries,error_rate,"
         "cum_surrogate_at_W,cum_explore_gamma\n";
}

void write_csv_rows(std::ostream& out, const RunSpec& spec, const RunOutput& run) {
  const FeedbackGraph graph = build_graph(spec);
  const bool queries = graph.label_actions().size() != graph.n_actions();
  for (const Checkpoint& c : run.result.checkpoints) {
    out << run.run_id << ',' << run.seed << ',' << graph_name(spec) << ',' << to_string(spec.learner) << ','
        << to_string(spec.loss.kind) << ',' << spec.data.n_classes << ',' << spec.data.dim() << ','
        << fmt(spec.data.noise) << ',' << (run.exploration ? fmt(*run.exploration) : "") << ','
        << to_string(spec.tuning) << ',' << c.t << ',' << c.cum_mistakes << ','
        << (queries ? std::to_string(c.cum_queries) : "") << ',' << fmt(c.error_rate()) << ','
        << fmt(c.cum_surrogate) << ',' << fmt(c.cum_gamma) << '\n';
  }
}

void write_trace_header(std::ostream& out) { out << "run_id,n_actions,dim,t,label,mistake,features\n"; }

void write_trace_rows(std::ostream& out, const RunSpec& spec, const RunOutput& run) {
  const std::size_t n_actions = build_graph(spec).n_actions();
  std::size_t t = 0;
  for (const RealizedExample& ex : run.result.sequence) {
    out << run.run_id << ',' << n_actions << ',' << spec.data.dim() << ',' << ++t << ',' << ex.label + 1 << ','
        << (ex.mistake ? 1 : 0) << ',';
    for (std::size_t i = 0; i < ex.features.size(); ++i)
      out << (i ? ";" : "") << ex.features[i].first << ':' << fmt(ex.features[i].second);
    out << '\n';
  }
}

std::vector<Trace> read_traces(std::istream& in) {
  std::vector<Trace> traces;
  std::string line;
  if (!std::getline(in, line) || line.rfind("run_id,n_actions,dim", 0) != 0)
    throw std::invalid_argument("not a trace file: expected header 'run_id,n_actions,dim,...'");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> f;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() == 6) f.emplace_back();
    if (f.size() != 7) throw std::invalid_argument("trace line " + std::to_string(lineno) + ": expected 7 fields");
    const auto run_id = std::stoul(f[0]);
    if (traces.empty() || traces.back().run_id != run_id) {
      traces.push_back(Trace{run_id, std::stoul(f[1]), std::stoul(f[2]), {}});
    }
    RealizedExample ex;
    const auto label = std::stoul(f[4]);
    if (label < 1 || label > traces.back().n_actions)
      throw std::invalid_argument("trace line " + std::to_string(lineno) + ": label out of range");
    ex.label = label - 1;
    ex.mistake = f[5] == "1";
    std::istringstream feats(f[6]);
    std::string pair;
    while (std::getline(feats, pair, ';')) {
      const auto colon = pair.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("trace line " + std::to_string(lineno) + ": bad feature");
      const auto index = std::stoul(pair.substr(0, colon));
      if (index >= traces.back().dim)
        throw std::invalid_argument("trace line " + std::to_string(lineno) + ": feature index out of range");
      ex.features.emplace_back(static_cast<std::uint32_t>(index), std::stod(pair.substr(colon + 1)));
    }
    traces.back().sequence.push_back(std::move(ex));
  }
  return traces;
}

}  // namespace graphtron
