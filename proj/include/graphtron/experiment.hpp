#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphtron/feedback_graph.hpp"
#include "graphtron/gappletron.hpp"
#include "graphtron/learner.hpp"
#include "graphtron/losses.hpp"
#include "graphtron/oco.hpp"
#include "graphtron/protocol.hpp"
#include "graphtron/synthetic.hpp"

namespace graphtron {

enum class LearnerKind { gappletron, perceptron, passive_aggressive, banditron };

LearnerKind parse_learner_kind(std::string_view name);
std::string_view to_string(LearnerKind kind);

// One entry of the run matrix; `reps` independent repetitions share it.
struct RunSpec {
  GraphKind graph = GraphKind::bandit;
  // Replaces `graph` when set; the data then has one class per label action.
  std::optional<RawGraph> graph_file;
  LearnerKind learner = LearnerKind::gappletron;
  SurrogateLoss loss;
  SynthConfig data;
  std::size_t rounds = 1000;
  std::size_t reps = 1;
  std::uint64_t seed = 1;

  std::optional<double> gamma;  // overrides the tuning preset
  Tuning tuning = Tuning::unit;
  double delta = 0.05;
  std::optional<double> loss_max;
  OcoMode oco = OcoMode::adaptive_unprojected;
  double radius = 1.0;

  std::optional<double> explore;  // banditron
  bool banditron_max_rate = false;
};

FeedbackGraph build_graph(const RunSpec& spec);
std::string graph_name(const RunSpec& spec);

// Exploration parameter the learner will use: gamma for gappletron, the
// exploration rate for the banditron, nothing for the full-information
// baselines.
std::optional<double> resolve_exploration(const RunSpec& spec, const FeedbackGraph& graph);

// Throws IncompatibleGraph or std::invalid_argument for invalid combinations.
std::unique_ptr<OnlineLearner> make_learner(const RunSpec& spec, const FeedbackGraph& graph);

struct RunOutput {
  std::size_t run_id = 0;
  std::uint64_t seed = 0;  // derived per-run seed
  std::optional<double> exploration;
  RunResult result;
};

// Run `rep` of `spec`. Data and learner randomness come from separate streams
// derived from (spec.seed, rep).
RunOutput execute_run(const RunSpec& spec, std::size_t rep, std::size_t run_id, bool keep_sequence = false);

// Worker count from GRAPHTRON_THREADS, else the hardware concurrency.
std::size_t worker_count();

// Expands every spec into its reps and runs them on a worker pool. Output is
// ordered by run_id regardless of scheduling.
std::vector<RunOutput> run_matrix(const std::vector<RunSpec>& specs, bool keep_sequence = false,
                                  std::size_t workers = worker_count());

// CSV with one row per (run, checkpoint).
void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, const RunSpec& spec, const RunOutput& run);

// Trace CSV: the realized sequence of every run, replayed by the comparator.
void write_trace_header(std::ostream& out);
void write_trace_rows(std::ostream& out, const RunSpec& spec, const RunOutput& run);

struct Trace {
  std::size_t run_id = 0;
  std::size_t n_actions = 0;
  std::size_t dim = 0;
  std::vector<RealizedExample> sequence;
};

std::vector<Trace> read_traces(std::istream& in);

}  // namespace graphtron
