#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "graphtron/types.hpp"

namespace graphtron {

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GraphKind { full_information, bandit, apple_tasting, label_efficient, spam_filter_multiclass };

std::string_view to_string(GraphKind kind);
GraphKind parse_graph_kind(std::string_view name);

// Unvalidated adjacency lists, as read from a file or built by hand.
struct RawGraph {
  std::size_t n_actions = 0;
  std::vector<std::vector<Action>> out;
  // Empty means every action can be a true label.
  std::vector<Action> label_actions;
};

// A directed feedback graph: playing y' reveals the zero-one loss of every
// action in out(y'). Only constructible through validate(), so every instance
// satisfies: each node has an in-edge, and no node has exactly n-1 out-edges.
class FeedbackGraph {
 public:
  std::size_t n_actions() const { return n_; }
  const std::vector<Action>& out(Action y) const { return out_[y]; }
  bool observes(Action played, Action y) const { return adjacency_[played * n_ + y] != 0; }
  const std::vector<Action>& label_actions() const { return labels_; }
  bool is_label(Action y) const;

  RawGraph raw() const;

  friend FeedbackGraph validate(RawGraph raw);

 private:
  FeedbackGraph() = default;

  std::size_t n_ = 0;
  std::vector<std::vector<Action>> out_;
  std::vector<char> adjacency_;
  std::vector<Action> labels_;
};

// Adds the missing edge to every node with n-1 out-edges, then checks that
// every node is observable. Throws GraphError otherwise.
FeedbackGraph validate(RawGraph raw);

// Actions whose out-neighbourhood is every action.
std::vector<Action> revealing_set(const FeedbackGraph& graph);

// Repeatedly takes the node covering the most still-uncovered nodes; ties go
// to the lowest index.
std::vector<Action> greedy_dominating_set(const FeedbackGraph& graph);

inline constexpr std::size_t kExactDominationMaxNodes = 16;

// Exhaustive search over subsets by increasing size. Test oracle only.
std::size_t exact_domination_number(const FeedbackGraph& graph);

struct GraphSummary {
  std::vector<Action> revealing;   // Q
  std::vector<Action> dominating;  // S, greedy
  std::size_t rho() const { return dominating.size(); }
  bool is_revealing(Action y) const;
};

GraphSummary summarize(const FeedbackGraph& graph);

// For label_efficient the graph has n_classes + 1 actions and the last one
// is the query action.
FeedbackGraph make_standard(GraphKind kind, std::size_t n_classes);

// Text format, 1-based:
//   line 1: n_actions
//   line 2: space-separated label actions
//   then one line per node: "y: y1 y2 ..."
RawGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const FeedbackGraph& graph);

}  // namespace graphtron
