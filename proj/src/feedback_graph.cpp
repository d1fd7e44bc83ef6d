#include "graphtron/feedback_graph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>

namespace graphtron {

namespace {

constexpr std::pair<GraphKind, std::string_view> kGraphNames[] = {
    {GraphKind::full_information, "full"},
    {GraphKind::bandit, "bandit"},
    {GraphKind::apple_tasting, "apple"},
    {GraphKind::label_efficient, "label-efficient"},
    {GraphKind::spam_filter_multiclass, "spam-filter"},
};

std::vector<Action> all_actions(std::size_t n) {
  std::vector<Action> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

std::string_view to_string(GraphKind kind) {
  for (const auto& [k, name] : kGraphNames)
    if (k == kind) return name;
  return "?";
}

GraphKind parse_graph_kind(std::string_view name) {
  for (const auto& [k, n] : kGraphNames)
    if (n == name) return k;
  std::string valid;
  for (const auto& [k, n] : kGraphNames) valid += (valid.empty() ? "" : ", ") + std::string(n);
  throw GraphError("unknown graph kind '" + std::string(name) + "' (valid: " + valid + ")");
}

bool FeedbackGraph::is_label(Action y) const {
  return std::binary_search(labels_.begin(), labels_.end(), y);
}

RawGraph FeedbackGraph::raw() const { return RawGraph{n_, out_, labels_}; }

FeedbackGraph validate(RawGraph raw) {
  const std::size_t n = raw.n_actions;
  if (n == 0) throw GraphError("feedback graph needs at least one node");
  if (raw.out.size() > n) throw GraphError("more out-neighbourhood lists than nodes");
  raw.out.resize(n);

  FeedbackGraph g;
  g.n_ = n;
  g.adjacency_.assign(n * n, 0);
  for (std::size_t y = 0; y < n; ++y) {
    for (Action z : raw.out[y]) {
      if (z >= n)
        throw GraphError("edge " + std::to_string(y + 1) + " -> " + std::to_string(z + 1) + " references a missing node");
      g.adjacency_[y * n + z] = 1;
    }
  }

  // Missing a single out-edge carries no information under the zero-one loss.
  if (n >= 2) {
    for (std::size_t y = 0; y < n; ++y) {
      auto row = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(y * n);
      if (static_cast<std::size_t>(std::count(row, row + static_cast<std::ptrdiff_t>(n), 1)) == n - 1)
        std::fill(row, row + static_cast<std::ptrdiff_t>(n), 1);
    }
  }

  g.out_.assign(n, {});
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t z = 0; z < n; ++z)
      if (g.adjacency_[y * n + z]) g.out_[y].push_back(z);

  for (std::size_t z = 0; z < n; ++z) {
    bool has_in = false;
    for (std::size_t y = 0; y < n && !has_in; ++y) has_in = g.adjacency_[y * n + z] != 0;
    if (!has_in) throw GraphError("node " + std::to_string(z + 1) + " has no in-edge; its outcome is never observable");
  }

  if (raw.label_actions.empty()) {
    g.labels_ = all_actions(n);
  } else {
    g.labels_ = std::move(raw.label_actions);
    std::sort(g.labels_.begin(), g.labels_.end());
    g.labels_.erase(std::unique(g.labels_.begin(), g.labels_.end()), g.labels_.end());
    if (g.labels_.back() >= n) throw GraphError("label action out of range");
  }
  return g;
}

std::vector<Action> revealing_set(const FeedbackGraph& graph) {
  std::vector<Action> q;
  for (Action y = 0; y < graph.n_actions(); ++y)
    if (graph.out(y).size() == graph.n_actions()) q.push_back(y);
  return q;
}

std::vector<Action> greedy_dominating_set(const FeedbackGraph& graph) {
  const std::size_t n = graph.n_actions();
  std::vector<char> covered(n, 0);
  std::size_t remaining = n;
  std::vector<Action> picked;
  while (remaining > 0) {
    Action best = 0;
    std::size_t best_gain = 0;
    for (Action y = 0; y < n; ++y) {
      std::size_t gain = 0;
      for (Action z : graph.out(y)) gain += covered[z] ? 0 : 1;
      if (gain > best_gain) {
        best = y;
        best_gain = gain;
      }
    }
    // Unreachable for validated graphs: every node has an in-edge.
    if (best_gain == 0) throw GraphError("graph has no dominating set");
    picked.push_back(best);
    for (Action z : graph.out(best)) {
      if (!covered[z]) {
        covered[z] = 1;
        --remaining;
      }
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::size_t exact_domination_number(const FeedbackGraph& graph) {
  const std::size_t n = graph.n_actions();
  if (n > kExactDominationMaxNodes)
    throw GraphError("exact domination number is limited to " + std::to_string(kExactDominationMaxNodes) + " nodes");
  std::vector<std::uint32_t> out_mask(n, 0);
  for (Action y = 0; y < n; ++y)
    for (Action z : graph.out(y)) out_mask[y] |= 1u << z;
  const std::uint32_t full = (1u << n) - 1;

  std::size_t best = n;
  for (std::uint32_t subset = 1; subset <= full; ++subset) {
    const auto size = static_cast<std::size_t>(std::popcount(subset));
    if (size >= best) continue;
    std::uint32_t cover = 0;
    for (std::size_t y = 0; y < n; ++y)
      if (subset & (1u << y)) cover |= out_mask[y];
    if (cover == full) best = size;
  }
  return best;
}

bool GraphSummary::is_revealing(Action y) const {
  return std::binary_search(revealing.begin(), revealing.end(), y);
}

GraphSummary summarize(const FeedbackGraph& graph) {
  return GraphSummary{revealing_set(graph), greedy_dominating_set(graph)};
}

FeedbackGraph make_standard(GraphKind kind, std::size_t n_classes) {
  if (n_classes < 2) throw GraphError("standard graphs need at least two classes");
  RawGraph raw;
  switch (kind) {
    case GraphKind::full_information:
      raw.n_actions = n_classes;
      raw.out.assign(n_classes, all_actions(n_classes));
      break;
    case GraphKind::bandit:
      raw.n_actions = n_classes;
      for (Action y = 0; y < n_classes; ++y) raw.out.push_back({y});
      break;
    case GraphKind::apple_tasting:
      if (n_classes != 2) throw GraphError("apple tasting is defined on two actions");
      // Action 0 is "not spam" (observes both outcomes), action 1 is "spam" (blind).
      raw.n_actions = 2;
      raw.out = {{0, 1}, {}};
      break;
    case GraphKind::label_efficient:
      raw.n_actions = n_classes + 1;
      raw.out.assign(n_classes, {});
      raw.out.push_back(all_actions(n_classes));
      raw.label_actions = all_actions(n_classes);
      break;
    case GraphKind::spam_filter_multiclass:
      raw.n_actions = n_classes;
      raw.out.assign(n_classes, {});
      raw.out[0] = all_actions(n_classes);
      break;
  }
  return validate(std::move(raw));
}

RawGraph read_graph(std::istream& in) {
  RawGraph raw;
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw GraphError("graph file is empty");
  {
    std::istringstream ss(line);
    long long n = 0;
    if (!(ss >> n) || n <= 0) throw GraphError("first line must be a positive node count");
    raw.n_actions = static_cast<std::size_t>(n);
  }
  auto to_action = [&](long long v) -> Action {
    if (v < 1 || static_cast<std::size_t>(v) > raw.n_actions)
      throw GraphError("node id " + std::to_string(v) + " out of range 1.." + std::to_string(raw.n_actions));
    return static_cast<Action>(v - 1);
  };
  if (!next_line()) throw GraphError("second line must list the label actions");
  {
    std::istringstream ss(line);
    long long v = 0;
    while (ss >> v) raw.label_actions.push_back(to_action(v));
    if (raw.label_actions.empty()) throw GraphError("label action list is empty");
  }
  raw.out.assign(raw.n_actions, {});
  while (next_line()) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw GraphError("expected 'y: y1 y2 ...', got '" + line + "'");
    std::istringstream head(line.substr(0, colon));
    long long y = 0;
    if (!(head >> y)) throw GraphError("bad node id in '" + line + "'");
    const Action from = to_action(y);
    std::istringstream ss(line.substr(colon + 1));
    long long v = 0;
    while (ss >> v) raw.out[from].push_back(to_action(v));
    if (!ss.eof()) throw GraphError("bad neighbour list in '" + line + "'");
  }
  return raw;
}

void write_graph(std::ostream& out, const FeedbackGraph& graph) {
  out << graph.n_actions() << '\n';
  for (std::size_t i = 0; i < graph.label_actions().size(); ++i)
    out << (i ? " " : "") << graph.label_actions()[i] + 1;
  out << '\n';
  for (Action y = 0; y < graph.n_actions(); ++y) {
    out << y + 1 << ':';
    for (Action z : graph.out(y)) out << ' ' << z + 1;
    out << '\n';
  }
}

}  // namespace graphtron
