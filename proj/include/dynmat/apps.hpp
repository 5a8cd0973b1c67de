// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Graph and scheduling applications solved by reduction to intersection and
// union, with text instance formats and a JSON run report.

#ifndef DYNMAT_APPS_HPP_
#define DYNMAT_APPS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dynmat/intersection.hpp"
#include "dynmat/matroid.hpp"
#include "dynmat/oracle.hpp"
#include "dynmat/types.hpp"

namespace dynmat {

// "n <vertices> m <edges>" then one edge per line:
//   u v [c=<color>] [w=<weight>] [rel=<int>] [dl=<int>]
// Vertices are 0-based. '#' starts a comment.
struct GraphInstance {
  int num_vertices = 0;
  std::vector<Edge> edges;
  std::vector<std::optional<int>> color;
  std::vector<std::optional<std::int64_t>> weight;
  std::vector<std::optional<int>> release;
  std::vector<std::optional<int>> deadline;

  int num_edges() const { return static_cast<int>(edges.size()); }
};

// "id s1 t1 [s2 t2]"; without the second pair the second machine reuses
// the first window.
struct Job {
  std::string id;
  Interval first;
  Interval second;
};

// "field p" header (p = 0 for rationals), then one row per element.
struct MatrixInstance {
  std::uint64_t prime = kDefaultPrime;
  std::vector<std::vector<std::int64_t>> rows;
};

GraphInstance parse_graph(std::istream& in);
std::vector<Job> parse_jobs(std::istream& in);
MatrixInstance parse_matrix(std::istream& in);
GraphInstance load_graph(const std::string& path);
std::vector<Job> load_jobs(const std::string& path);
MatrixInstance load_matrix(const std::string& path);

// JSON matroid description, for the generic subcommands. Kinds: partition,
// graphic, bicircular, convex_transversal, scheduling, linear, gammoid,
// explicit, uniform.
Matroid parse_matroid_json(const std::string& text);
Matroid load_matroid(const std::string& path);

struct ScheduledEdge {
  Element element = 0;
  int day = 0;
};

struct RunReport {
  std::string problem;
  int n = 0;
  int r = 0;
  int k = 0;
  int size = 0;
  std::optional<bool> feasible;
  std::string verdict;
  std::vector<Element> solution;
  std::vector<std::vector<Element>> partition;
  std::vector<ScheduledEdge> schedule;
  std::vector<std::string> labels;  // element names when not plain indices
  OracleStats stats;
  std::vector<PhaseRecord> phases;
  bool stopped_early = false;
  double epsilon = 0.0;
  bool verified = false;
  double wall_seconds = 0.0;
};

std::string report_json(const RunReport& report, int indent = 2);
void print_report(std::ostream& out, const RunReport& report, bool stats_only);

// Solvers. Every solver re-verifies its answer with direct rank probes and
// plain graph checks; a failed check throws std::logic_error.
RunReport solve_intersect(const Matroid& first, const Matroid& second, double epsilon = 0.0);
RunReport solve_union(const std::vector<Matroid>& matroids);
RunReport solve_kfold(const Matroid& matroid, int k);

RunReport solve_kdst(const GraphInstance& g, int k);
RunReport solve_kforest(const GraphInstance& g, int k);
RunReport solve_kpseudoforest(const GraphInstance& g, int k);
RunReport solve_mixed(const GraphInstance& g, int forests, int pseudoforests);
RunReport solve_arboricity(const GraphInstance& g);
RunReport solve_pseudoarboricity(const GraphInstance& g);
RunReport solve_tree_packing(const GraphInstance& g);
RunReport solve_shannon(const GraphInstance& g);
RunReport solve_colorful_st(const GraphInstance& g, double epsilon = 0.0);
// Edge i of the first graph corresponds to edge i of the second.
RunReport solve_graphic_intersection(const GraphInstance& g1, const GraphInstance& g2,
                                     double epsilon = 0.0);
RunReport solve_bipartite_matching(const GraphInstance& g, double epsilon = 0.0);
RunReport solve_scheduling_intersection(const std::vector<Job>& jobs, double epsilon = 0.0);
RunReport solve_linear_intersection(const MatrixInstance& a, const MatrixInstance& b,
                                    double epsilon = 0.0);
RunReport solve_forest_deadlines(const GraphInstance& g, double epsilon = 0.0);

// Plain checks shared by the solvers and the tests.
bool is_forest(int num_vertices, const std::vector<Edge>& edges, const std::vector<Element>& chosen);
bool is_pseudoforest(int num_vertices, const std::vector<Edge>& edges,
                     const std::vector<Element>& chosen);
bool is_spanning_tree(int num_vertices, const std::vector<Edge>& edges,
                      const std::vector<Element>& chosen);
// Unit tasks with windows; each day used once and inside the task window.
bool is_valid_schedule(const std::vector<Interval>& windows, const std::vector<ScheduledEdge>& schedule);
// Earliest-deadline assignment of the chosen tasks to days; empty if none exists.
std::optional<std::vector<ScheduledEdge>> earliest_deadline_schedule(
    const std::vector<Interval>& windows, const std::vector<Element>& chosen);

}  // namespace dynmat

#endif  // DYNMAT_APPS_HPP_
