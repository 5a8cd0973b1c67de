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

#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dynmat/apps.hpp"
#include "dynmat/error.hpp"

namespace dynmat {
namespace {

using json = nlohmann::json;

struct LineReader {
  std::istream& in;
  int number = 0;

  // Next non-empty line split into tokens, comments stripped.
  bool next(std::vector<std::string>* tokens) {
    std::string line;
    while (std::getline(in, line)) {
      ++number;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ss(line);
      tokens->clear();
      for (std::string t; ss >> t;) tokens->push_back(t);
      if (!tokens->empty()) return true;
    }
    return false;
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::kParseError, "line " + std::to_string(number) + ": " + what);
  }

  template <typename T>
  T number_of(std::string_view s) const {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) error("bad number '" + std::string(s) + "'");
    return value;
  }
};

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kParseError, "cannot open " + path);
  return in;
}

}  // namespace

GraphInstance parse_graph(std::istream& in) {
  LineReader reader{in};
  std::vector<std::string> tok;
  if (!reader.next(&tok)) reader.error("missing header");
  if (tok.size() != 4 || tok[0] != "n" || tok[2] != "m") reader.error("header must be 'n <vertices> m <edges>'");
  GraphInstance g;
  g.num_vertices = reader.number_of<int>(tok[1]);
  const int m = reader.number_of<int>(tok[3]);
  if (g.num_vertices < 0 || m < 0) reader.error("negative size");
  for (int i = 0; i < m; ++i) {
    if (!reader.next(&tok)) reader.error("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    if (tok.size() < 2) reader.error("edge needs two endpoints");
    Edge e{reader.number_of<int>(tok[0]), reader.number_of<int>(tok[1])};
    if (e.u < 0 || e.u >= g.num_vertices || e.v < 0 || e.v >= g.num_vertices) {
      reader.error("endpoint out of range");
    }
    std::optional<int> c, rel, dl;
    std::optional<std::int64_t> w;
    for (size_t j = 2; j < tok.size(); ++j) {
      const auto eq = tok[j].find('=');
      if (eq == std::string::npos) reader.error("attribute must be key=value");
      const std::string key = tok[j].substr(0, eq);
      const std::string_view value = std::string_view(tok[j]).substr(eq + 1);
      if (key == "c") {
        c = reader.number_of<int>(value);
      } else if (key == "w") {
        w = reader.number_of<std::int64_t>(value);
      } else if (key == "rel") {
        rel = reader.number_of<int>(value);
        if (*rel < 1) reader.error("rel must be >= 1");
      } else if (key == "dl") {
        dl = reader.number_of<int>(value);
        if (*dl < 1) reader.error("dl must be >= 1");
      } else {
        reader.error("unknown attribute '" + key + "'");
      }
    }
    g.edges.push_back(e);
    g.color.push_back(c);
    g.weight.push_back(w);
    g.release.push_back(rel);
    g.deadline.push_back(dl);
  }
  if (reader.next(&tok)) reader.error("trailing content after " + std::to_string(m) + " edges");
  return g;
}

std::vector<Job> parse_jobs(std::istream& in) {
  LineReader reader{in};
  std::vector<std::string> tok;
  std::vector<Job> jobs;
  auto window = [&](const std::string& s, const std::string& t) {
    Interval iv{reader.number_of<int>(s), reader.number_of<int>(t)};
    if (iv.first < 1 || iv.first > iv.last) reader.error("window needs 1 <= s <= t");
    return iv;
  };
  while (reader.next(&tok)) {
    if (tok.size() != 3 && tok.size() != 5) reader.error("job line is 'id s1 t1 [s2 t2]'");
    Job job;
    job.id = tok[0];
    job.first = window(tok[1], tok[2]);
    job.second = tok.size() == 5 ? window(tok[3], tok[4]) : job.first;
    jobs.push_back(std::move(job));
  }
  return jobs;
}

MatrixInstance parse_matrix(std::istream& in) {
  LineReader reader{in};
  std::vector<std::string> tok;
  if (!reader.next(&tok) || tok.size() != 2 || tok[0] != "field") reader.error("header must be 'field <p>'");
  MatrixInstance mat;
  mat.prime = reader.number_of<std::uint64_t>(tok[1]);
  if (mat.prime == 1) reader.error("field size 1");
  while (reader.next(&tok)) {
    std::vector<std::int64_t> row;
    for (const auto& t : tok) row.push_back(reader.number_of<std::int64_t>(t));
    if (!mat.rows.empty() && row.size() != mat.rows.front().size()) reader.error("ragged row");
    mat.rows.push_back(std::move(row));
  }
  return mat;
}

GraphInstance load_graph(const std::string& path) {
  auto in = open(path);
  return parse_graph(in);
}

std::vector<Job> load_jobs(const std::string& path) {
  auto in = open(path);
  return parse_jobs(in);
}

MatrixInstance load_matrix(const std::string& path) {
  auto in = open(path);
  return parse_matrix(in);
}

Matroid parse_matroid_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, e.what());
  }
  auto edges_of = [](const json& arr) {
    std::vector<Edge> edges;
    for (const auto& e : arr) edges.push_back(Edge{e.at(0).get<int>(), e.at(1).get<int>()});
    return edges;
  };
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "partition") {
      return Matroid::partition(j.at("color").get<std::vector<int>>(),
                                j.at("capacity").get<std::vector<int>>());
    }
    if (kind == "graphic") return Matroid::graphic(j.at("vertices").get<int>(), edges_of(j.at("edges")));
    if (kind == "bicircular") {
      return Matroid::bicircular(j.at("vertices").get<int>(), edges_of(j.at("edges")));
    }
    if (kind == "convex_transversal") {
      std::vector<Interval> ivs;
      for (const auto& iv : j.at("intervals")) ivs.push_back(Interval{iv.at(0).get<int>(), iv.at(1).get<int>()});
      return Matroid::convex_transversal(std::move(ivs), j.value("slots", 0));
    }
    if (kind == "scheduling") return Matroid::scheduling(j.at("deadlines").get<std::vector<int>>());
    if (kind == "linear") {
      return Matroid::linear(j.at("rows").get<std::vector<std::vector<std::int64_t>>>(),
                             j.value("prime", kDefaultPrime));
    }
    if (kind == "gammoid") {
      return Matroid::gammoid(j.at("vertices").get<int>(), edges_of(j.at("arcs")),
                              j.at("sources").get<std::vector<int>>());
    }
    if (kind == "explicit") {
      return Matroid::explicit_family(j.at("n").get<int>(), j.at("masks").get<std::vector<std::uint32_t>>());
    }
    if (kind == "uniform") return Matroid::uniform(j.at("n").get<int>(), j.at("rank").get<int>());
    fail(ErrorCode::kParseError, "unknown matroid kind '" + kind + "'");
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, e.what());
  }
}

Matroid load_matroid(const std::string& path) {
  auto in = open(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matroid_json(ss.str());
}

std::string report_json(const RunReport& report, int indent) {
  json j;
  j["problem"] = report.problem;
  j["instance"] = {{"n", report.n}, {"r", report.r}, {"k", report.k}};
  j["size"] = report.size;
  if (report.feasible) j["feasible"] = *report.feasible;
  j["verdict"] = report.verdict;
  j["solution"] = report.solution;
  j["partition"] = report.partition;
  json sched = json::array();
  for (const auto& s : report.schedule) sched.push_back({{"element", s.element}, {"day", s.day}});
  j["schedule"] = sched;
  if (!report.labels.empty()) j["labels"] = report.labels;
  j["oracle_stats"] = {{"inserts", report.stats.inserts},
                       {"deletes", report.stats.deletes},
                       {"rank_queries", report.stats.rank_queries},
                       {"total_ops", report.stats.total_ops()},
                       {"max_set_size", report.stats.max_set_size}};
  json phases = json::array();
  for (const auto& p : report.phases) {
    phases.push_back({{"d_t", p.d_t}, {"augmentations", p.augmentations}, {"blocking", p.blocking}});
  }
  j["phases"] = phases;
  if (report.epsilon > 0) {
    j["epsilon"] = report.epsilon;
    j["stopped_early"] = report.stopped_early;
  }
  j["verified"] = report.verified;
  j["wall_seconds"] = report.wall_seconds;
  return j.dump(indent);
}

void print_report(std::ostream& out, const RunReport& report, bool stats_only) {
  auto name = [&](Element e) {
    return report.labels.empty() ? std::to_string(e) : report.labels[e];
  };
  out << report.problem << ": n=" << report.n << " r=" << report.r;
  if (report.k > 0) out << " k=" << report.k;
  out << " size=" << report.size << "\n";
  if (!report.verdict.empty()) out << "verdict: " << report.verdict << "\n";
  if (!stats_only) {
    if (!report.partition.empty()) {
      for (size_t i = 0; i < report.partition.size(); ++i) {
        out << "class " << i << ":";
        for (Element e : report.partition[i]) out << " " << name(e);
        out << "\n";
      }
    } else if (!report.solution.empty()) {
      out << "solution:";
      for (Element e : report.solution) out << " " << name(e);
      out << "\n";
    }
    for (const auto& s : report.schedule) out << "day " << s.day << ": " << name(s.element) << "\n";
  }
  out << "oracle ops: " << report.stats.total_ops() << " (inserts " << report.stats.inserts
      << ", deletes " << report.stats.deletes << ", queries " << report.stats.rank_queries << ")\n";
  out << "phases:";
  for (const auto& p : report.phases) out << " " << p.d_t << "/" << p.augmentations;
  out << "\n";
  if (report.epsilon > 0 && report.stopped_early) {
    out << "stopped early at epsilon " << report.epsilon << "\n";
  }
  out << "verified: " << (report.verified ? "yes" : "no") << "  wall: " << std::fixed
      << std::setprecision(3) << report.wall_seconds << "s\n";
}

}  // namespace dynmat
