#pragma once

// File formats.
//
// Graph, edge-list form:     "n <N>" then one "u v" pair per line (0-based).
// Graph, dense form:         N lines of N comma-separated 0/1 entries.
// Samples:                   comma-separated reals, one observation per row,
//                            optional header row of column labels.
// Report, cover, model:      JSON documents (see the to_json functions).
// Blank lines and lines starting with '#' are ignored in text formats.

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "medil/analysis.hpp"
#include "medil/ecc.hpp"
#include "medil/errors.hpp"
#include "medil/graph.hpp"
#include "medil/independence.hpp"
#include "medil/mcm.hpp"

namespace medil::io {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

[[noreturn]] inline void fail_at(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line) {
  T value{};
  if (tok.size() > 1 && tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
    fail_at(line, "cannot parse '" + std::string(tok) + "' as a number");
  return value;
}

inline std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

// Reads either graph form; the edge-list form is recognised by its "n" header.
inline UndirectedDependencyGraph read_graph(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string raw;
  for (std::size_t no = 1; std::getline(in, raw); ++no)
    if (!detail::skippable(raw)) lines.emplace_back(no, raw);
  if (lines.empty()) throw InputError("graph file is empty");

  auto head = detail::words(lines.front().second);
  if (!head.empty() && head.front() == "n") {
    if (head.size() != 2) detail::fail_at(lines.front().first, "expected 'n <vertex count>'");
    const auto n = detail::parse_number<std::size_t>(head[1], lines.front().first);
    UndirectedDependencyGraph g(n);
    for (std::size_t k = 1; k < lines.size(); ++k) {
      const auto [no, text] = lines[k];
      auto w = detail::words(text);
      if (w.size() != 2) detail::fail_at(no, "expected 'u v'");
      const auto u = detail::parse_number<std::size_t>(w[0], no);
      const auto v = detail::parse_number<std::size_t>(w[1], no);
      try {
        g.add_edge(u, v);
      } catch (const InputError& e) {
        detail::fail_at(no, e.what());
      }
    }
    return g;
  }

  const std::size_t n = lines.size();
  UndirectedDependencyGraph g(n);
  std::vector<std::vector<int>> adj(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto [no, text] = lines[r];
    auto cells = detail::split(text, ',');
    if (cells.size() != n)
      detail::fail_at(no, "expected " + std::to_string(n) + " entries, got " +
                              std::to_string(cells.size()));
    for (auto c : cells) {
      const int v = detail::parse_number<int>(c, no);
      if (v != 0 && v != 1) detail::fail_at(no, "adjacency entries must be 0 or 1");
      adj[r].push_back(v);
    }
    if (adj[r][r] != 0) detail::fail_at(no, "self-loop on the diagonal");
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      if (adj[u][v] != adj[v][u]) detail::fail_at(lines[u].first, "adjacency is not symmetric");
      if (adj[u][v]) g.add_edge(u, v);
    }
  return g;
}

inline void write_graph(std::ostream& out, const UndirectedDependencyGraph& g) {
  out << "n " << g.num_vertices() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline SampleMatrix read_samples(std::istream& in, bool header) {
  std::string raw;
  std::size_t no = 0;
  std::optional<std::vector<std::string>> labels;
  std::size_t cols = 0;
  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, raw)) {
    ++no;
    if (detail::skippable(raw)) continue;
    auto cells = detail::split(raw, ',');
    if (header && !labels) {
      labels.emplace();
      for (auto c : cells) labels->emplace_back(c);
      cols = cells.size();
      continue;
    }
    if (cols == 0) cols = cells.size();
    if (cells.size() != cols)
      detail::fail_at(no, "expected " + std::to_string(cols) + " columns, got " +
                              std::to_string(cells.size()));
    for (auto c : cells) {
      const double v = detail::parse_number<double>(c, no);
      if (!std::isfinite(v)) detail::fail_at(no, "non-finite value");
      values.push_back(v);
    }
    ++rows;
  }
  if (rows == 0) throw InputError("sample file has no data rows");
  if (rows < 2) throw InputError("sample file needs at least 2 observations");
  SampleMatrix s(rows, cols, std::move(values));
  if (labels) s.set_labels(std::move(*labels));
  return s;
}

inline void write_samples(std::ostream& out, const SampleMatrix& s, bool header) {
  std::ostringstream buf;
  buf.precision(17);
  if (header) {
    for (std::size_t c = 0; c < s.num_variables(); ++c) {
      if (c) buf << ',';
      buf << (s.labels() ? (*s.labels())[c] : "M" + std::to_string(c + 1));
    }
    buf << '\n';
  }
  for (std::size_t r = 0; r < s.num_observations(); ++r) {
    for (std::size_t c = 0; c < s.num_variables(); ++c) {
      if (c) buf << ',';
      buf << s(r, c);
    }
    buf << '\n';
  }
  out << buf.str();
}

inline json to_json(const IndependenceTestReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"i", p.i},
                     {"j", p.j},
                     {"dcorr", p.dcorr},
                     {"p_value", p.p_value},
                     {"independent", p.independent}});
  return {{"num_variables", r.num_variables},
          {"dcorr_threshold", r.dcorr_threshold},
          {"p_threshold", r.p_threshold},
          {"num_permutations", r.num_permutations},
          {"pairs", pairs}};
}

inline void write_report_csv(std::ostream& out, const IndependenceTestReport& r) {
  std::ostringstream buf;
  buf.precision(12);
  buf << "i,j,dcorr,p_value,independent\n";
  for (const auto& p : r.pairs)
    buf << p.i << ',' << p.j << ',' << p.dcorr << ',' << p.p_value << ','
        << (p.independent ? 1 : 0) << '\n';
  out << buf.str();
}

inline Objective parse_objective(std::string_view s) {
  if (s == "clique" || s == "clique_count") return Objective::CliqueCount;
  if (s == "assignment" || s == "assignment_count") return Objective::AssignmentCount;
  throw InputError("unknown objective '" + std::string(s) + "'");
}

// `num_vertices` keeps isolated vertices, which no clique mentions.
inline json to_json(const EdgeCliqueCover& c, std::optional<std::size_t> num_vertices = {}) {
  json cliques = json::array();
  for (const auto& q : c.cliques) cliques.push_back(q.members());
  json j = {{"objective", to_string(c.objective)},
            {"objective_value", c.objective_value},
            {"cliques", cliques}};
  if (num_vertices) j["num_vertices"] = *num_vertices;
  return j;
}

// Stated vertex count, else one past the largest clique member.
inline std::size_t cover_num_vertices(const json& j, const EdgeCliqueCover& c) {
  std::size_t n = 0;
  for (const auto& q : c.cliques) n = std::max(n, q.members().back() + 1);
  if (!j.contains("num_vertices")) return n;
  const auto stated = j.at("num_vertices").get<std::size_t>();
  if (stated < n) throw InputError("cover mentions vertices beyond num_vertices");
  return stated;
}

inline EdgeCliqueCover cover_from_json(const json& j) {
  try {
    std::vector<Clique> cliques;
    for (const auto& q : j.at("cliques")) cliques.emplace_back(q.get<std::vector<Vertex>>());
    auto cover = make_cover(std::move(cliques), parse_objective(j.at("objective").get<std::string>()));
    if (j.contains("objective_value") &&
        j.at("objective_value").get<std::size_t>() != cover.objective_value)
      throw InputError("stated objective value does not match the cliques");
    return cover;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed cover document: ") + e.what());
  }
}

inline json to_json(const MeDILCausalModel& m) {
  json edges = json::array();
  for (const auto& [a, b] : m.edges()) edges.push_back({a, b});
  json latents = json::array();
  for (std::size_t a = 0; a < m.num_latents(); ++a) latents.push_back(m.latent_name(a));
  json measurements = json::array();
  for (std::size_t b = 0; b < m.num_measurements(); ++b)
    measurements.push_back(m.measurement_name(b));
  return {{"num_measurements", m.num_measurements()},
          {"num_latents", m.num_latents()},
          {"edges", edges},
          {"latent_labels", latents},
          {"measurement_labels", measurements}};
}

inline MeDILCausalModel model_from_json(const json& j) {
  try {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("model edges must be [latent, measurement]");
      edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    auto m = MeDILCausalModel::from_edges(j.at("num_measurements").get<std::size_t>(),
                                          j.at("num_latents").get<std::size_t>(), edges);
    if (j.contains("measurement_labels"))
      m.set_measurement_labels(j.at("measurement_labels").get<std::vector<std::string>>());
    if (j.contains("latent_labels"))
      m.set_latent_labels(j.at("latent_labels").get<std::vector<std::string>>());
    return m;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed model document: ") + e.what());
  }
}

inline json parse_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

inline void write_dot(std::ostream& out, const MeDILCausalModel& m) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + "\"";
  };
  out << "digraph mcm {\n";
  out << "  { rank=same;";
  for (std::size_t a = 0; a < m.num_latents(); ++a)
    out << " l" << a << " [shape=ellipse, label=" << quote(m.latent_name(a)) << "];";
  out << " }\n  { rank=same;";
  for (std::size_t b = 0; b < m.num_measurements(); ++b)
    out << " m" << b << " [shape=box, label=" << quote(m.measurement_name(b)) << "];";
  out << " }\n";
  for (const auto& [a, b] : m.edges()) out << "  l" << a << " -> m" << b << ";\n";
  out << "}\n";
}

inline void write_histogram_csv(std::ostream& out, const Histogram& h, const std::string& key) {
  out << key << ",count\n";
  for (const auto& [k, c] : h) out << k << ',' << c << '\n';
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline void write_matrix_csv(std::ostream& out, const CountMatrix& m,
                             const std::vector<std::string>& names) {
  out << "name";
  for (const auto& n : names) out << ',' << csv_field(n);
  out << '\n';
  for (std::size_t r = 0; r < m.size(); ++r) {
    out << csv_field(names[r]);
    for (std::size_t v : m[r]) out << ',' << v;
    out << '\n';
  }
}

inline json histogram_json(const Histogram& h) {
  json j = json::object();
  for (const auto& [k, c] : h) j[std::to_string(k)] = c;
  return j;
}

// Histograms and shared-count matrices in one document.
inline json stats_json(const MeDILCausalModel& m) {
  return {{"indegree_histogram", histogram_json(indegree_histogram(m))},
          {"outdegree_histogram", histogram_json(outdegree_histogram(m))},
          {"shared_latents", shared_latents_matrix(m)},
          {"shared_measurements", shared_measurements_matrix(m)}};
}

}  // namespace medil::io
