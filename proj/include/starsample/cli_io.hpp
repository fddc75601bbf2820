#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "starsample/graph.hpp"
#include "starsample/montecarlo.hpp"

namespace starsample {

// --- edge lists --------------------------------------------------------------

struct LoadedGraph {
  Graph graph;
  // labels[v] is the id vertex v had in the file (first-appearance order).
  std::vector<std::string> labels;
};

// Whitespace-separated id pairs, one per line. Blank lines and lines starting
// with '#' or '%' are skipped; an optional numeric third column (weight) is
// ignored. Ids are any tokens; all-digit ids are compared numerically. The
// result is symmetrized, loop-free and deduplicated.
// Throws ParseError (with the line number) on malformed lines and when the
// input holds no edges.
LoadedGraph parse_edge_list(std::istream& in);
// As parse_edge_list; std::runtime_error when the file cannot be opened.
LoadedGraph load_edge_list(const std::string& path);

// Vertex carrying file id `id`, using the loader's id comparison.
std::optional<Vertex> find_vertex(const LoadedGraph& lg, const std::string& id);

// One "u v" line per edge with u < v, preceded by a "# n m" comment.
void write_edge_list(std::ostream& out, const Graph& g);

// "old_id new_id" per vertex.
void write_remap(std::ostream& out, const LoadedGraph& lg);

// --- graph statistics --------------------------------------------------------

struct GraphStatsRow {
  std::string graph;
  std::size_t n = 0;
  std::size_t m = 0;
  double s = 0.0;
  std::optional<double> assortativity;
  std::size_t d_max = 0;
  double d_avg = 0.0;
};

GraphStatsRow graph_stats(const std::string& name, const Graph& g);

// --- run configuration -------------------------------------------------------

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& text);

struct RunConfig {
  std::string command;                 // simulate | sweep | table
  std::optional<std::string> graph;    // edge-list path
  std::optional<std::size_t> er_n;
  std::optional<double> er_s;          // simulate with an ER source
  std::vector<double> s_values;        // sweep
  std::vector<std::string> variants;   // lower-case names
  std::size_t n0_star = 2;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  bool fresh_graph = true;
  bool fresh_target = true;
  OutputFormat format = OutputFormat::csv;
};

nlohmann::json to_json(const RunConfig& c);
// Accepts a bare config object or an output document with a "config" member.
// Throws InputError on missing or mistyped fields.
RunConfig config_from_json(const nlohmann::json& j);
// 16 hex digits of FNV-1a 64 over the compact serialization of to_json(c).
std::string config_hash(const RunConfig& c);

// --- result rows -------------------------------------------------------------

struct ResultRow {
  std::string graph;
  std::size_t n = 0;
  double s = 0.0;
  std::string variant;
  std::string cost_model;  // unit | linear
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double estimate_lo = 0.0;
  double estimate_hi = 0.0;
  double rel_err_pct = 0.0;
  bool estimate_outside_ci = false;
  std::string config_hash;
};

// Unit row followed by linear row.
std::vector<ResultRow> result_rows(const std::string& graph, const TrialSummary& t,
                                   const std::string& hash);

// Column order of the CSV output; JSON rows use the same keys.
const std::vector<std::string>& result_columns();

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
// {"config": ..., "config_hash": ..., "rows": [...]}.
void write_json(std::ostream& out, const std::vector<ResultRow>& rows, const RunConfig& config);

void write_stats_csv(std::ostream& out, const std::vector<GraphStatsRow>& rows);
void write_stats_json(std::ostream& out, const std::vector<GraphStatsRow>& rows);

// RFC 4180: quoted when the field holds a comma, quote, CR or LF.
std::string csv_field(const std::string& text);
// Shortest round-trip-safe decimal form used by every text output.
std::string format_double(double x);

}  // namespace starsample
