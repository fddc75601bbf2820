#include "starsample/cli_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "starsample/error.hpp"

namespace starsample {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return c >= '0' && c <= '9'; });
}

bool is_number(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string canonical_id(std::string tok) {
  if (all_digits(tok)) {
    const auto first = tok.find_first_not_of('0');
    tok = first == std::string::npos ? "0" : tok.substr(first);
  }
  return tok;
}

nlohmann::json optional_json(const std::optional<double>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

template <class T>
T get_field(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("config field '") + key + "' has the wrong type");
  }
}

}  // namespace

LoadedGraph parse_edge_list(std::istream& in) {
  LoadedGraph out;
  std::unordered_map<std::string, Vertex> ids;
  std::vector<Edge> pairs;
  auto id_of = [&](const std::string& tok) {
    auto [it, inserted] = ids.try_emplace(canonical_id(tok), static_cast<Vertex>(out.labels.size()));
    if (inserted) out.labels.push_back(tok);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  bool matrix_market = false;
  bool size_line_pending = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (lineno == 1 && line.rfind("%%MatrixMarket", 0) == 0) matrix_market = size_line_pending = true;
    if (first == std::string::npos || line[first] == '#' || line[first] == '%') continue;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(std::move(t));
    // MatrixMarket: the first data line is "rows cols entries".
    if (matrix_market && size_line_pending) {
      size_line_pending = false;
      continue;
    }
    if (tok.size() < 2) throw ParseError("expected two vertex ids", lineno);
    if (tok.size() > 3 || (tok.size() == 3 && !is_number(tok[2]))) {
      throw ParseError("expected 'u v' or 'u v weight'", lineno);
    }
    const Vertex u = id_of(tok[0]);
    const Vertex v = id_of(tok[1]);
    pairs.emplace_back(u, v);
  }
  if (in.bad()) throw std::runtime_error("read error after line " + std::to_string(lineno));
  if (pairs.empty()) throw ParseError("no edges in input", lineno);
  out.graph = build_graph(pairs, out.labels.size());
  return out;
}

LoadedGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_edge_list(in);
}

std::optional<Vertex> find_vertex(const LoadedGraph& lg, const std::string& id) {
  const std::string key = canonical_id(id);
  for (std::size_t v = 0; v < lg.labels.size(); ++v) {
    if (canonical_id(lg.labels[v]) == key) return static_cast<Vertex>(v);
  }
  return std::nullopt;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# " << g.order() << ' ' << g.size() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_remap(std::ostream& out, const LoadedGraph& lg) {
  for (std::size_t v = 0; v < lg.labels.size(); ++v) out << lg.labels[v] << ' ' << v << '\n';
}

GraphStatsRow graph_stats(const std::string& name, const Graph& g) {
  const DegreeStats ds = degree_stats(g);
  return {name, g.order(), g.size(), g.density(), ds.assortativity, ds.d_max, ds.d_avg};
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw InputError("unknown format '" + text + "' (expected csv or json)");
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  j["graph"] = c.graph ? nlohmann::json(*c.graph) : nlohmann::json(nullptr);
  j["er_n"] = c.er_n ? nlohmann::json(*c.er_n) : nlohmann::json(nullptr);
  j["er_s"] = optional_json(c.er_s);
  j["s_values"] = c.s_values;
  j["variants"] = c.variants;
  j["n0"] = c.n0_star;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["fresh_graph"] = c.fresh_graph;
  j["fresh_target"] = c.fresh_target;
  j["format"] = c.format == OutputFormat::csv ? "csv" : "json";
  return j;
}

RunConfig config_from_json(const nlohmann::json& doc) {
  const nlohmann::json& j = doc.contains("config") ? doc.at("config") : doc;
  if (!j.is_object()) throw InputError("config must be a JSON object");
  RunConfig c;
  c.command = get_field<std::string>(j, "command", "");
  if (c.command != "simulate" && c.command != "sweep" && c.command != "table") {
    throw InputError("config command must be simulate, sweep or table");
  }
  if (j.contains("graph") && !j.at("graph").is_null()) c.graph = get_field<std::string>(j, "graph", "");
  if (j.contains("er_n") && !j.at("er_n").is_null()) c.er_n = get_field<std::size_t>(j, "er_n", 0);
  if (j.contains("er_s") && !j.at("er_s").is_null()) c.er_s = get_field<double>(j, "er_s", 0.0);
  c.s_values = get_field<std::vector<double>>(j, "s_values", {});
  c.variants = get_field<std::vector<std::string>>(j, "variants", {});
  c.n0_star = get_field<std::size_t>(j, "n0", c.n0_star);
  c.trials = get_field<std::size_t>(j, "trials", c.trials);
  c.seed = get_field<std::uint64_t>(j, "seed", c.seed);
  c.fresh_graph = get_field<bool>(j, "fresh_graph", c.fresh_graph);
  c.fresh_target = get_field<bool>(j, "fresh_target", c.fresh_target);
  c.format = parse_format(get_field<std::string>(j, "format", "csv"));
  return c;
}

std::string config_hash(const RunConfig& c) {
  const std::string text = to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<ResultRow> result_rows(const std::string& graph, const TrialSummary& t,
                                   const std::string& hash) {
  std::vector<ResultRow> rows;
  for (const auto* cs : {&t.unit, &t.linear}) {
    ResultRow r;
    r.graph = graph;
    r.n = t.n;
    r.s = t.s;
    r.variant = std::string(to_string(t.variant));
    r.cost_model = cs == &t.unit ? "unit" : "linear";
    r.trials = t.trials;
    r.seed = t.seed;
    r.mean = cs->mean;
    r.ci_lo = cs->ci_lo;
    r.ci_hi = cs->ci_hi;
    r.estimate_lo = cs->estimate.lower;
    r.estimate_hi = cs->estimate.upper;
    r.rel_err_pct = cs->rel_err_pct;
    r.estimate_outside_ci = cs->estimate_outside_ci;
    r.config_hash = hash;
    rows.push_back(std::move(r));
  }
  return rows;
}

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols{
      "graph",       "n",           "s",           "variant",     "cost_model",
      "trials",      "seed",        "mean",        "ci_lo",       "ci_hi",
      "estimate_lo", "estimate_hi", "rel_err_pct", "estimate_outside_ci", "config_hash"};
  return cols;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  const auto& cols = result_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\r\n";
  for (const auto& r : rows) {
    out << csv_field(r.graph) << ',' << r.n << ',' << format_double(r.s) << ',' << r.variant << ','
        << r.cost_model << ',' << r.trials << ',' << r.seed << ',' << format_double(r.mean) << ','
        << format_double(r.ci_lo) << ',' << format_double(r.ci_hi) << ','
        << format_double(r.estimate_lo) << ',' << format_double(r.estimate_hi) << ','
        << format_double(r.rel_err_pct) << ',' << (r.estimate_outside_ci ? "true" : "false") << ','
        << r.config_hash << "\r\n";
  }
}

void write_json(std::ostream& out, const std::vector<ResultRow>& rows, const RunConfig& config) {
  nlohmann::json doc;
  doc["config"] = to_json(config);
  doc["config_hash"] = config_hash(config);
  doc["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    doc["rows"].push_back({{"graph", r.graph},
                           {"n", r.n},
                           {"s", r.s},
                           {"variant", r.variant},
                           {"cost_model", r.cost_model},
                           {"trials", r.trials},
                           {"seed", r.seed},
                           {"mean", r.mean},
                           {"ci_lo", r.ci_lo},
                           {"ci_hi", r.ci_hi},
                           {"estimate_lo", r.estimate_lo},
                           {"estimate_hi", r.estimate_hi},
                           {"rel_err_pct", r.rel_err_pct},
                           {"estimate_outside_ci", r.estimate_outside_ci},
                           {"config_hash", r.config_hash}});
  }
  out << doc.dump(2) << '\n';
}

void write_stats_csv(std::ostream& out, const std::vector<GraphStatsRow>& rows) {
  out << "graph,n,m,s,assortativity,d_max,d_avg\r\n";
  for (const auto& r : rows) {
    out << csv_field(r.graph) << ',' << r.n << ',' << r.m << ',' << format_double(r.s) << ','
        << (r.assortativity ? format_double(*r.assortativity) : "") << ',' << r.d_max << ','
        << format_double(r.d_avg) << "\r\n";
  }
}

void write_stats_json(std::ostream& out, const std::vector<GraphStatsRow>& rows) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : rows) {
    doc.push_back({{"graph", r.graph},
                   {"n", r.n},
                   {"m", r.m},
                   {"s", r.s},
                   {"assortativity", optional_json(r.assortativity)},
                   {"d_max", r.d_max},
                   {"d_avg", r.d_avg}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace starsample
