#include "starsample/cli.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "starsample/cli_io.hpp"
#include "starsample/error.hpp"
#include "starsample/estimators.hpp"
#include "starsample/montecarlo.hpp"
#include "starsample/random.hpp"

namespace starsample {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<Variant> variants_of(const std::vector<std::string>& names) {
  std::vector<Variant> out;
  for (const auto& name : names) {
    if (name == "all") return {Variant::ssr, Variant::ssc, Variant::sss};
    out.push_back(parse_variant(name));
  }
  if (out.empty()) return {Variant::ssr, Variant::ssc, Variant::sss};
  return out;
}

LoadedGraph load(const std::string& path) {
  try {
    return load_edge_list(path);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string graph_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// Opens --output when given, otherwise writes to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<ResultRow> execute(const RunConfig& c, unsigned threads) {
  const std::string hash = config_hash(c);
  std::vector<ResultRow> rows;
  auto append = [&](const std::string& name, const TrialSummary& t) {
    auto r = result_rows(name, t, hash);
    rows.insert(rows.end(), r.begin(), r.end());
  };
  const auto variants = variants_of(c.variants);

  if (c.command == "table" || (c.command == "simulate" && c.graph)) {
    if (!c.graph) throw UsageError("table needs --graph");
    if (c.command == "simulate" && (c.er_n || c.er_s)) throw UsageError("give either --graph or --er, not both");
    auto g = std::make_shared<const Graph>(load(*c.graph).graph);
    for (Variant v : variants) {
      append(graph_name(*c.graph), run_experiment({g, v, c.n0_star, c.trials, c.seed, false, c.fresh_target, threads}));
    }
    return rows;
  }
  if (!c.er_n) throw UsageError(c.command + " needs an Erdos-Renyi source (--er N S or --n)");
  std::vector<double> s_values = c.s_values;
  if (c.command == "simulate") {
    if (!c.er_s) throw UsageError("simulate needs --er N S or --graph FILE");
    s_values = {*c.er_s};
  }
  if (s_values.empty()) throw UsageError("sweep needs --s-values or --s-min/--s-max/--points");
  for (double s : s_values) {
    for (Variant v : variants) {
      append("er", run_experiment({ErParams(*c.er_n, s), v, c.n0_star, c.trials, c.seed, c.fresh_graph,
                                   c.fresh_target, threads}));
    }
  }
  return rows;
}

RunConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

// --- estimate ----------------------------------------------------------------

struct EstimateRow {
  std::string source;
  std::size_t n;
  double s;
  std::size_t n0;
  std::optional<std::size_t> n_e;
  Variant variant;
  std::string cost_model;
  Estimate estimate;
};

void write_estimates(std::ostream& out, const std::vector<EstimateRow>& rows, OutputFormat fmt) {
  if (fmt == OutputFormat::json) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : rows) {
      doc.push_back({{"source", r.source},
                     {"n", r.n},
                     {"s", r.s},
                     {"n0", r.n0},
                     {"n_e", r.n_e ? nlohmann::json(*r.n_e) : nlohmann::json(nullptr)},
                     {"variant", std::string(to_string(r.variant))},
                     {"cost_model", r.cost_model},
                     {"estimate_lo", r.estimate.lower},
                     {"estimate_hi", r.estimate.upper}});
    }
    out << doc.dump(2) << '\n';
    return;
  }
  out << "source,n,s,n0,n_e,variant,cost_model,estimate_lo,estimate_hi\r\n";
  for (const auto& r : rows) {
    out << csv_field(r.source) << ',' << r.n << ',' << format_double(r.s) << ',' << r.n0 << ','
        << (r.n_e ? std::to_string(*r.n_e) : "") << ',' << to_string(r.variant) << ',' << r.cost_model
        << ',' << format_double(r.estimate.lower) << ',' << format_double(r.estimate.upper) << "\r\n";
  }
}

struct EstimateOpts {
  std::optional<std::size_t> n;
  std::optional<double> s;
  std::optional<std::size_t> n0;
  std::string graph;
  std::vector<std::string> target;
  std::uint64_t seed = 1;
  std::vector<std::string> variants;
  std::string format = "csv";
  std::string output;
};

int run_estimate(const EstimateOpts& o, std::ostream& out) {
  std::vector<EstimateRow> rows;
  auto add = [&](std::string src, std::size_t n, double s, std::size_t n0, std::optional<std::size_t> ne,
                 Variant v, const VariantEstimates& e) {
    rows.push_back({src, n, s, n0, ne, v, "unit", e.unit});
    rows.push_back({std::move(src), n, s, n0, ne, v, "linear", e.linear});
  };
  if (!o.graph.empty()) {
    if (o.n || o.s) throw UsageError("give either --graph or --n/--s, not both");
    const LoadedGraph lg = load(o.graph);
    const std::size_t n = lg.graph.order();
    std::optional<TargetSet> target;
    if (!o.target.empty()) {
      std::vector<Vertex> members;
      for (const auto& id : o.target) {
        const auto v = find_vertex(lg, id);
        if (!v) throw InputError("target vertex '" + id + "' is not in " + o.graph);
        members.push_back(*v);
      }
      target.emplace(std::move(members), n);
    } else {
      if (!o.n0) throw UsageError("estimate --graph needs --target or --n0");
      Rng rng = make_stream(o.seed, 0);
      target = random_target(rng, n, *o.n0);
    }
    const std::size_t ne = extended_neighborhood(lg.graph, *target).n_e_star;
    for (Variant v : variants_of(o.variants)) {
      add(graph_name(o.graph), n, lg.graph.density(), target->size(), ne, v,
          graph_estimates(v, lg.graph, *target));
    }
  } else {
    if (!o.n || !o.s || !o.n0) throw UsageError("estimate needs --n, --n0 and --s (or --graph)");
    const EstimatorInput in{*o.n, *o.n0, *o.s};
    for (Variant v : variants_of(o.variants)) add("er", *o.n, *o.s, *o.n0, std::nullopt, v, er_estimates(v, in));
  }
  Sink sink(o.output, out);
  write_estimates(sink.get(), rows, parse_format(o.format));
  return 0;
}

// --- stats -------------------------------------------------------------------

struct StatsOpts {
  std::vector<std::string> files;
  std::string format = "csv";
  std::string dump_remap;
  std::string output;
};

int run_stats(const StatsOpts& o, std::ostream& out) {
  if (!o.dump_remap.empty() && o.files.size() != 1) throw UsageError("--dump-remap takes a single input file");
  std::vector<GraphStatsRow> rows;
  for (const auto& path : o.files) {
    const LoadedGraph lg = load(path);
    rows.push_back(graph_stats(graph_name(path), lg.graph));
    if (!o.dump_remap.empty()) {
      std::ofstream remap(o.dump_remap);
      if (!remap) throw std::runtime_error("cannot write '" + o.dump_remap + "'");
      write_remap(remap, lg);
    }
  }
  Sink sink(o.output, out);
  if (parse_format(o.format) == OutputFormat::json) {
    write_stats_json(sink.get(), rows);
  } else {
    write_stats_csv(sink.get(), rows);
  }
  return 0;
}

// --- simulate / sweep / table ------------------------------------------------

struct ExperimentOpts {
  std::string config;
  std::string graph;
  std::pair<std::size_t, double> er{0, 0.0};
  std::optional<std::size_t> n;
  std::vector<double> s_values;
  std::optional<double> s_min;
  std::optional<double> s_max;
  std::size_t points = 12;
  std::vector<std::string> variants;
  std::size_t n0 = 2;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  bool fixed_target = false;
  bool fixed_graph = false;
  unsigned threads = 0;
  std::string format = "csv";
  std::string output;
};

void add_experiment_options(CLI::App* sub, ExperimentOpts& o, bool er_options) {
  sub->add_option("--config", o.config, "Replay the config embedded in a JSON output (or a bare config)")
      ->check(CLI::ExistingFile);
  sub->add_option("--n0", o.n0, "Target size")->check(CLI::PositiveNumber);
  sub->add_option("--trials", o.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "Master seed");
  sub->add_flag("--fixed-target", o.fixed_target, "Draw one target and keep it for every trial");
  sub->add_option("--threads", o.threads, "Worker threads (default: $STARSAMPLE_THREADS or all cores)");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("-o,--output", o.output, "Write to this file instead of stdout");
  sub->add_option("--variant", o.variants, "ssr, ssc, sss or all (comma separated)")
      ->delimiter(',')
      ->transform(CLI::IsMember({"ssr", "ssc", "sss", "all"}, CLI::ignore_case));
  if (er_options) {
    sub->add_flag("--fixed-graph", o.fixed_graph, "ER sources: one graph shared by all trials");
  }
}

int run_experiment_command(const std::string& command, const ExperimentOpts& o, bool format_given,
                           std::ostream& out) {
  RunConfig c;
  if (!o.config.empty()) {
    c = read_config(o.config);
    if (c.command != command) {
      throw UsageError("config is for '" + c.command + "', not '" + command + "'");
    }
    if (format_given) c.format = parse_format(o.format);
  } else {
    c.command = command;
    if (!o.graph.empty()) c.graph = o.graph;
    if (command == "simulate" && o.er.first != 0) {
      c.er_n = o.er.first;
      c.er_s = o.er.second;
    }
    if (command == "sweep") {
      c.er_n = o.n;
      if (!o.s_values.empty() && (o.s_min || o.s_max)) throw UsageError("give --s-values or --s-min/--s-max, not both");
      if (o.s_min.has_value() != o.s_max.has_value()) throw UsageError("--s-min and --s-max go together");
      c.s_values = o.s_min ? log_space(*o.s_min, *o.s_max, o.points) : o.s_values;
    }
    for (const auto& v : o.variants) c.variants.push_back(v);
    c.n0_star = o.n0;
    c.trials = o.trials;
    c.seed = o.seed;
    c.fresh_graph = !o.fixed_graph;
    c.fresh_target = !o.fixed_target;
    c.format = parse_format(o.format);
  }
  const auto rows = execute(c, o.threads);
  Sink sink(o.output, out);
  if (c.format == OutputFormat::json) {
    write_json(sink.get(), rows, c);
  } else {
    write_csv(sink.get(), rows);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Star sampling costs: simulation and closed-form estimates", "starsample"};
  app.require_subcommand(1);

  StatsOpts stats_opts;
  auto* stats = app.add_subcommand("stats", "Order, size, density, assortativity and degree summary of edge lists");
  stats->add_option("files", stats_opts.files, "Edge-list files")->required()->check(CLI::ExistingFile);
  stats->add_option("--format", stats_opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  stats->add_option("--dump-remap", stats_opts.dump_remap, "Write 'file_id vertex' pairs to this path");
  stats->add_option("-o,--output", stats_opts.output, "Write to this file instead of stdout");

  EstimateOpts est_opts;
  auto* estimate = app.add_subcommand("estimate", "Closed-form expected costs and bounds");
  estimate->add_option("--n", est_opts.n, "ER order")->check(CLI::PositiveNumber);
  estimate->add_option("--s", est_opts.s, "ER edge probability");
  estimate->add_option("--n0", est_opts.n0, "Target size")->check(CLI::PositiveNumber);
  estimate->add_option("--graph", est_opts.graph, "Edge-list file")->check(CLI::ExistingFile);
  estimate->add_option("--target", est_opts.target, "Target vertex ids as they appear in the file")
      ->delimiter(',');
  estimate->add_option("--seed", est_opts.seed, "Seed for a random target when --target is absent");
  estimate->add_option("--variant", est_opts.variants, "ssr, ssc, sss or all (comma separated)")
      ->delimiter(',')
      ->transform(CLI::IsMember({"ssr", "ssc", "sss", "all"}, CLI::ignore_case));
  estimate->add_option("--format", est_opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  estimate->add_option("-o,--output", est_opts.output, "Write to this file instead of stdout");

  ExperimentOpts sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo costs on an ER model or a loaded graph");
  simulate->add_option("--er", sim_opts.er, "ER order and edge probability")->type_size(2);
  simulate->add_option("--graph", sim_opts.graph, "Edge-list file")->check(CLI::ExistingFile);
  add_experiment_options(simulate, sim_opts, true);

  ExperimentOpts sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo costs over a grid of ER edge probabilities");
  sweep_cmd->add_option("--n", sweep_opts.n, "ER order")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--s-values", sweep_opts.s_values, "Explicit s grid (comma separated)")->delimiter(',');
  sweep_cmd->add_option("--s-min", sweep_opts.s_min, "Smallest s of a log-spaced grid");
  sweep_cmd->add_option("--s-max", sweep_opts.s_max, "Largest s of a log-spaced grid");
  sweep_cmd->add_option("--points", sweep_opts.points, "Grid points")->check(CLI::PositiveNumber);
  add_experiment_options(sweep_cmd, sweep_opts, true);

  ExperimentOpts table_opts;
  table_opts.n0 = 4;
  auto* table = app.add_subcommand("table", "SSR/SSC/SSS simulation against estimates on a loaded graph");
  table->add_option("--graph", table_opts.graph, "Edge-list file")->check(CLI::ExistingFile);
  add_experiment_options(table, table_opts, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*stats) return run_stats(stats_opts, out);
    if (*estimate) return run_estimate(est_opts, out);
    if (*simulate) return run_experiment_command("simulate", sim_opts, simulate->count("--format") > 0, out);
    if (*sweep_cmd) return run_experiment_command("sweep", sweep_opts, sweep_cmd->count("--format") > 0, out);
    if (*table) return run_experiment_command("table", table_opts, table->count("--format") > 0, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for more information.\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace starsample
