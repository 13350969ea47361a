#include "valnet/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "valnet/version.hpp"

namespace valnet::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail_at(const std::filesystem::path& path, int line,
                          const std::string& message) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + message);
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  }
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

std::optional<long> parse_int(std::string_view text) {
  long value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::optional<double> try_parse_double(std::string_view text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

// "# valnet-graph v1 n=32 kind=valued" -> (n, kind)
struct GraphHeader {
  int n = -1;
  std::string kind;
};

std::optional<GraphHeader> parse_graph_header(std::string_view line) {
  constexpr std::string_view magic = "# valnet-graph v1";
  if (line.substr(0, magic.size()) != magic) return std::nullopt;
  GraphHeader header;
  std::istringstream rest{std::string(line.substr(magic.size()))};
  std::string token;
  while (rest >> token) {
    if (token.rfind("n=", 0) == 0) {
      const auto n = parse_int(std::string_view(token).substr(2));
      if (n) header.n = static_cast<int>(*n);
    } else if (token.rfind("kind=", 0) == 0) {
      header.kind = token.substr(5);
    }
  }
  if (header.n < 0 || header.kind.empty()) return std::nullopt;
  return header;
}

struct EdgeRow {
  int src;
  int dst;
  double weight;
};

// shared CSV edge-list scanner; returns rows plus any canonical header
struct EdgeListFile {
  std::optional<GraphHeader> header;
  std::vector<EdgeRow> rows;
};

EdgeListFile scan_edgelist(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  EdgeListFile file;
  std::string raw;
  int line_no = 0;
  bool saw_data_row = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (auto header = parse_graph_header(line)) file.header = header;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 3) {
      fail_at(path, line_no, "expected 3 comma-separated fields, got " +
                                 std::to_string(fields.size()));
    }
    const auto src = parse_int(fields[0]);
    const auto dst = parse_int(fields[1]);
    if (!src || !dst) {
      // a leading non-numeric row is treated as a column header
      if (!saw_data_row) continue;
      fail_at(path, line_no, "non-integer node id");
    }
    saw_data_row = true;
    const auto weight = try_parse_double(fields[2]);
    if (!weight) fail_at(path, line_no, "malformed weight '" + std::string(fields[2]) + "'");
    if (*src < 0 || *dst < 0) fail_at(path, line_no, "negative node id");
    if (*src == *dst) {
      fail_at(path, line_no, "self-loop at node " + std::to_string(*src));
    }
    if (!(*weight >= 0.0)) fail_at(path, line_no, "negative weight");
    file.rows.push_back({static_cast<int>(*src), static_cast<int>(*dst), *weight});
  }
  return file;
}

void write_edge_rows(std::ofstream& out, std::vector<EdgeRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const EdgeRow& a, const EdgeRow& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  out << "src,dst,weight\n";
  for (const auto& row : rows) {
    out << row.src << ',' << row.dst << ',' << format_double(row.weight) << '\n';
  }
}

json gen_config_json(const GenConfig& c) {
  json j;
  j["n"] = c.n;
  j["family"] = family_name(c.family);
  j["sigma_alpha"] = c.sigma_alpha;
  j["geometry"] = geometry_name(c.geometry);
  j["gamma_geo"] = c.gamma_geo;
  j["lambda"] = c.lambda;
  j["chi"] = c.chi;
  j["mu_base"] = c.mu_base;
  j["c_var"] = c.c_var;
  j["mu_offset"] = c.mu_offset;
  j["seed"] = c.seed;
  return j;
}

GenConfig gen_config_from(const json& j) {
  GenConfig c;
  c.n = j.at("n").get<int>();
  c.family = family_from_name(j.at("family").get<std::string>());
  c.sigma_alpha = j.value("sigma_alpha", 0.0);
  c.geometry = geometry_from_name(j.value("geometry", "none"));
  c.gamma_geo = j.value("gamma_geo", 0.0);
  c.lambda = j.value("lambda", 0.0);
  c.chi = j.value("chi", 0.0);
  c.mu_base = j.value("mu_base", 0.0);
  c.c_var = j.value("c_var", 1.0);
  c.mu_offset = j.value("mu_offset", 0.0);
  c.seed = j.value("seed", std::uint64_t{0});
  c.validate();
  return c;
}

json lm_config_json(const LmConfig& c) {
  json j;
  j["mu"] = c.mu_lm;
  j["gamma"] = c.gamma_lm;
  j["beta"] = c.beta;
  j["sigma_eps"] = c.sigma_eps;
  j["rho_deg"] = c.rho_deg;
  j["seed"] = c.seed;
  return j;
}

LmConfig lm_config_from(const json& j) {
  LmConfig c;
  c.mu_lm = j.value("mu", 0.0);
  c.gamma_lm = j.value("gamma", 0.0);
  c.beta = j.value("beta", 0.0);
  c.sigma_eps = j.value("sigma_eps", 1.0);
  c.rho_deg = j.value("rho_deg", 0.0);
  c.seed = j.value("seed", std::uint64_t{0});
  c.validate();
  return c;
}

json experiment_config_json(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = 1;
  if (c.generation) j["generation"] = gen_config_json(*c.generation);
  if (c.input_path) {
    j["input"] = *c.input_path;
    j["input_format"] = input_format_name(c.input_format);
    j["symmetrize"] = symmetrize_rule_name(c.symmetrize);
    j["clamp_negative"] = c.clamp_negative;
  }
  json methods = json::array();
  for (auto m : c.methods) methods.push_back(method_name(m));
  j["methods"] = methods;
  json ladder;
  ladder["steps"] = c.ladder.steps;
  if (!c.ladder.explicit_values.empty()) ladder["values"] = c.ladder.explicit_values;
  j["ladder"] = ladder;
  json stats = json::array();
  for (auto s : c.statistics) stats.push_back(statistic_name(s));
  j["statistics"] = stats;
  j["replicates"] = c.replicates;
  if (c.lm) j["lm"] = lm_config_json(*c.lm);
  if (!c.contagion_ladder.empty()) j["contagion_ladder"] = c.contagion_ladder;
  j["out"] = c.out_dir;
  j["seed"] = c.seed;
  return j;
}

ExperimentConfig experiment_config_from(const json& j) {
  ExperimentConfig c;
  if (j.contains("generation") && !j.at("generation").is_null()) {
    c.generation = gen_config_from(j.at("generation"));
  }
  if (j.contains("input") && !j.at("input").is_null()) {
    c.input_path = j.at("input").get<std::string>();
    c.input_format = input_format_from_name(j.value("input_format", "graph"));
    c.symmetrize = symmetrize_rule_from_name(j.value("symmetrize", "mean"));
    c.clamp_negative = j.value("clamp_negative", false);
  }
  if (j.contains("methods")) {
    c.methods.clear();
    for (const auto& m : j.at("methods")) {
      c.methods.push_back(method_from_name(m.get<std::string>()));
    }
  }
  if (j.contains("ladder")) {
    const auto& ladder = j.at("ladder");
    c.ladder.steps = ladder.value("steps", 24);
    if (ladder.contains("values")) {
      c.ladder.explicit_values = ladder.at("values").get<std::vector<double>>();
    }
  }
  if (j.contains("statistics")) {
    c.statistics.clear();
    for (const auto& s : j.at("statistics")) {
      c.statistics.insert(statistic_from_name(s.get<std::string>()));
    }
  }
  c.replicates = j.value("replicates", 10);
  if (j.contains("lm") && !j.at("lm").is_null()) c.lm = lm_config_from(j.at("lm"));
  if (j.contains("contagion_ladder")) {
    c.contagion_ladder = j.at("contagion_ladder").get<std::vector<int>>();
  }
  c.out_dir = j.value("out", std::string("."));
  c.seed = j.value("seed", std::uint64_t{0});
  c.validate();
  return c;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value,
                    std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buffer, ptr);
}

double parse_double(std::string_view text) {
  const auto value = try_parse_double(trim(text));
  if (!value) {
    throw std::invalid_argument("parse_double: malformed number '" +
                                std::string(text) + "'");
  }
  return *value;
}

ArcMatrix read_weighted_edgelist(const std::filesystem::path& path) {
  const EdgeListFile file = scan_edgelist(path);
  int n = file.header ? file.header->n : 0;
  for (const auto& row : file.rows) {
    n = std::max({n, row.src + 1, row.dst + 1});
  }
  ArcMatrix result;
  result.n = n;
  result.arcs = Eigen::MatrixXd::Zero(n, n);
  std::vector<bool> seen(static_cast<std::size_t>(n) * n, false);
  for (const auto& row : file.rows) {
    const auto idx = static_cast<std::size_t>(row.src) * n + row.dst;
    if (seen[idx]) {
      throw std::runtime_error(path.string() + ": duplicate arc (" +
                               std::to_string(row.src) + "," +
                               std::to_string(row.dst) + ")");
    }
    seen[idx] = true;
    result.arcs(row.src, row.dst) = row.weight;
  }
  return result;
}

std::string_view symmetrize_rule_name(SymmetrizeRule rule) {
  switch (rule) {
    case SymmetrizeRule::Sum: return "sum";
    case SymmetrizeRule::Max: return "max";
    case SymmetrizeRule::Mean: return "mean";
  }
  throw std::invalid_argument("symmetrize_rule_name: unknown rule");
}

SymmetrizeRule symmetrize_rule_from_name(std::string_view name) {
  if (name == "sum") return SymmetrizeRule::Sum;
  if (name == "max") return SymmetrizeRule::Max;
  if (name == "mean") return SymmetrizeRule::Mean;
  throw std::invalid_argument("unknown symmetrize rule '" + std::string(name) + "'");
}

ValuedGraph symmetrize_arcs(const ArcMatrix& arcs, SymmetrizeRule rule) {
  const int n = arcs.n;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double out = arcs.arcs(i, j);
      const double in = arcs.arcs(j, i);
      double tie = 0.0;
      switch (rule) {
        case SymmetrizeRule::Sum: tie = out + in; break;
        case SymmetrizeRule::Max: tie = std::max(out, in); break;
        case SymmetrizeRule::Mean: tie = (out + in) / 2.0; break;
      }
      w(i, j) = tie;
      w(j, i) = tie;
    }
  }
  return ValuedGraph(n, std::move(w));
}

ValuedGraph read_dense_matrix(const std::filesystem::path& path,
                              const DenseReadOptions& options,
                              DenseReadReport* report) {
  std::ifstream in = open_for_read(path);
  std::vector<std::vector<double>> rows;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    for (const auto field : split_csv(line)) {
      const auto value = try_parse_double(field);
      if (!value) fail_at(path, line_no, "malformed entry '" + std::string(field) + "'");
      row.push_back(*value);
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw std::runtime_error(path.string() + ": empty matrix");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw std::runtime_error(path.string() + ": matrix is not square (row " +
                               std::to_string(i + 1) + " has " +
                               std::to_string(rows[i].size()) + " of " +
                               std::to_string(n) + " entries)");
    }
  }

  int clamped = 0;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(rows[i][j] - rows[j][i]) > options.symmetry_tol) {
        throw std::runtime_error(
            path.string() + ": asymmetric beyond tolerance at (" + std::to_string(i) +
            "," + std::to_string(j) + "): " + format_double(rows[i][j]) + " vs " +
            format_double(rows[j][i]));
      }
      double tie = (rows[i][j] + rows[j][i]) / 2.0;
      if (tie < 0.0) {
        if (!options.clamp_negative) {
          throw std::runtime_error(path.string() + ": negative entry at (" +
                                   std::to_string(i) + "," + std::to_string(j) +
                                   "); pass the clamp option to zero it");
        }
        tie = 0.0;
        ++clamped;
      }
      w(i, j) = tie;
      w(j, i) = tie;
    }
  }
  if (report) report->clamped = clamped;
  return ValuedGraph(n, std::move(w));
}

void write_valued_graph(const std::filesystem::path& path, const ValuedGraph& g) {
  std::ofstream out = open_for_write(path);
  out << "# valnet-graph v1 n=" << g.size() << " kind=valued\n";
  std::vector<EdgeRow> rows;
  for (const auto& e : g.upper_triangle_entries()) rows.push_back({e.i, e.j, e.weight});
  write_edge_rows(out, std::move(rows));
}

ValuedGraph read_valued_graph(const std::filesystem::path& path) {
  const EdgeListFile file = scan_edgelist(path);
  if (!file.header || file.header->kind != "valued") {
    throw std::runtime_error(path.string() +
                             ": not a canonical valued graph file (missing "
                             "'# valnet-graph v1 ... kind=valued' header)");
  }
  std::vector<WeightedEntry> entries;
  for (const auto& row : file.rows) entries.push_back({row.src, row.dst, row.weight});
  return build_valued_graph(file.header->n, entries);
}

void write_directed_binary_graph(const std::filesystem::path& path,
                                 const DirectedBinaryGraph& g) {
  std::ofstream out = open_for_write(path);
  out << "# valnet-graph v1 n=" << g.size() << " kind=directed-binary\n";
  std::vector<EdgeRow> rows;
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      if (g.arc(i, j)) rows.push_back({i, j, 1.0});
    }
  }
  write_edge_rows(out, std::move(rows));
}

void write_undirected_binary_graph(const std::filesystem::path& path,
                                   const UndirectedBinaryGraph& g) {
  std::ofstream out = open_for_write(path);
  out << "# valnet-graph v1 n=" << g.size() << " kind=undirected-binary\n";
  std::vector<EdgeRow> rows;
  for (int i = 0; i < g.size(); ++i) {
    for (int j = i + 1; j < g.size(); ++j) {
      if (g.edge(i, j)) rows.push_back({i, j, 1.0});
    }
  }
  write_edge_rows(out, std::move(rows));
}

std::string_view input_format_name(InputFormat format) {
  switch (format) {
    case InputFormat::Graph: return "graph";
    case InputFormat::EdgeList: return "edgelist";
    case InputFormat::Dense: return "dense";
  }
  throw std::invalid_argument("input_format_name: unknown format");
}

InputFormat input_format_from_name(std::string_view name) {
  if (name == "graph") return InputFormat::Graph;
  if (name == "edgelist") return InputFormat::EdgeList;
  if (name == "dense") return InputFormat::Dense;
  throw std::invalid_argument("unknown input format '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (generation.has_value() == input_path.has_value()) {
    throw std::invalid_argument(
        "ExperimentConfig: exactly one of generation and input must be set");
  }
  if (replicates < 1) {
    throw std::invalid_argument("ExperimentConfig: replicates must be >= 1");
  }
  if (methods.empty()) {
    throw std::invalid_argument("ExperimentConfig: at least one method required");
  }
  if (!ladder.explicit_values.empty() && methods.size() > 1) {
    throw std::invalid_argument(
        "ExperimentConfig: an explicit ladder requires a single method (the "
        "parameter units differ between methods)");
  }
  if (ladder.steps < 1) {
    throw std::invalid_argument("ExperimentConfig: ladder steps must be >= 1");
  }
}

std::string to_json(const GenConfig& config) { return gen_config_json(config).dump(2); }

GenConfig gen_config_from_json(const std::string& text) {
  return gen_config_from(json::parse(text));
}

std::string to_json(const std::vector<GridEntry>& grid) {
  json arr = json::array();
  for (const auto& entry : grid) {
    json j;
    j["config"] = gen_config_json(entry.config);
    j["linear_model_only"] = entry.linear_model_only;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

std::string to_json(const LmConfig& config) { return lm_config_json(config).dump(2); }

LmConfig lm_config_from_json(const std::string& text) {
  return lm_config_from(json::parse(text));
}

std::string to_json(const ExperimentConfig& config) {
  return experiment_config_json(config).dump(2);
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  return experiment_config_from(json::parse(text));
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": invalid JSON: " + e.what());
  }
  if (j.contains("config")) {
    // manifest: the embedded config reproduces the run
    return experiment_config_from(j.at("config"));
  }
  if (j.contains("generation") || j.contains("input")) {
    return experiment_config_from(j);
  }
  // bare GenConfig (generate subcommand convenience)
  ExperimentConfig c;
  c.generation = gen_config_from(j);
  c.seed = c.generation->seed;
  return c;
}

void write_sweep_results(const std::vector<SweepResult>& sweeps,
                         const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream records = open_for_write(dir / "records.csv");
    records << "method,parameter,replicate,statistic,discrepancy\n";
    for (const auto& sweep : sweeps) {
      for (const auto& r : sweep.records) {
        records << method_name(sweep.method) << ',' << format_double(r.parameter)
                << ',' << r.replicate << ',' << statistic_name(r.statistic) << ','
                << format_double(r.discrepancy) << '\n';
      }
    }
  }
  {
    std::ofstream optima = open_for_write(dir / "optima.csv");
    optima << "statistic,method,parameter,discrepancy,arcs_per_node\n";
    for (const auto& sweep : sweeps) {
      for (const auto& o : sweep.optima) {
        optima << statistic_name(o.statistic) << ',' << method_name(sweep.method)
               << ',' << format_double(o.parameter) << ','
               << format_double(o.mean_discrepancy) << ','
               << format_double(o.mean_arcs_per_node) << '\n';
      }
    }
  }
}

void write_contagion_results(const MseExperimentResult& result,
                             const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::map<int, double> ratio_by_k;
  ratio_by_k[0] = result.valued_mse_zero
                      ? std::numeric_limits<double>::infinity()
                      : 1.0;
  for (const auto& cell : result.cells) ratio_by_k[cell.k] = cell.mse_ratio;

  std::ofstream out = open_for_write(dir / "contagion.csv");
  out << "k,replicate,beta_hat,se,tstat,mse_ratio\n";
  for (const auto& row : result.details) {
    out << row.k << ',' << row.replicate << ',' << format_double(row.beta_hat) << ','
        << format_double(row.se) << ',' << format_double(row.tstat) << ','
        << format_double(ratio_by_k.at(row.k)) << '\n';
  }
}

void write_manifest(const std::filesystem::path& dir, const std::string& subcommand,
                    const ExperimentConfig& config) {
  std::filesystem::create_directories(dir);
  json j;
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["config"] = experiment_config_json(config);
  std::ofstream out = open_for_write(dir / "manifest.json");
  out << j.dump(2) << '\n';
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::Gamma: return "gamma";
    case Family::Poisson: return "poisson";
    case Family::VarianceHetero: return "variance_hetero";
  }
  throw std::invalid_argument("family_name: unknown family");
}

Family family_from_name(std::string_view name) {
  if (name == "gamma") return Family::Gamma;
  if (name == "poisson") return Family::Poisson;
  if (name == "variance_hetero") return Family::VarianceHetero;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

std::string_view geometry_name(Geometry geometry) {
  switch (geometry) {
    case Geometry::None: return "none";
    case Geometry::Ring: return "ring";
    case Geometry::Cloud: return "cloud";
    case Geometry::ClusterAttract: return "cluster_attract";
    case Geometry::ClusterRepel: return "cluster_repel";
  }
  throw std::invalid_argument("geometry_name: unknown geometry");
}

Geometry geometry_from_name(std::string_view name) {
  if (name == "none") return Geometry::None;
  if (name == "ring") return Geometry::Ring;
  if (name == "cloud") return Geometry::Cloud;
  if (name == "cluster_attract") return Geometry::ClusterAttract;
  if (name == "cluster_repel") return Geometry::ClusterRepel;
  throw std::invalid_argument("unknown geometry '" + std::string(name) + "'");
}

}  // namespace valnet::io
