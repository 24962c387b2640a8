// hosm: ingest, sample, extract, downgrade, verify, mc, expand.
//
// Exit codes: 0 ok, 1 usage, 2 input format, 3 internal invariant violation.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "hosm/bounds.hpp"
#include "hosm/errors.hpp"
#include "hosm/features.hpp"
#include "hosm/hypercore.hpp"
#include "hosm/parallel.hpp"
#include "hosm/sampler.hpp"
#include "hosm/spectra.hpp"
#include "hosm/swalk.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kUsage = 1;
constexpr int kInputFormat = 2;
constexpr int kInvariant = 3;

struct Loaded {
  hosm::Hypergraph graph;
  std::string format;
  std::size_t simplices = 0;
  std::size_t timestamps = 0;
};

Loaded load(const fs::path& input, const std::string& format) {
  const bool benson = format == "benson" || (format == "auto" && hosm::looks_like_benson(input));
  Loaded out;
  if (benson) {
    auto d = hosm::read_benson(input);
    out.graph = std::move(d.graph);
    out.simplices = d.simplex_count;
    out.timestamps = d.timestamp_count;
    out.format = "benson";
  } else {
    if (!fs::is_regular_file(input)) throw hosm::FormatError("no hyperedge file or dataset at " + input.string());
    out.graph = hosm::read_hyperedges(input);
    out.format = "hyperedges";
  }
  spdlog::info("loaded {} ({}): {} vertices, {} unique edges", input.string(), out.format,
               out.graph.vertex_count(), out.graph.edge_count());
  return out;
}

std::string graph_id_of(const fs::path& p) {
  auto stem = p.filename().string();
  if (stem.empty()) stem = p.parent_path().filename().string();
  const auto dot = stem.rfind('.');
  return dot == std::string::npos || dot == 0 ? stem : stem.substr(0, dot);
}

// Files named on the command line, with directories expanded to their sorted *.txt
// entries unless the directory is itself a three-file dataset.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& raw : inputs) {
    const fs::path p(raw);
    if (fs::is_directory(p) && !hosm::looks_like_benson(p)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(p))
        if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(p);
    }
  }
  if (out.empty()) throw hosm::FormatError("no input graphs found");
  return out;
}

// "2-4", "3" or "2,3,4" (contiguous) -> [l_min, l_max].
std::pair<int, int> parse_moments(const std::string& spec) {
  std::vector<int> values;
  std::string token;
  auto flush_token = [&] {
    if (token.empty()) throw CLI::ValidationError("--moments", "empty entry in '" + spec + "'");
    values.push_back(std::stoi(token));
    token.clear();
  };
  if (const auto dash = spec.find('-'); dash != std::string::npos) {
    const int a = std::stoi(spec.substr(0, dash)), b = std::stoi(spec.substr(dash + 1));
    return {a, b};
  }
  for (char c : spec) {
    if (c == ',') {
      flush_token();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      token += c;
    } else {
      throw CLI::ValidationError("--moments", "unexpected character in '" + spec + "'");
    }
  }
  flush_token();
  std::sort(values.begin(), values.end());
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] != values[i - 1] + 1)
      throw CLI::ValidationError("--moments", "moment orders must form a contiguous range");
  return {values.front(), values.back()};
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hosm::FormatError("cannot write " + path.string());
  out << text;
}

// ---------------------------------------------------------------------------

struct Globals {
  std::uint64_t seed = 0;
  int threads = 0;
  std::string log_level = "warn";
};

int cmd_ingest(const std::string& input, const std::string& format, int r_max, const std::string& canonical_out) {
  const auto d = load(input, format);
  const auto& g = d.graph;
  std::map<std::size_t, std::size_t> orders;
  for (const auto& e : g.edges()) ++orders[e.order()];
  const auto split = hosm::split_layers(g, r_max);
  json j;
  j["input"] = input;
  j["format"] = d.format;
  j["vertices"] = g.vertex_count();
  j["unique_edges"] = g.edge_count();
  j["max_order"] = g.max_order();
  j["average_order"] = g.average_order();
  j["duplicates_collapsed"] = g.duplicates_collapsed();
  if (d.format == "benson") {
    j["simplices"] = d.simplices;
    j["timestamps"] = d.timestamps;
  }
  json hist = json::object();
  for (auto [k, c] : orders) hist[std::to_string(k)] = c;
  j["order_histogram"] = hist;
  json layers = json::object();
  for (int r = 2; r <= r_max; ++r) layers[std::to_string(r)] = split.layer(r).edge_count();
  j["layers"] = {{"r_max", r_max},
                 {"edges_per_order", layers},
                 {"excluded_order_one", split.excluded_order_one},
                 {"excluded_above_max", split.excluded_above_max}};
  std::cout << j.dump(2) << '\n';
  if (!canonical_out.empty()) write_text(canonical_out, hosm::to_canonical_string(g));
  return 0;
}

int cmd_sample(const std::string& input, const std::string& format, hosm::SampleBatchSpec spec,
               const std::string& out_dir) {
  const auto d = load(input, format);
  const auto samples = hosm::sample_many(d.graph, spec);
  fs::create_directories(out_dir);
  json manifest;
  manifest["source"] = fs::absolute(input).lexically_normal().string();
  manifest["seed"] = spec.seed;
  manifest["count"] = spec.count;
  manifest["size_min"] = spec.size_min;
  manifest["size_max"] = spec.size_max;
  manifest["restart_probability"] = spec.restart_probability;
  manifest["sizes"] = json::array();
  manifest["samples"] = json::array();
  const int width = std::max<int>(4, static_cast<int>(std::to_string(spec.count).size()));
  std::size_t exhausted = 0;
  for (const auto& s : samples) {
    char name[64];
    std::snprintf(name, sizeof name, "sample_%0*zu.txt", width, s.index);
    write_text(fs::path(out_dir) / name, hosm::to_canonical_string(s.induced.graph));
    manifest["sizes"].push_back(s.sample.nodes.size());
    manifest["samples"].push_back({{"file", name},
                                   {"index", s.index},
                                   {"seed", s.seed},
                                   {"target_size", s.target_size},
                                   {"nodes", s.sample.nodes.size()},
                                   {"edges", s.induced.graph.edge_count()},
                                   {"steps", s.sample.steps},
                                   {"exhausted", s.sample.exhausted}});
    exhausted += s.sample.exhausted;
  }
  write_text(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
  if (exhausted > 0) spdlog::warn("{} of {} walks hit the step cap before their target size", exhausted, samples.size());
  spdlog::info("wrote {} samples to {}", samples.size(), out_dir);
  return 0;
}

int cmd_extract(const std::vector<std::string>& inputs, const std::string& format, int r_max,
                const std::string& moments, const std::string& mode, const std::string& route,
                const std::string& label, const std::string& out) {
  const auto [l_min, l_max] = parse_moments(moments);
  const hosm::FeatureSchema schema(r_max, l_min, l_max);
  hosm::ExtractOptions opts;
  if (mode == "ordered") {
    opts.force_ordered = true;
  } else if (mode != "auto" && mode != "set_quotient" && mode != "quotient") {
    throw CLI::ValidationError("--mode", "expected auto, ordered or set_quotient");
  }
  opts.route = hosm::moment_route_from_string(route);

  const auto files = expand_inputs(inputs);
  std::vector<hosm::Hypergraph> graphs;
  graphs.reserve(files.size());
  std::vector<hosm::FeatureJob> jobs;
  for (const auto& f : files) graphs.push_back(load(f, format).graph);
  for (std::size_t i = 0; i < files.size(); ++i)
    jobs.push_back({&graphs[i], graph_id_of(files[i]),
                    label.empty() ? std::nullopt : std::optional<std::string>(label)});
  const auto rows = hosm::extract_features_many(jobs, schema, opts);
  if (out.empty() || out == "-") {
    hosm::write_features(rows, std::cout);
  } else {
    if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
    hosm::write_features(rows, fs::path(out));
  }
  spdlog::info("extracted {} feature vectors of width {}", rows.size(), schema.size());
  return 0;
}

int cmd_downgrade(const std::string& input, const std::string& format, const std::string& out) {
  const auto d = load(input, format);
  const auto edges = hosm::downgrade(d.graph);
  std::string text;
  for (const auto& [u, v] : edges) text += d.graph.label(u) + ' ' + d.graph.label(v) + '\n';
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text(out, text);
  }
  spdlog::info("downgraded to {} dyadic edges", edges.size());
  return 0;
}

int cmd_verify(const std::vector<std::string>& inputs, const std::string& format, int r_max,
               const std::string& out, const std::string& csv) {
  const auto files = expand_inputs(inputs);
  std::vector<hosm::BoundReport> reports;
  json array = json::array();
  for (const auto& f : files) {
    const auto g = load(f, format).graph;
    for (auto& rep : hosm::bound_reports(g, graph_id_of(f), r_max)) {
      array.push_back(hosm::to_json(rep));
      reports.push_back(std::move(rep));
    }
  }
  const auto calibration = hosm::to_json(hosm::calibrate_m2_identity(reports));
  for (auto& item : array) item["m2_identity_convention"] = calibration["winner"];
  if (out.empty() || out == "-") {
    std::cout << array.dump(2) << '\n';
  } else {
    write_text(out, array.dump(2) + "\n");
  }
  if (!csv.empty()) {
    std::ostringstream os;
    hosm::write_bounds_csv(reports, os);
    write_text(csv, os.str());
  }
  spdlog::info("m2 identity calibration over {} reports: {}", calibration["instances"].get<std::size_t>(),
               calibration["winner"].get<std::string>());
  return 0;
}

hosm::UniformLayer layer_for(const hosm::Hypergraph& g, int r) {
  if (r < 2) throw hosm::DomainError("--r must be >= 2");
  return hosm::split_layers(g, r).layer(r);
}

hosm::ExpansionMode mode_for(const std::string& mode, int r, int s) {
  return mode == "auto" ? hosm::default_mode(r, s) : hosm::expansion_mode_from_string(mode);
}

int cmd_mc(const std::string& input, const std::string& format, int r, int s, int length, std::size_t walks,
           std::uint64_t seed, const std::string& mode) {
  const auto g = load(input, format).graph;
  const auto layer = layer_for(g, r);
  const auto m = mode_for(mode, r, s);
  const auto dyadic = hosm::expand(layer, s, m);
  const auto est = hosm::mc_return(dyadic, length, walks, seed);
  json j = {{"r", r},         {"s", s},
            {"mode", hosm::to_string(m)},
            {"length", length}, {"walks", est.walks},
            {"seed", seed},     {"returns", est.returns},
            {"estimate", est.estimate},
            {"standard_error", est.standard_error},
            {"absent", est.absent}};
  if (!est.absent) j["exact"] = hosm::moments_trace(dyadic, length).at(length);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_expand(const std::string& input, const std::string& format, int r, int s, const std::string& mode,
               const std::string& out, bool check_degree_law) {
  const auto g = load(input, format).graph;
  const auto layer = layer_for(g, r);
  const auto m = mode_for(mode, r, s);
  const auto dyadic = hosm::expand(layer, s, m);
  if (check_degree_law && 2 * s <= r) {
    const auto rep = hosm::verify_degree_law(layer, s, dyadic);
    if (!rep.ok()) {
      std::string t;
      for (auto v : rep.offending_tuple) t += (t.empty() ? "" : ",") + std::to_string(v);
      throw hosm::InvariantViolation("degree law fails at tuple (" + t + "): expected " +
                                     std::to_string(rep.offending_expected) + ", got " +
                                     std::to_string(rep.offending_actual));
    }
  }
  std::ostringstream os;
  hosm::write_weighted_edge_list(dyadic, os);
  if (out.empty() || out == "-") {
    std::cout << os.str();
  } else {
    write_text(out, os.str());
  }
  spdlog::info("G^({}) of layer {}: {} nodes, {} edges, {} isolated tuples dropped", s, r, dyadic.node_count(),
               dyadic.edge_count(), dyadic.dropped_isolated);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral moments of higher-order networks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--seed", globals.seed, "Base seed for randomized commands");
  app.add_option("--threads", globals.threads, "OpenMP worker threads (0 keeps the runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--log-level", globals.log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  std::string format = "auto";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "auto, hyperedges or benson")
        ->check(CLI::IsMember({"auto", "hyperedges", "benson"}));
  };

  // ingest
  std::string input, canonical_out;
  int r_max = 5;
  auto* ingest = app.add_subcommand("ingest", "Parse and validate a dataset, print its summary");
  ingest->add_option("input", input, "Hyperedge-list file, dataset directory or prefix")->required();
  ingest->add_option("--rmax", r_max, "Largest layer order reported")->capture_default_str()->check(CLI::Range(2, 64));
  ingest->add_option("--canonical-out", canonical_out, "Write the canonical hyperedge list here");
  add_format(ingest);

  // sample
  hosm::SampleBatchSpec batch;
  std::string out_dir;
  std::optional<std::uint64_t> sample_seed;
  auto* sample = app.add_subcommand("sample", "Random-walk subgraph sampling");
  sample->add_option("input", input, "Dataset to sample from")->required();
  sample->add_option("--size-min", batch.size_min, "Smallest target node count")->capture_default_str()->check(CLI::PositiveNumber);
  sample->add_option("--size-max", batch.size_max, "Largest target node count")->capture_default_str()->check(CLI::PositiveNumber);
  sample->add_option("--count", batch.count, "Number of samples")->required();
  sample->add_option("--seed", sample_seed, "Overrides the global --seed");
  sample->add_option("--restart-p", batch.restart_probability, "Per-step restart probability")->capture_default_str()->check(CLI::Range(0.0, 0.999999));
  sample->add_option("--output-dir", out_dir, "Receives sample_NNNN.txt and manifest.json")->required();
  add_format(sample);

  // extract
  std::vector<std::string> inputs;
  std::string moments = "2-4", mode = "auto", route = "trace", label, out;
  auto* extract = app.add_subcommand("extract", "Spectral-moment feature vectors as CSV");
  extract->add_option("inputs", inputs, "Graph files or directories of *.txt samples")->required();
  extract->add_option("--rmax", r_max, "Largest layer order")->capture_default_str()->check(CLI::Range(2, 16));
  extract->add_option("--moments", moments, "Moment orders, e.g. 2-4")->capture_default_str();
  extract->add_option("--mode", mode, "auto (quotient where valid) or ordered")->capture_default_str();
  extract->add_option("--route", route, "trace or eig")->capture_default_str();
  extract->add_option("--label", label, "Class label written to every row");
  extract->add_option("--out", out, "CSV path (stdout when omitted)");
  add_format(extract);

  // downgrade
  auto* down = app.add_subcommand("downgrade", "Clique-expansion dyadic edge list");
  down->add_option("input", input, "Hypergraph to downgrade")->required();
  down->add_option("--out", out, "Edge-list path (stdout when omitted)");
  add_format(down);

  // verify
  std::string csv;
  auto* verify = app.add_subcommand("verify", "Moment bound reports as JSON");
  verify->add_option("inputs", inputs, "Graph files or directories of *.txt samples")->required();
  verify->add_option("--rmax", r_max, "Largest layer order")->capture_default_str()->check(CLI::Range(2, 16));
  verify->add_option("--out", out, "JSON path (stdout when omitted)");
  verify->add_option("--csv", csv, "Also write graph_id,r,s,m2,m2_lower,m3,m3_triad_bound,m3_count_bound");
  add_format(verify);

  // mc
  int r = 2, s = 1, length = 2;
  std::size_t walks = 100000;
  std::optional<std::uint64_t> mc_seed;
  auto* mc = app.add_subcommand("mc", "Monte-Carlo return probability on G^(s)");
  mc->add_option("input", input, "Hypergraph whose layer is expanded")->required();
  mc->add_option("--r", r, "Layer order")->required();
  mc->add_option("--s", s, "Shared-set size, 1 <= s < r")->required();
  mc->add_option("--length", length, "Walk length l")->capture_default_str()->check(CLI::PositiveNumber);
  mc->add_option("--walks", walks, "Number of walks")->capture_default_str()->check(CLI::PositiveNumber);
  mc->add_option("--seed", mc_seed, "Overrides the global --seed");
  mc->add_option("--mode", mode, "auto, ordered or set_quotient")->capture_default_str();
  add_format(mc);

  // expand
  bool check = false;
  auto* exp = app.add_subcommand("expand", "Debug export of G^(s) as a weighted edge list");
  exp->add_option("input", input, "Hypergraph whose layer is expanded")->required();
  exp->add_option("--r", r, "Layer order")->required();
  exp->add_option("--s", s, "Shared-set size, 1 <= s < r")->required();
  exp->add_option("--mode", mode, "auto, ordered or set_quotient")->capture_default_str();
  exp->add_option("--out", out, "Edge-list path (stdout when omitted)");
  exp->add_flag("--check-degree-law", check, "Fail with exit code 3 if the degree law does not hold");
  add_format(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  auto logger = spdlog::stderr_color_st("hosm");
  logger->set_pattern("%^[%l]%$ %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::from_str(globals.log_level));
  hosm::set_threads(globals.threads);

  try {
    if (*ingest) return cmd_ingest(input, format, r_max, canonical_out);
    if (*sample) {
      batch.seed = sample_seed.value_or(globals.seed);
      return cmd_sample(input, format, batch, out_dir);
    }
    if (*extract) return cmd_extract(inputs, format, r_max, moments, mode, route, label, out);
    if (*down) return cmd_downgrade(input, format, out);
    if (*verify) return cmd_verify(inputs, format, r_max, out, csv);
    if (*mc) return cmd_mc(input, format, r, s, length, walks, mc_seed.value_or(globals.seed), mode);
    if (*exp) return cmd_expand(input, format, r, s, mode, out, check);
  } catch (const CLI::ValidationError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const hosm::ParseError& e) {
    spdlog::error("parse error: {}", e.what());
    return kInputFormat;
  } catch (const hosm::FormatError& e) {
    spdlog::error("format error: {}", e.what());
    return kInputFormat;
  } catch (const hosm::ValidationError& e) {
    spdlog::error("invalid input: {}", e.what());
    return kInputFormat;
  } catch (const hosm::UnsupportedInput& e) {
    spdlog::error("unsupported input: {}", e.what());
    return kInputFormat;
  } catch (const hosm::DomainError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    spdlog::error("bad numeric argument: {}", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    spdlog::error("internal error: {}", e.what());
    return kInvariant;
  }
  return kUsage;
}
