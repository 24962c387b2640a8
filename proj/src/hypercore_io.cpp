#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "hosm/errors.hpp"
#include "hosm/hypercore.hpp"

namespace hosm {

namespace {

// Splits a line into tokens on whitespace and commas, dropping any '#' comment.
std::vector<std::string_view> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_sep = [](char c) {
    return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
  };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view token, std::size_t line_no) {
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("malformed token '" + std::string(token) + "'", line_no);
  return value;
}

// Assigns dense ids in first-appearance order.
class Relabeler {
 public:
  VertexId operator()(std::uint64_t raw) {
    auto [it, inserted] = ids_.try_emplace(raw, static_cast<VertexId>(labels_.size()));
    if (inserted) labels_.push_back(std::to_string(raw));
    return it->second;
  }
  std::size_t size() const noexcept { return labels_.size(); }
  std::vector<std::string> take_labels() { return std::move(labels_); }

 private:
  std::unordered_map<std::uint64_t, VertexId> ids_;
  std::vector<std::string> labels_;
};

// Reads every integer token of a stream, one stream line at a time.
template <class Int>
std::vector<Int> read_integers(std::istream& in) {
  std::vector<Int> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    for (auto tok : tokenize(line)) values.push_back(parse_int<Int>(tok, line_no));
  }
  return values;
}

std::ifstream open_or_throw(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw FormatError("cannot open " + p.string());
  return in;
}

struct BensonPaths {
  std::filesystem::path nverts, simplices, times;
};

BensonPaths benson_paths(const std::filesystem::path& dir_or_prefix) {
  namespace fs = std::filesystem;
  fs::path prefix = dir_or_prefix;
  if (fs::is_directory(dir_or_prefix)) {
    auto name = dir_or_prefix.filename().string();
    if (name.empty()) name = dir_or_prefix.parent_path().filename().string();
    prefix = dir_or_prefix / name;
    if (!fs::exists(prefix.string() + "-nverts.txt")) {
      // Fall back to the first *-nverts.txt inside the directory.
      for (const auto& entry : fs::directory_iterator(dir_or_prefix)) {
        auto f = entry.path().filename().string();
        const std::string suffix = "-nverts.txt";
        if (f.size() > suffix.size() && f.ends_with(suffix)) {
          prefix = entry.path().parent_path() / f.substr(0, f.size() - suffix.size());
          break;
        }
      }
    }
  }
  return {prefix.string() + "-nverts.txt", prefix.string() + "-simplices.txt",
          prefix.string() + "-times.txt"};
}

}  // namespace

Hypergraph parse_hyperedges(std::istream& in) {
  Relabeler relabel;
  std::vector<HyperEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    std::vector<std::uint64_t> raw;
    raw.reserve(tokens.size());
    for (auto tok : tokens) raw.push_back(parse_int<std::uint64_t>(tok, line_no));
    std::vector<std::uint64_t> sorted = raw;
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
      throw ValidationError("line " + std::to_string(line_no) + ": edge repeats vertex " +
                            std::to_string(*dup));
    std::vector<VertexId> ids;
    ids.reserve(raw.size());
    for (auto v : raw) ids.push_back(relabel(v));
    edges.emplace_back(std::move(ids));
  }
  const auto n = relabel.size();
  return Hypergraph::from_edges(n, std::move(edges), relabel.take_labels());
}

Hypergraph read_hyperedges(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_hyperedges(in);
}

BensonDataset parse_benson(std::istream& nverts, std::istream& simplices, std::istream* times) {
  const auto counts = read_integers<std::int64_t>(nverts);
  const auto flat = read_integers<std::uint64_t>(simplices);

  std::size_t total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] <= 0)
      throw FormatError("nverts entry " + std::to_string(i + 1) + " is " +
                        std::to_string(counts[i]) + "; simplex sizes must be positive");
    total += static_cast<std::size_t>(counts[i]);
  }
  if (total != flat.size())
    throw FormatError("nverts sums to " + std::to_string(total) + " but simplices has " +
                      std::to_string(flat.size()) + " entries");

  BensonDataset out;
  out.simplex_count = counts.size();
  if (times != nullptr) {
    std::string line;
    while (std::getline(*times, line))
      if (!tokenize(line).empty()) ++out.timestamp_count;
  }

  Relabeler relabel;
  std::vector<HyperEdge> edges;
  edges.reserve(counts.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto k = static_cast<std::size_t>(counts[i]);
    std::vector<VertexId> ids;
    ids.reserve(k);
    for (std::size_t j = 0; j < k; ++j) ids.push_back(relabel(flat[cursor + j]));
    cursor += k;
    try {
      edges.emplace_back(std::move(ids));
    } catch (const ValidationError& e) {
      throw ValidationError("simplex " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  const auto n = relabel.size();
  out.graph = Hypergraph::from_edges(n, std::move(edges), relabel.take_labels());
  return out;
}

BensonDataset read_benson(const std::filesystem::path& dir_or_prefix) {
  const auto paths = benson_paths(dir_or_prefix);
  auto nv = open_or_throw(paths.nverts);
  auto sx = open_or_throw(paths.simplices);
  if (std::filesystem::exists(paths.times)) {
    std::ifstream tm(paths.times);
    return parse_benson(nv, sx, &tm);
  }
  return parse_benson(nv, sx, nullptr);
}

bool looks_like_benson(const std::filesystem::path& path) {
  return std::filesystem::exists(benson_paths(path).nverts);
}

void write_canonical(const Hypergraph& graph, std::ostream& out) {
  // Vertices are written by original label and ranked numerically (labels that are not
  // plain integers sort after those that are), so the text does not depend on dense ids.
  const std::size_t n = graph.vertex_count();
  std::vector<std::string> label(n);
  std::vector<std::pair<bool, std::uint64_t>> numeric(n);
  for (VertexId v = 0; v < n; ++v) {
    label[v] = graph.label(v);
    const auto& t = label[v];
    std::uint64_t x = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    numeric[v] = {ec == std::errc{} && p == t.data() + t.size(), x};
  }
  std::vector<VertexId> by_label(n);
  for (VertexId v = 0; v < n; ++v) by_label[v] = v;
  std::sort(by_label.begin(), by_label.end(), [&](VertexId a, VertexId b) {
    if (numeric[a].first != numeric[b].first) return numeric[a].first;
    if (numeric[a].first && numeric[a].second != numeric[b].second) return numeric[a].second < numeric[b].second;
    if (label[a] != label[b]) return label[a] < label[b];
    return a < b;
  });
  std::vector<VertexId> rank(n);
  for (VertexId k = 0; k < n; ++k) rank[by_label[k]] = k;

  std::vector<std::vector<VertexId>> lines;
  lines.reserve(graph.edge_count());
  for (const auto& e : graph.edges()) {
    std::vector<VertexId> ranked;
    ranked.reserve(e.order());
    for (VertexId v : e.vertices()) ranked.push_back(rank[v]);
    std::sort(ranked.begin(), ranked.end());
    lines.push_back(std::move(ranked));
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& line : lines) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out << ' ';
      out << label[by_label[line[i]]];
    }
    out << '\n';
  }
}

std::string to_canonical_string(const Hypergraph& graph) {
  std::ostringstream os;
  write_canonical(graph, os);
  return os.str();
}

}  // namespace hosm
