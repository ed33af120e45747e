#include "expander/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "expander/errors.hpp"

namespace expander {

namespace {

// Splits a line into exactly two unsigned decimal fields separated by one space.
bool parse_pair(std::string_view line, std::uint64_t& a, std::uint64_t& b) {
  const auto space = line.find(' ');
  if (space == std::string_view::npos) return false;
  auto field = [](std::string_view s, std::uint64_t& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
  };
  return field(line.substr(0, space), a) && field(line.substr(space + 1), b);
}

}  // namespace

EdgeList parse_edge_list(std::string_view text) {
  EdgeList el;
  bool have_header = false;
  std::uint64_t declared_m = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (!parse_pair(line, a, b)) {
      throw FormatError(line_no, "expected two decimal integers separated by one space, got '" +
                                     std::string(line) + "'");
    }
    if (!have_header) {
      if (a == 0) throw FormatError(line_no, "vertex count must be at least 1");
      el.n = a;
      declared_m = b;
      el.edges.reserve(b);
      have_header = true;
      continue;
    }
    if (el.edges.size() == declared_m) {
      throw FormatError(line_no, "more edge lines than the declared m = " +
                                     std::to_string(declared_m));
    }
    if (!(a < b)) throw FormatError(line_no, "edge endpoints must satisfy u < v");
    if (b >= el.n) {
      throw FormatError(line_no, "vertex " + std::to_string(b) + " >= n = " + std::to_string(el.n));
    }
    el.edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  }
  if (!have_header) throw FormatError(line_no + 1, "missing 'n m' header");
  if (el.edges.size() != declared_m) {
    throw FormatError(line_no, "declared m = " + std::to_string(declared_m) + " but found " +
                                   std::to_string(el.edges.size()) + " edge lines");
  }
  return el;
}

EdgeList read_edge_list(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_edge_list(text);
}

Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open graph file " + path.string());
  return Graph::from_edge_list(read_edge_list(in));
}

std::string format_edge_list(const EdgeList& el) {
  std::string out;
  out.reserve(16 * (el.edges.size() + 1));
  out += std::to_string(el.n);
  out += ' ';
  out += std::to_string(el.edges.size());
  out += '\n';
  for (const Edge& e : el.edges) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

void write_edge_list(std::ostream& out, const EdgeList& el) { out << format_edge_list(el); }

void write_graph(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  write_edge_list(out, g.to_edge_list());
}

}  // namespace expander
