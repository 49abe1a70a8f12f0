#include <fstream>
#include <sstream>

#include "mcs/error.hpp"
#include "mcs/graph.hpp"

namespace mcs {

Graph parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Edge> edges;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag == "c") continue;

    if (tag == "p") {
      std::string format;
      long long nn = -1;
      long long mm = -1;
      if (have_header) throw ParseError(line_no, "duplicate problem line");
      if (!(fields >> format >> nn >> mm) || (format != "edge" && format != "col") || nn < 0 || mm < 0) {
        throw ParseError(line_no, "expected 'p edge <n> <m>'");
      }
      std::string extra;
      if (fields >> extra) throw ParseError(line_no, "trailing tokens after problem line");
      n = static_cast<std::size_t>(nn);
      m = static_cast<std::size_t>(mm);
      have_header = true;
      edges.reserve(m);
    } else if (tag == "e") {
      if (!have_header) throw ParseError(line_no, "edge line before problem line");
      long long u = 0;
      long long v = 0;
      if (!(fields >> u >> v)) throw ParseError(line_no, "expected 'e <u> <v>'");
      std::string extra;
      if (fields >> extra) throw ParseError(line_no, "trailing tokens after edge");
      if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n || static_cast<std::size_t>(v) > n) {
        throw ParseError(line_no, "vertex index out of range 1.." + std::to_string(n));
      }
      if (u == v) throw ParseError(line_no, "self-loop on vertex " + std::to_string(u));
      edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    } else {
      throw ParseError(line_no, "unknown line type '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing problem line");
  if (edges.size() != m) {
    throw ParseError(line_no, "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  return Graph(n, edges);
}

std::string write_dimacs(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.order() << ' ' << g.size() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

Graph read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_dimacs(buffer.str());
}

void write_dimacs_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << write_dimacs(g);
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace mcs
