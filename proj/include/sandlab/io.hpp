#pragma once

// Text formats. Every document starts with a `<kind> v1` header line;
// `#` starts a comment; tokens are whitespace separated. Several documents
// may follow one another in a single stream (a graph, then a configuration),
// which is how CLI pipelines pass state along.

#include <algorithm>
#include <charconv>
#include <optional>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sandlab/graph.hpp"

namespace sandlab::io {

struct Token {
  std::string text;
  std::size_t line;
};

/// One document: its kind (the header's first word) and the tokens that
/// follow the header, grouped by line.
struct Document {
  std::string kind;
  std::size_t header_line = 0;
  std::vector<std::vector<Token>> lines;

  std::vector<Token> flat() const {
    std::vector<Token> out;
    for (const auto& l : lines) out.insert(out.end(), l.begin(), l.end());
    return out;
  }
};

inline bool is_header_kind(std::string_view word) {
  return word == "sandgraph" || word == "chips" || word == "rotors" || word == "stacks";
}

inline std::vector<Document> split_documents(std::string_view text) {
  std::vector<Document> docs;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<Token> tokens;
    for (std::string w; words >> w;) tokens.push_back({w, number});
    if (tokens.empty()) continue;
    if (tokens.size() == 2 && is_header_kind(tokens[0].text)) {
      if (tokens[1].text != "v1")
        throw ParseError(number, "unsupported format version '" + tokens[1].text + "'");
      docs.push_back({tokens[0].text, number, {}});
      continue;
    }
    if (docs.empty()) throw ParseError(number, "missing format header");
    docs.back().lines.push_back(std::move(tokens));
  }
  return docs;
}

inline std::int64_t to_int(const Token& t) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size())
    throw ParseError(t.line, "expected an integer, got '" + t.text + "'");
  return v;
}

inline const Document& expect_kind(const Document& d, std::string_view kind) {
  if (d.kind != kind)
    throw ParseError(d.header_line, "expected a '" + std::string(kind) + " v1' document, got '" +
                                        d.kind + "'");
  return d;
}

inline Digraph parse_graph(const Document& doc) {
  expect_kind(doc, "sandgraph");
  std::int64_t n = -1;
  std::optional<Vertex> sink;
  std::vector<std::optional<Coord>> coords;
  std::vector<Edge> edges;
  auto vertex = [&](const Token& t) {
    std::int64_t v = to_int(t);
    if (n < 0) throw ParseError(t.line, "'vertices' must come first");
    if (v < 0 || v >= n)
      throw ParseError(t.line, "vertex index " + t.text + " out of range for " +
                                   std::to_string(n) + " vertices");
    return static_cast<Vertex>(v);
  };
  for (const auto& l : doc.lines) {
    const std::string& key = l[0].text;
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (l.size() < lo + 1 || l.size() > hi + 1)
        throw ParseError(l[0].line, "wrong number of fields for '" + key + "'");
    };
    if (key == "vertices") {
      arity(1, 1);
      if (n >= 0) throw ParseError(l[0].line, "duplicate 'vertices' line");
      n = to_int(l[1]);
      if (n < 0) throw ParseError(l[0].line, "negative vertex count");
      coords.assign(n, std::nullopt);
    } else if (key == "sink") {
      arity(1, 1);
      sink = vertex(l[1]);
    } else if (key == "coord") {
      arity(3, 3);
      coords[vertex(l[1])] = Coord{to_int(l[2]), to_int(l[3])};
    } else if (key == "edge") {
      arity(2, 3);
      Vertex u = vertex(l[1]), v = vertex(l[2]);
      std::int64_t count = l.size() == 4 ? to_int(l[3]) : 1;
      if (count < 1) throw ParseError(l[0].line, "edge count must be positive");
      if (sink && u == *sink) throw ParseError(l[0].line, "edge leaves the sink");
      for (std::int64_t k = 0; k < count; ++k) edges.push_back({u, v});
    } else {
      throw ParseError(l[0].line, "unknown keyword '" + key + "'");
    }
  }
  if (n < 0) throw ParseError(doc.header_line, "missing 'vertices' line");
  bool any_coord = std::any_of(coords.begin(), coords.end(), [](auto& c) { return c.has_value(); });
  if (sink)
    for (const auto& e : edges)
      if (e.tail == *sink) throw ParseError(doc.header_line, "edge leaves the sink");
  return Digraph::build(n, edges, sink, any_coord ? coords : std::vector<std::optional<Coord>>{});
}

inline Digraph parse_graph(std::string_view text) {
  auto docs = split_documents(text);
  if (docs.empty()) throw ParseError(1, "empty input");
  return parse_graph(docs.front());
}

/// Canonical text: vertices ascending, each vertex's edges in cyclic order,
/// consecutive parallel edges folded into one `edge u v k` line.
inline std::string serialize_graph(const Digraph& g) {
  std::ostringstream os;
  os << "sandgraph v1\nvertices " << g.vertex_count() << '\n';
  if (g.sink()) os << "sink " << *g.sink() << '\n';
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
    if (auto c = g.coord(v)) os << "coord " << v << ' ' << c->x << ' ' << c->y << '\n';
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
    auto heads = g.out_heads(v);
    for (std::size_t i = 0; i < heads.size();) {
      std::size_t j = i;
      while (j < heads.size() && heads[j] == heads[i]) ++j;
      os << "edge " << v << ' ' << heads[i];
      if (j - i > 1) os << ' ' << (j - i);
      os << '\n';
      i = j;
    }
  }
  return os.str();
}

}  // namespace sandlab::io
