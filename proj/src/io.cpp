#include "tropline/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tropline/errors.hpp"
#include "tropline/newick.hpp"

namespace tropline {

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t i = 0;
  bool line_start = true;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      line_start = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++column;
      ++i;
      continue;
    }
    if (c == '#' && line_start) {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    line_start = false;
    Token t{{}, line, column};
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])) == 0) {
      t.text.push_back(text[i]);
      ++i;
      ++column;
    }
    out.push_back(std::move(t));
  }
  return out;
}

nlohmann::ordered_json clade_json(LeafSet s) { return leaves_of(s); }

}  // namespace

UltraVector parse_ultra_vector(std::string_view text) {
  const auto tokens = tokenize(text);
  if (tokens.empty()) throw ParseError("empty input", 1, 1);
  const Token& head = tokens.front();
  int n = 0;
  const auto [ptr, ec] = std::from_chars(head.text.data(), head.text.data() + head.text.size(), n);
  if (ec != std::errc() || ptr != head.text.data() + head.text.size()) {
    throw ParseError("expected the leaf count, got '" + head.text + "'", head.line, head.column);
  }
  if (n < 2 || n > kMaxLeaves) {
    throw ParseError("leaf count must be in [2, " + std::to_string(kMaxLeaves) + "]", head.line, head.column);
  }
  const std::size_t want = pair_count(n);
  if (tokens.size() - 1 < want) {
    const Token& last = tokens.back();
    throw ParseError("expected " + std::to_string(want) + " entries for n=" + std::to_string(n) + ", found " +
                         std::to_string(tokens.size() - 1),
                     last.line, last.column + last.text.size());
  }
  if (tokens.size() - 1 > want) {
    const Token& extra = tokens[want + 1];
    throw ParseError("unexpected extra entry '" + extra.text + "'", extra.line, extra.column);
  }
  std::vector<ExactScalar> entries;
  entries.reserve(want);
  for (std::size_t k = 1; k <= want; ++k) {
    try {
      entries.push_back(ExactScalar::parse(tokens[k].text));
    } catch (const std::exception&) {
      throw ParseError("invalid number '" + tokens[k].text + "'", tokens[k].line, tokens[k].column);
    }
  }
  return UltraVector(n, std::move(entries));
}

std::string write_ultra_vector(const UltraVector& u) {
  std::string out = std::to_string(u.n()) + "\n";
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (k > 0) out.push_back(' ');
    out += u[k].str();
  }
  out.push_back('\n');
  return out;
}

UltraVector parse_metric(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) != 0) continue;
    if (c == '(') return tree_to_ultrametric(parse_newick(text));
    break;
  }
  return parse_ultra_vector(text);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

nlohmann::ordered_json scalar_json(const ExactScalar& x, bool decimal) {
  if (!decimal) return x.str();
  return {{"exact", x.str()}, {"decimal", x.decimal()}};
}

nlohmann::ordered_json vector_json(const UltraVector& u, bool decimal) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& x : u.entries()) out.push_back(x.str());
  if (!decimal) return out;
  nlohmann::ordered_json dec = nlohmann::ordered_json::array();
  for (const auto& x : u.entries()) dec.push_back(x.decimal());
  return {{"exact", out}, {"decimal", dec}};
}

nlohmann::ordered_json topology_json(const Topology& t) {
  nlohmann::ordered_json clades = nlohmann::ordered_json::array();
  for (LeafSet c : t.clades()) clades.push_back(clade_json(c));
  return clades;
}

nlohmann::ordered_json segment_json(const TropicalSegment& segment, bool decimal) {
  nlohmann::ordered_json out;
  out["n"] = segment.u.n();
  out["u"] = vector_json(segment.u, decimal);
  out["v"] = vector_json(segment.v, decimal);
  out["newick_u"] = write_newick(segment.tree_u);
  out["newick_v"] = write_newick(segment.tree_v);
  out["generic_pair"] = segment.generic_pair;
  if (!segment.generic_pair) out["note"] = "non-generic pair; classification trichotomy not guaranteed";
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const auto& p : segment.points) {
    nlohmann::ordered_json rec;
    rec["lambda"] = scalar_json(p.lambda, decimal);
    rec["point"] = vector_json(p.point.rep(), decimal);
    rec["class"] = p.cls ? nlohmann::ordered_json(std::string(to_string(*p.cls))) : nlohmann::ordered_json(nullptr);
    if (p.witness) {
      rec["witness"] = {clade_json(segment.tree_u.clade(p.witness->first)),
                        clade_json(segment.tree_v.clade(p.witness->second))};
    }
    rec["newick"] = write_newick(p.tree);
    points.push_back(std::move(rec));
  }
  out["turning_points"] = std::move(points);
  nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
  for (const auto& t : segment.pieces) pieces.push_back(topology_json(t));
  out["pieces"] = std::move(pieces);
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string experiment_csv(const std::vector<ExperimentReport>& reports) {
  std::string out(kExperimentCsvHeader);
  out.push_back('\n');
  for (const auto& r : reports) {
    out += std::to_string(r.n) + ',' + std::to_string(r.trials) + ',' + format_double(r.mean_pi) + ',' +
           format_double(r.variance) + ',' + format_double(r.ci99) + ',' + format_double(r.bound) + ',' +
           format_double(r.seconds) + '\n';
  }
  return out;
}

nlohmann::ordered_json experiment_json(const std::vector<ExperimentReport>& reports) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json row;
    row["n"] = r.n;
    row["trials"] = r.trials;
    row["seed"] = r.seed;
    row["mean_pi"] = r.mean_pi;
    row["var"] = r.variance;
    row["ci99"] = r.ci99;
    row["bound"] = r.bound;
    row["bound_exact"] = r.bound_exact ? nlohmann::ordered_json(r.bound_exact->str()) : nlohmann::ordered_json(nullptr);
    row["mean_height_draws"] = r.mean_draws;
    row["seconds"] = r.seconds;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace tropline
