#include "tropline/newick.hpp"

#include <cctype>
#include <memory>
#include <optional>
#include <string>

#include "tropline/errors.hpp"

namespace tropline {

namespace {

struct Node {
  int label = 0;  // leaf label, 0 for internal
  std::optional<ExactScalar> length;
  std::vector<std::unique_ptr<Node>> children;
  std::size_t line = 1;
  std::size_t column = 1;
};

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  std::unique_ptr<Node> parse() {
    skip_space();
    auto root = subtree();
    skip_space();
    expect(';');
    skip_space();
    if (pos_ != text_.size()) error("trailing characters after ';'");
    return root;
  }

 private:
  std::unique_ptr<Node> subtree() {
    skip_space();
    auto node = std::make_unique<Node>();
    node->line = line_;
    node->column = column_;
    if (peek() == '(') {
      advance();
      node->children.push_back(subtree());
      skip_space();
      while (peek() == ',') {
        advance();
        node->children.push_back(subtree());
        skip_space();
      }
      expect(')');
      skip_space();
      if (std::isdigit(static_cast<unsigned char>(peek())) != 0) error("internal vertex labels are not supported");
    } else {
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
        digits.push_back(peek());
        advance();
      }
      if (digits.empty()) error("expected '(' or a leaf label");
      if (digits.size() > 6) error("leaf label too large");
      node->label = std::stoi(digits);
      if (node->label < 1) error("leaf labels must be positive integers");
    }
    skip_space();
    if (peek() == ':') {
      advance();
      skip_space();
      const std::size_t line = line_;
      const std::size_t column = column_;
      std::string number;
      while (pos_ < text_.size()) {
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.' || c == '/' || c == '-' ||
            c == '+' || c == 'e' || c == 'E') {
          number.push_back(c);
          advance();
        } else {
          break;
        }
      }
      try {
        node->length = ExactScalar::parse(number);
      } catch (const std::exception&) {
        throw ParseError("invalid branch length '" + number + "'", line, column);
      }
    }
    return node;
  }

  [[nodiscard]] char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) advance();
  }

  void expect(char c) {
    if (peek() != c) error(std::string("expected '") + c + "'");
    advance();
  }

  [[noreturn]] void error(const std::string& what) const { throw ParseError(what, line_, column_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

struct Collected {
  LeafSet leaves = 0;
  ExactScalar depth;
};

// Depth-first walk: fills clades with (leaf set, depth) and leaf depths.
LeafSet collect(const Node& node, const ExactScalar& depth, std::vector<Collected>& internal,
                std::vector<std::pair<int, ExactScalar>>& leaves) {
  if (node.children.empty()) {
    if (node.label > kMaxLeaves) {
      throw ParseError("leaf label exceeds " + std::to_string(kMaxLeaves), node.line, node.column);
    }
    leaves.emplace_back(node.label, depth);
    return leaf_bit(node.label);
  }
  if (node.children.size() < 2) {
    throw InvalidTree("internal vertex at line " + std::to_string(node.line) + ", column " +
                      std::to_string(node.column) + " has a single child");
  }
  LeafSet set = 0;
  for (const auto& child : node.children) {
    if (!child->length) {
      throw ParseError("missing branch length", child->line, child->column);
    }
    if (!child->children.empty() && child->length->sign() <= 0) {
      throw InvalidTree("non-positive internal edge length " + child->length->str() + " at line " +
                        std::to_string(child->line) + ", column " + std::to_string(child->column));
    }
    const LeafSet sub = collect(*child, depth + *child->length, internal, leaves);
    if ((set & sub) != 0) throw ParseError("duplicate leaf label", child->line, child->column);
    set |= sub;
  }
  internal.push_back({set, depth});
  return set;
}

}  // namespace

EquidistantTree parse_newick(std::string_view text) {
  NewickParser parser(text);
  const auto root = parser.parse();
  if (root->children.empty()) throw InvalidTree("a tree needs at least two leaves");

  std::vector<Collected> internal;
  std::vector<std::pair<int, ExactScalar>> leaves;
  const LeafSet all = collect(*root, ExactScalar(0), internal, leaves);
  const int n = static_cast<int>(leaves.size());
  if (all != all_leaves(n)) {
    throw InvalidTree("leaf labels must be exactly 1.." + std::to_string(n));
  }
  const ExactScalar& depth = leaves.front().second;
  for (const auto& [label, d] : leaves) {
    if (d != depth) {
      throw InvalidTree("tree is not equidistant: leaf " + std::to_string(label) + " at depth " + d.str() +
                        ", leaf " + std::to_string(leaves.front().first) + " at depth " + depth.str());
    }
  }
  std::vector<EquidistantTree::Clade> clades;
  clades.reserve(internal.size());
  for (const auto& c : internal) clades.push_back({c.leaves, depth - c.depth});
  return EquidistantTree::from_clades(n, std::move(clades));
}

namespace {

void write_vertex(const EquidistantTree& t, VertexId v, std::string& out) {
  if (t.is_leaf(v)) {
    out += std::to_string(index(v) + 1);
  } else {
    out.push_back('(');
    bool first = true;
    for (VertexId c : t.children(v)) {
      if (!first) out.push_back(',');
      first = false;
      write_vertex(t, c, out);
    }
    out.push_back(')');
  }
  if (const auto p = t.parent(v)) {
    out.push_back(':');
    out += (t.height(*p) - t.height(v)).str();
  }
}

}  // namespace

std::string write_newick(const EquidistantTree& t) {
  std::string out;
  write_vertex(t, t.root(), out);
  out.push_back(';');
  return out;
}

}  // namespace tropline
