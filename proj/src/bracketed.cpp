#include "syncorr/bracketed.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "syncorr/error.hpp"

namespace syncorr {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) advance();
  }
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string word() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      advance();
    }
    return std::string(text_.substr(start, pos_ - start));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

struct OpenGroup {
  std::string label;
  std::vector<NodeId> children;
  std::size_t line;
  std::size_t column;
};

// Copies the subtree under `root` out of a scratch node pool.
ParseTree extract(const std::vector<Node>& pool, NodeId root) {
  TreeBuilder builder;
  struct Item {
    NodeId source;
    std::size_t next_child;
    std::vector<NodeId> built;
  };
  std::vector<Item> stack{{root, 0, {}}};
  NodeId last = kNoNode;
  while (!stack.empty()) {
    Item& top = stack.back();
    const Node& n = pool[top.source];
    if (n.is_terminal) {
      last = builder.terminal(n.label);
      stack.pop_back();
      if (!stack.empty()) stack.back().built.push_back(last);
      continue;
    }
    if (top.next_child < n.children.size()) {
      NodeId child = n.children[top.next_child++];
      stack.push_back({child, 0, {}});
      continue;
    }
    last = builder.internal(n.label, std::move(top.built));
    stack.pop_back();
    if (!stack.empty()) stack.back().built.push_back(last);
  }
  return std::move(builder).finish(last);
}

}  // namespace

std::vector<ParseTree> parse_bracketed(std::string_view text,
                                       const ReadOptions& options) {
  std::vector<ParseTree> trees;
  Scanner in(text);
  std::vector<Node> pool;
  std::vector<OpenGroup> open;

  for (;;) {
    in.skip_space();
    if (in.done()) break;
    const char c = in.peek();
    if (c == '(') {
      OpenGroup group{{}, {}, in.line(), in.column()};
      in.advance();
      in.skip_space();
      if (!in.done() && in.peek() != '(' && in.peek() != ')') {
        group.label = in.word();
      }
      open.push_back(std::move(group));
      continue;
    }
    if (c == ')') {
      if (open.empty()) {
        throw ParseError("unbalanced parentheses: unexpected ')'", in.line(),
                         in.column());
      }
      in.advance();
      OpenGroup group = std::move(open.back());
      open.pop_back();
      if (group.label.empty()) {
        if (!open.empty() || options.strict) {
          throw ParseError("empty label", group.line, group.column);
        }
        if (group.children.empty()) {
          throw ParseError("empty bracket group", group.line, group.column);
        }
        for (NodeId child : group.children) {
          if (pool[child].is_terminal) {
            throw ParseError("token '" + pool[child].label +
                                 "' directly inside an unlabeled wrapper",
                             group.line, group.column);
          }
          trees.push_back(extract(pool, child));
        }
        pool.clear();
        continue;
      }
      if (group.children.empty()) {
        throw ParseError("constituent '" + group.label + "' has no children",
                         group.line, group.column);
      }
      pool.push_back(Node{std::move(group.label), std::move(group.children), false});
      const NodeId id = static_cast<NodeId>(pool.size() - 1);
      if (open.empty()) {
        trees.push_back(extract(pool, id));
        pool.clear();
      } else {
        open.back().children.push_back(id);
      }
      continue;
    }
    const std::size_t line = in.line();
    const std::size_t column = in.column();
    std::string token = in.word();
    if (open.empty()) {
      throw ParseError("token '" + token + "' outside of brackets", line, column);
    }
    pool.push_back(Node{std::move(token), {}, true});
    open.back().children.push_back(static_cast<NodeId>(pool.size() - 1));
  }
  if (!open.empty()) {
    throw ParseError("unbalanced parentheses: '(' is never closed",
                     open.back().line, open.back().column);
  }
  return trees;
}

ParseTree parse_tree(std::string_view text, const ReadOptions& options) {
  std::vector<ParseTree> trees = parse_bracketed(text, options);
  if (trees.size() != 1) {
    throw Error("expected exactly one tree, found " + std::to_string(trees.size()));
  }
  return std::move(trees.front());
}

std::vector<ParseTree> read_treebank(const std::filesystem::path& path,
                                     const ReadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open treebank file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_bracketed(buffer.str(), options);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.message(), e.line(), e.column());
  }
}

std::string write_bracketed(const ParseTree& tree) {
  std::string out;
  struct Item {
    NodeId id;
    std::size_t next_child;
  };
  std::vector<Item> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    Item& top = stack.back();
    const Node& n = tree.node(top.id);
    if (n.is_terminal) {
      out += n.label;
      stack.pop_back();
      continue;
    }
    if (top.next_child == 0) {
      out += '(';
      out += n.label;
    }
    if (top.next_child < n.children.size()) {
      out += ' ';
      stack.push_back({n.children[top.next_child++], 0});
      continue;
    }
    out += ')';
    stack.pop_back();
  }
  return out;
}

}  // namespace syncorr
