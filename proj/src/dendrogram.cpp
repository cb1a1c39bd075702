#include <string>
#include <vector>

#include <json.hpp>

#include "mailgraph/clustering.hpp"
#include "mailgraph/csv.hpp"
#include "mailgraph/error.hpp"

namespace mailgraph {

namespace {

std::string newick_label(const std::string& s) {
  if (s.find_first_of(" \t()[]':;,") == std::string::npos) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  return out + "'";
}

struct TreeView {
  const LinkageTree& tree;
  const NodeRoster& roster;
  std::vector<std::string> min_label;  // per cluster id

  TreeView(const LinkageTree& t, const NodeRoster& r) : tree(t), roster(r) {
    const std::size_t n = t.leaves;
    min_label.resize(n + t.merges.size());
    for (std::size_t i = 0; i < n; ++i) min_label[i] = r[i].id;
    for (std::size_t k = 0; k < t.merges.size(); ++k)
      min_label[n + k] = std::min(min_label[t.merges[k].left], min_label[t.merges[k].right]);
  }

  bool is_leaf(std::size_t c) const { return c < tree.leaves; }
  double height(std::size_t c) const { return is_leaf(c) ? 0.0 : tree.merges[c - tree.leaves].height; }
  std::pair<std::size_t, std::size_t> children(std::size_t c) const {
    const Merge& m = tree.merges[c - tree.leaves];
    if (min_label[m.right] < min_label[m.left]) return {m.right, m.left};
    return {m.left, m.right};
  }
  std::size_t root() const { return tree.leaves + tree.merges.size() - 1; }

  void newick(std::string& out, std::size_t c) const {
    if (is_leaf(c)) {
      out += newick_label(roster[c].id);
      return;
    }
    auto [first, second] = children(c);
    out += '(';
    newick(out, first);
    out += ':' + csv::format_real(height(c) - height(first), 12);
    out += ',';
    newick(out, second);
    out += ':' + csv::format_real(height(c) - height(second), 12);
    out += ')';
  }

  nlohmann::ordered_json json(std::size_t c) const {
    nlohmann::ordered_json node;
    if (is_leaf(c)) {
      node["index"] = c;
      node["name"] = roster[c].id;
      return node;
    }
    const Merge& m = tree.merges[c - tree.leaves];
    auto [first, second] = children(c);
    node["id"] = c;
    node["height"] = m.height;
    node["size"] = m.size;
    node["children"] = nlohmann::ordered_json::array({json(first), json(second)});
    return node;
  }
};

}  // namespace

std::string export_dendrogram(const LinkageTree& tree, const NodeRoster& roster,
                              DendrogramFormat format) {
  if (roster.size() != tree.leaves) throw ConfigError("roster does not match the linkage tree");
  if (tree.leaves > 0 && tree.merges.size() + 1 != tree.leaves)
    throw ConfigError("linkage tree is incomplete");

  TreeView view(tree, roster);
  if (format == DendrogramFormat::json) {
    if (tree.leaves == 0) return "null\n";
    std::size_t root = tree.leaves == 1 ? 0 : view.root();
    return view.json(root).dump(2) + "\n";
  }
  std::string out;
  if (tree.leaves == 1) out = newick_label(roster[0].id);
  else if (tree.leaves > 1) view.newick(out, view.root());
  return out + ";";
}

}  // namespace mailgraph
