#include "xra/equiv.hpp"

#include <algorithm>
#include <map>

namespace xra {

std::string NodeNotion::name() const {
  switch (kind) {
    case Kind::DownK: return "down-k(" + std::to_string(k) + ")";
    case Kind::Upward: return "up";
    case Kind::UpDownK: return "k(" + std::to_string(k) + ")";
    case Kind::DownRelated: return "down-rel";
    case Kind::WeakDown: return "weak-down";
    case Kind::Related: return "rel";
    case Kind::WeakUpDown: return "weak";
    case Kind::UpRelated: return "up-rel";
  }
  return "?";
}

NodeRelationIndex NodeRelationIndex::partition(NodeNotion n,
                                               std::vector<NodeId> block) {
  NodeRelationIndex idx;
  idx.notion_ = n;
  idx.shape_ = Shape::Partition;
  idx.size_ = block.size();
  idx.block_ = std::move(block);
  return idx;
}

NodeRelationIndex NodeRelationIndex::preorder(NodeNotion n, Relation m) {
  NodeRelationIndex idx;
  idx.notion_ = n;
  idx.shape_ = Shape::Preorder;
  idx.size_ = m.universe();
  idx.matrix_ = std::move(m);
  return idx;
}

std::vector<std::vector<NodeId>> NodeRelationIndex::blocks() const {
  std::map<NodeId, std::vector<NodeId>> by;
  for (NodeId v = 0; v < size_; ++v) by[block_.at(v)].push_back(v);
  std::vector<std::vector<NodeId>> out;
  for (auto& [_, members] : by) out.push_back(std::move(members));
  return out;
}

NodeSet NodeRelationIndex::upset(NodeId v) const {
  NodeSet s(size_);
  for (NodeId u = 0; u < size_; ++u) {
    if (holds(v, u)) s.insert(u);
  }
  return s;
}

Relation NodeRelationIndex::as_relation() const {
  if (shape_ == Shape::Preorder) return matrix_;
  Relation r(size_);
  for (NodeId u = 0; u < size_; ++u) {
    for (NodeId v = 0; v < size_; ++v) {
      if (holds(u, v)) r.insert(u, v);
    }
  }
  return r;
}

namespace {

// Maps each node's key to the smallest node carrying the same key.
template <typename Key>
std::vector<NodeId> canonical_blocks(const std::vector<Key>& keys) {
  std::map<Key, NodeId> first;
  std::vector<NodeId> block(keys.size());
  for (NodeId v = 0; v < keys.size(); ++v) {
    block[v] = first.emplace(keys[v], v).first->second;
  }
  return block;
}

std::size_t count_blocks(const std::vector<NodeId>& block) {
  std::size_t c = 0;
  for (NodeId v = 0; v < block.size(); ++v) c += block[v] == v;
  return c;
}

std::vector<NodeId> down_k_blocks(const Document& doc, int k) {
  std::vector<std::uint32_t> labels(doc.size());
  for (NodeId v = 0; v < doc.size(); ++v) labels[v] = doc.label_id(v);
  std::vector<NodeId> block = canonical_blocks(labels);
  std::size_t nblocks = count_blocks(block);
  using Key = std::pair<NodeId, std::vector<std::pair<NodeId, int>>>;
  while (true) {
    std::vector<Key> keys(doc.size());
    for (NodeId v = 0; v < doc.size(); ++v) {
      std::map<NodeId, int> counts;
      for (NodeId c : doc.children(v)) {
        int& n = counts[block[c]];
        n = std::min(n + 1, k);
      }
      keys[v] = {block[v], {counts.begin(), counts.end()}};
    }
    std::vector<NodeId> next = canonical_blocks(keys);
    std::size_t n = count_blocks(next);
    block = std::move(next);
    if (n == nblocks) break;
    nblocks = n;
  }
  return block;
}

// Refines an existing node partition by the partition of the parent.
std::vector<NodeId> along_root_path(const Document& doc,
                                    const std::vector<NodeId>& base) {
  std::vector<NodeId> block(doc.size());
  std::map<std::pair<std::int64_t, NodeId>, NodeId> first;
  for (NodeId v = 0; v < doc.size(); ++v) {
    std::int64_t p = doc.parent(v) ? static_cast<std::int64_t>(block[*doc.parent(v)]) : -1;
    block[v] = first.emplace(std::make_pair(p, base[v]), v).first->second;
  }
  return block;
}

Relation down_related_matrix(const Document& doc) {
  const std::size_t n = doc.size();
  Relation r(n);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = 0; b < n; ++b) {
      if (doc.label_id(a) == doc.label_id(b)) r.insert(a, b);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = 0; b < n; ++b) {
        if (!r.contains(a, b)) continue;
        for (NodeId c : doc.children(a)) {
          bool matched = false;
          for (NodeId d : doc.children(b)) {
            if (r.contains(c, d)) {
              matched = true;
              break;
            }
          }
          if (!matched) {
            r.erase(a, b);
            changed = true;
            break;
          }
        }
      }
    }
  }
  return r;
}

std::vector<NodeId> symmetric_blocks(const Relation& pre) {
  std::vector<NodeId> block(pre.universe());
  for (NodeId v = 0; v < pre.universe(); ++v) {
    block[v] = v;
    for (NodeId u = 0; u < v; ++u) {
      if (pre.contains(u, v) && pre.contains(v, u)) {
        block[v] = block[u];
        break;
      }
    }
  }
  return block;
}

Relation related_matrix(const Document& doc, const Relation& dr) {
  Relation r(doc.size());
  for (NodeId a = 0; a < doc.size(); ++a) {
    for (NodeId b = 0; b < doc.size(); ++b) {
      if (!dr.contains(a, b)) continue;
      auto pa = doc.parent(a);
      auto pb = doc.parent(b);
      if ((!pa && !pb) || (pa && pb && r.contains(*pa, *pb))) r.insert(a, b);
    }
  }
  return r;
}

Relation up_related_matrix(const Document& doc) {
  Relation r(doc.size());
  for (NodeId a = 0; a < doc.size(); ++a) {
    for (NodeId b = 0; b < doc.size(); ++b) {
      if (doc.label_id(a) != doc.label_id(b)) continue;
      auto pa = doc.parent(a);
      auto pb = doc.parent(b);
      if (!pa || (pb && r.contains(*pa, *pb))) r.insert(a, b);
    }
  }
  return r;
}

}  // namespace

Relation down_related_bounded(const Document& doc) {
  const std::size_t n = doc.size();
  Relation r(n);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = 0; b < n; ++b) {
      if (doc.label_id(a) == doc.label_id(b)) r.insert(a, b);
    }
  }
  for (std::size_t round = 0; round < n; ++round) {
    Relation next(n);
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = 0; b < n; ++b) {
        if (!r.contains(a, b)) continue;
        bool ok = std::all_of(doc.children(a).begin(), doc.children(a).end(),
                              [&](NodeId c) {
                                return std::any_of(
                                    doc.children(b).begin(), doc.children(b).end(),
                                    [&](NodeId d) { return r.contains(c, d); });
                              });
        if (ok) next.insert(a, b);
      }
    }
    r = std::move(next);
  }
  return r;
}

NodeRelationIndex node_relation(const Document& doc, NodeNotion notion) {
  using K = NodeNotion::Kind;
  if ((notion.kind == K::DownK || notion.kind == K::UpDownK) && notion.k < 1) {
    throw std::invalid_argument("counting bound must be >= 1");
  }
  switch (notion.kind) {
    case K::DownK:
      return NodeRelationIndex::partition(notion, down_k_blocks(doc, notion.k));
    case K::Upward: {
      std::vector<NodeId> labels(doc.size());
      for (NodeId v = 0; v < doc.size(); ++v) labels[v] = doc.label_id(v);
      return NodeRelationIndex::partition(notion, along_root_path(doc, labels));
    }
    case K::UpDownK:
      return NodeRelationIndex::partition(
          notion, along_root_path(doc, down_k_blocks(doc, notion.k)));
    case K::DownRelated:
      return NodeRelationIndex::preorder(notion, down_related_matrix(doc));
    case K::WeakDown:
      return NodeRelationIndex::partition(
          notion, symmetric_blocks(down_related_matrix(doc)));
    case K::Related:
      return NodeRelationIndex::preorder(
          notion, related_matrix(doc, down_related_matrix(doc)));
    case K::WeakUpDown:
      return NodeRelationIndex::partition(
          notion, symmetric_blocks(related_matrix(doc, down_related_matrix(doc))));
    case K::UpRelated:
      return NodeRelationIndex::preorder(notion, up_related_matrix(doc));
  }
  throw std::logic_error("unhandled notion");
}

std::string format_index(const NodeRelationIndex& idx) {
  std::string out;
  if (idx.shape() == NodeRelationIndex::Shape::Partition) {
    for (const auto& b : idx.blocks()) {
      if (!out.empty()) out += ' ';
      out += '{';
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(b[i]);
      }
      out += '}';
    }
    return out;
  }
  for (NodeId u = 0; u < idx.size(); ++u) {
    for (NodeId v = 0; v < idx.size(); ++v) {
      if (idx.holds(u, v)) out += std::to_string(u) + " <= " + std::to_string(v) + '\n';
    }
  }
  return out;
}

bool pair_related(const Document& doc, const NodeRelationIndex& theta,
                  PairMode mode, NodePair p1, NodePair p2) {
  Signature s = signature_of(doc, p1.first, p1.second);
  if (!in_updown(doc, s.up, s.down, p2.first, p2.second)) return false;
  if (mode == PairMode::Congruent && s.up > 0 && s.down > 0 &&
      in_updown(doc, s.up - 1, s.down - 1, p2.first, p2.second)) {
    return false;
  }
  for (std::size_t i = 0; i < s.path.size(); ++i) {
    if (!theta.holds(s.path[i], corresponding_node(doc, s, p2, i))) return false;
  }
  return true;
}

bool pair_related(const Document& doc, const PairTheta& theta, NodePair p1,
                  NodePair p2) {
  return pair_related(doc, node_relation(doc, theta.theta), theta.mode, p1, p2);
}

}  // namespace xra
